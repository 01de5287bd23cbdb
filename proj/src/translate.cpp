#include "iflat/translate.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace iflat {

namespace {

// Iterative Tarjan over a small adjacency list; components come out in
// reverse topological order.
std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& graph) {
    const std::size_t n = graph.size();
    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, kUnvisited), lowlink(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    std::size_t counter = 0;

    struct Frame {
        std::size_t vertex;
        std::size_t next_edge;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& succ = graph[f.vertex];
            if (f.next_edge < succ.size()) {
                std::size_t w = succ[f.next_edge++];
                if (index[w] == kUnvisited) {
                    index[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[f.vertex] = std::min(lowlink[f.vertex], index[w]);
                }
                continue;
            }
            const std::size_t v = f.vertex;
            call.pop_back();
            if (!call.empty()) lowlink[call.back().vertex] = std::min(lowlink[call.back().vertex], lowlink[v]);
            if (lowlink[v] == index[v]) {
                std::vector<std::size_t> component;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    component.push_back(w);
                } while (w != v);
                components.push_back(std::move(component));
            }
        }
    }
    return components;
}

std::vector<VarSet> component_sets(const FlowRelation& m) {
    // Every domain variable is a vertex; sources never have incoming edges
    // and so always end up alone.
    const VarSet vars = m.variables();
    std::vector<Variable> order(vars.begin(), vars.end());
    std::map<Variable, std::size_t> index;
    for (std::size_t i = 0; i < order.size(); ++i) index.emplace(order[i], i);
    std::vector<std::vector<std::size_t>> graph(order.size());
    for (const auto& [a, b] : m.pairs()) {
        auto ia = index.find(a), ib = index.find(b);
        if (ia != index.end() && ib != index.end()) graph[ia->second].push_back(ib->second);
    }
    std::vector<VarSet> out;
    for (const auto& comp : strongly_connected_components(graph)) {
        VarSet set;
        for (auto i : comp) set.insert(order[i]);
        out.push_back(std::move(set));
    }
    return out;
}

// Mutable order used while fresh labels are being inserted.
struct WorkingOrder {
    std::vector<Label> labels;
    std::vector<std::vector<char>> le;

    explicit WorkingOrder(const SecurityLattice& s) : labels(s.labels()), le(s.size(), std::vector<char>(s.size())) {
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = 0; j < s.size(); ++j) le[i][j] = s.can_flow(i, j);
    }

    std::size_t size() const { return labels.size(); }

    std::size_t index_of(const Label& l) const {
        auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end()) throw UnknownLabel("unknown label " + to_string(l));
        return static_cast<std::size_t>(it - labels.begin());
    }

    std::vector<std::size_t> upper_bounds(std::size_t a, std::size_t b) const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < size(); ++k)
            if (le[a][k] && le[b][k]) out.push_back(k);
        return out;
    }

    bool has_least(const std::vector<std::size_t>& subset) const {
        std::size_t minimal = 0;
        for (auto c : subset) {
            bool is_min = std::none_of(subset.begin(), subset.end(), [&](auto d) { return d != c && le[d][c]; });
            if (is_min && ++minimal > 1) return false;
        }
        return minimal == 1;
    }

    std::size_t insert(const Label& fresh, std::size_t a, std::size_t b, Placement placement) {
        const auto ubs = upper_bounds(a, b);
        const std::size_t f = size();
        labels.push_back(fresh);
        for (auto& row : le) row.push_back(0);
        le.emplace_back(size(), 0);
        le[f][f] = 1;
        for (std::size_t k = 0; k < f; ++k) {
            bool below = placement == Placement::cut
                             ? std::all_of(ubs.begin(), ubs.end(), [&](auto u) { return le[k][u] != 0; })
                             : (le[k][a] || le[k][b]);
            if (below) le[k][f] = 1;
        }
        for (auto u : ubs) le[f][u] = 1;
        return f;
    }

    std::vector<std::size_t> canonical_indices() const {
        std::vector<std::size_t> idx(size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](auto x, auto y) { return labels[x] < labels[y]; });
        return idx;
    }

    SecurityLattice freeze() const {
        std::set<LabelPair> pairs;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (le[i][j]) pairs.emplace(labels[i], labels[j]);
        return SecurityLattice(LabelSet(labels.begin(), labels.end()), pairs);
    }
};

}  // namespace

LabelSet maximal_loop_labels(const FlowRelation& m) {
    LabelSet out;
    for (auto& set : component_sets(m)) out.insert(Label::of(std::move(set)));
    return out;
}

SecurityLattice can_flow_order(const LabelSet& labels, const FlowRelation& m) {
    LabelSet all = labels;
    all.insert(Label::bottom());
    all.insert(Label::top());
    std::set<LabelPair> order{{Label::bottom(), Label::top()},
                              {Label::bottom(), Label::bottom()},
                              {Label::top(), Label::top()}};
    for (const auto& l1 : labels) {
        order.insert({Label::bottom(), l1});
        order.insert({l1, Label::top()});
        order.insert({l1, l1});
        if (l1.kind() != Label::Kind::vars) continue;
        for (const auto& l2 : labels) {
            if (l2.kind() != Label::Kind::vars) continue;
            bool all_flow = true;
            for (const auto& z1 : l1.vars()) {
                for (const auto& z2 : l2.vars())
                    if (!m.contains(z1, z2)) {
                        all_flow = false;
                        break;
                    }
                if (!all_flow) break;
            }
            if (all_flow) order.insert({l1, l2});
        }
    }
    return SecurityLattice(all, order);
}

Completion add_least_upper_labels(const SecurityLattice& order, Placement placement) {
    if (!order.contains(Label::bottom()) || !order.contains(Label::top()))
        throw NotALattice("completion needs an order bounded by the sentinels");

    WorkingOrder work(order);
    const std::size_t budget = order.size() * order.size();
    std::uint32_t next_id = 0;
    for (const auto& l : order.labels())
        if (l.is_fresh()) next_id = std::max(next_id, l.fresh_id() + 1);

    std::deque<std::pair<std::size_t, std::size_t>> to_process;
    for (std::size_t i = 0; i < work.size(); ++i)
        for (std::size_t j = i + 1; j < work.size(); ++j) to_process.emplace_back(i, j);

    Completion result;
    while (!to_process.empty()) {
        auto [a, b] = to_process.front();
        to_process.pop_front();
        if (work.has_least(work.upper_bounds(a, b))) continue;
        if (result.insertions.size() >= budget)
            throw CompletionBudgetExceeded("completion created " + std::to_string(budget) +
                                           " fresh labels without reaching a lattice");
        Label fresh = Label::fresh(next_id++);
        const auto existing = work.canonical_indices();
        const std::size_t f = work.insert(fresh, a, b, placement);
        for (auto k : existing) to_process.emplace_back(f, k);
        result.insertions.push_back({fresh, work.labels[a], work.labels[b]});
    }
    result.lattice = work.freeze();
    return result;
}

Translation to_lattice(const FlowRelation& m) {
    Translation t;
    for (const auto& set : component_sets(m)) {
        t.trace.loop_labels.insert(Label::of(set));
        if (set.size() > 1)
            for (const auto& v : set) t.trace.pruned_labels.insert(Label::of({v}));
    }
    t.trace.pre_completion = can_flow_order(t.trace.loop_labels, m);
    if (validate_lattice(t.trace.pre_completion).is_lattice) {
        t.lattice = t.trace.pre_completion;
        return t;
    }
    Completion c = add_least_upper_labels(t.trace.pre_completion);
    t.lattice = std::move(c.lattice);
    t.trace.fresh_labels_added = std::move(c.insertions);
    return t;
}

SecurityLattice replay(const TranslationTrace& trace, const FlowRelation& m) {
    if (maximal_loop_labels(m) != trace.loop_labels) throw Error("trace loop labels do not match the relation");
    const SecurityLattice pre = can_flow_order(trace.loop_labels, m);
    if (pre != trace.pre_completion) throw Error("trace pre-completion order does not match the relation");
    WorkingOrder work(pre);
    for (const auto& step : trace.fresh_labels_added)
        work.insert(step.label, work.index_of(step.first), work.index_of(step.second), Placement::cut);
    return work.freeze();
}

FlowRelation to_flow_rel(const SecurityLattice& s, const VarSet& all, const VarSet& targets) {
    for (const auto& v : targets)
        if (!all.count(v)) throw Error("target variable '" + v.name() + "' is not in the variable domain");
    VarDomain domain;
    domain.targets = targets;
    for (const auto& v : all)
        if (!targets.count(v)) domain.sources.insert(v);

    PairSet pairs;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& from = s.labels()[i].vars();
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (!s.can_flow(i, j)) continue;
            for (const auto& z : from) {
                if (!all.count(z)) continue;
                for (const auto& z2 : s.labels()[j].vars())
                    if (targets.count(z2)) pairs.emplace(z, z2);
            }
        }
    }
    return FlowRelation(std::move(domain), std::move(pairs));
}

EquivalenceVerdict is_equivalent(const SecurityLattice& s, const FlowRelation& m, const VarSet& all,
                                 const VarSet& targets) {
    EquivalenceVerdict v;
    for (std::size_t i = 0; i < s.size() && !v.bad_order_pair; ++i)
        for (std::size_t j = 0; j < s.size() && !v.bad_order_pair; ++j) {
            if (!s.can_flow(i, j)) continue;
            for (const auto& z : s.labels()[i].vars()) {
                if (!all.count(z)) continue;
                for (const auto& z2 : s.labels()[j].vars())
                    if (targets.count(z2) && !m.contains(z, z2)) v.bad_order_pair = {s.labels()[i], s.labels()[j]};
            }
        }
    const FlowRelation derived = to_flow_rel(s, all, targets);
    for (const auto& p : m.pairs())
        if (!derived.pairs().count(p)) {
            v.missing_flow = p;
            break;
        }
    for (const auto& p : derived.pairs())
        if (!m.pairs().count(p)) {
            v.extra_flow = p;
            break;
        }
    v.equivalent = !v.missing_flow && !v.extra_flow && !v.bad_order_pair;
    return v;
}

}  // namespace iflat
