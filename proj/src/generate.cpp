#include "iflat/generate.hpp"

#include <map>
#include <utility>
#include <string>

#include "iflat/translate.hpp"

namespace iflat {

namespace {

std::size_t below(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

bool coin(Rng& rng, unsigned percent) { return rng() % 100 < percent; }

Variable numbered(const char* prefix, std::size_t i) { return Variable(prefix + std::to_string(i)); }

}  // namespace

FlowRelation random_flow_relation(Rng& rng, std::size_t max_vars) {
    // Sizes lean towards max_vars; small domains are rarely interesting.
    const std::size_t n = max_vars <= 2 ? 1 + below(rng, max_vars) : max_vars / 2 + below(rng, max_vars - max_vars / 2 + 1);
    // Edges out of sources and edges between targets get separate densities:
    // many source edges and few target edges leave pairs without a join.
    static constexpr unsigned kSourceDensity[] = {25, 40, 55, 70};
    static constexpr unsigned kTargetDensity[] = {0, 10, 20, 40};
    const unsigned from_source = kSourceDensity[below(rng, 4)];
    const unsigned from_target = kTargetDensity[below(rng, 4)];

    std::vector<Variable> vars;
    std::vector<char> is_target(n);
    VarDomain domain;
    for (std::size_t i = 0; i < n; ++i) {
        vars.push_back(numbered("v", i));
        is_target[i] = coin(rng, 50);
    }
    is_target[below(rng, n)] = 1;
    for (std::size_t i = 0; i < n; ++i) (is_target[i] ? domain.targets : domain.sources).insert(vars[i]);

    PairSet edges;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && is_target[b] && coin(rng, is_target[a] ? from_target : from_source))
                edges.emplace(vars[a], vars[b]);
    return make_flow_relation(std::move(domain), edges, CloseMode::close);
}

DomainLattice random_source_target_lattice(Rng& rng, std::size_t max_sources, std::size_t max_targets) {
    const std::size_t n_sources = below(rng, max_sources + 1);
    const std::size_t n_targets = 1 + max_targets / 2 + below(rng, max_targets - max_targets / 2);

    DomainLattice out;
    std::vector<Label> sources;
    for (std::size_t i = 0; i < n_sources; ++i) {
        Variable u = numbered("u", i);
        out.all.insert(u);
        sources.push_back(Label::of({u}));
    }

    // Random partition of the targets into groups.
    std::vector<VarSet> groups;
    for (std::size_t i = 0; i < n_targets; ++i) {
        Variable v = numbered("v", i);
        out.all.insert(v);
        out.targets.insert(v);
        const std::size_t g = below(rng, groups.size() + 1);
        if (g == groups.size()) groups.emplace_back();
        groups[g].insert(v);
    }
    std::vector<Label> targets;
    for (auto& g : groups) targets.push_back(Label::of(std::move(g)));

    LabelSet labels{Label::bottom(), Label::top()};
    labels.insert(sources.begin(), sources.end());
    labels.insert(targets.begin(), targets.end());

    // Target labels are ordered along a random permutation so the relation is acyclic.
    std::set<LabelPair> order;
    const unsigned between_targets = static_cast<unsigned>(below(rng, 35));
    const unsigned from_sources = 30 + static_cast<unsigned>(below(rng, 45));
    for (std::size_t i = 0; i < targets.size(); ++i)
        for (std::size_t j = i + 1; j < targets.size(); ++j)
            if (coin(rng, between_targets)) order.emplace(targets[i], targets[j]);
    for (const auto& s : sources)
        for (const auto& t : targets)
            if (coin(rng, from_sources)) order.emplace(s, t);
    for (const auto& l : labels) {
        order.emplace(Label::bottom(), l);
        order.emplace(l, Label::top());
    }
    out.lattice = add_least_upper_labels(SecurityLattice::closed(labels, order)).lattice;
    return out;
}

bool has_source_target_shape(const SecurityLattice& s, const VarSet& all, const VarSet& targets) {
    std::map<Variable, int> seen;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Label& l = s.labels()[i];
        if (l.kind() != Label::Kind::vars) continue;
        bool has_source = false, has_target = false;
        for (const auto& v : l.vars()) {
            if (!all.contains(v)) return false;
            ++seen[v];
            (targets.contains(v) ? has_target : has_source) = true;
        }
        if (has_source && has_target) return false;
        if (!has_source) continue;
        if (l.vars().size() != 1) return false;
        for (std::size_t j = 0; j < s.size(); ++j)
            if (j != i && s.can_flow(j, i) && s.labels()[j] != Label::bottom()) return false;
    }
    for (const auto& v : all)
        if (seen[v] != 1) return false;
    return true;
}

SecurityLattice random_lattice(Rng& rng, std::size_t max_labels) {
    const std::size_t n = 1 + below(rng, max_labels);
    // Distinct variable-set labels over a small alphabet, indexed in a random
    // topological order.
    static const char* const kNames[] = {"a", "b", "c", "d", "e"};
    LabelSet pool;
    while (pool.size() < n) {
        VarSet vars;
        for (const char* name : kNames)
            if (coin(rng, 35)) vars.insert(Variable(name));
        if (!vars.empty()) pool.insert(Label::of(std::move(vars)));
    }
    std::vector<Label> labels(pool.begin(), pool.end());
    for (std::size_t i = labels.size(); i > 1; --i) std::swap(labels[i - 1], labels[below(rng, i)]);

    LabelSet all{Label::bottom(), Label::top()};
    all.insert(labels.begin(), labels.end());
    std::set<LabelPair> order;
    const unsigned density = 15 + static_cast<unsigned>(below(rng, 50));
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (coin(rng, density)) order.emplace(labels[i], labels[j]);
    for (const auto& l : all) {
        order.emplace(Label::bottom(), l);
        order.emplace(l, Label::top());
    }
    return add_least_upper_labels(SecurityLattice::closed(all, order)).lattice;
}

}  // namespace iflat
