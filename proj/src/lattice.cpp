#include "iflat/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace iflat {

Label Label::of(VarSet vars) {
    if (vars.empty()) throw Error("a variable-set label must not be empty");
    return Label(Kind::vars, std::move(vars), 0);
}

std::strong_ordering operator<=>(const Label& a, const Label& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (a.kind_ == Label::Kind::vars)
        return std::lexicographical_compare_three_way(a.vars_.begin(), a.vars_.end(), b.vars_.begin(),
                                                      b.vars_.end());
    return a.fresh_id_ <=> b.fresh_id_;
}

std::string to_string(const Label& label) {
    switch (label.kind()) {
        case Label::Kind::top: return "TOP";
        case Label::Kind::bottom: return "BOT";
        case Label::Kind::fresh: return "_j" + std::to_string(label.fresh_id());
        case Label::Kind::vars: return to_string(label.vars());
    }
    return "?";
}

std::string joined_name(const Label& label) {
    if (label.kind() != Label::Kind::vars) return to_string(label);
    std::string out;
    for (const auto& v : label.vars()) {
        if (!out.empty()) out += '_';
        out += v.name();
    }
    return out;
}

SecurityLattice::SecurityLattice(const LabelSet& labels, const std::set<LabelPair>& can_flow)
    : labels_(labels.begin(), labels.end()), order_(labels.size() * labels.size(), 0) {
    for (const auto& [a, b] : can_flow) order_[require(a) * labels_.size() + require(b)] = 1;
}

SecurityLattice SecurityLattice::closed(const LabelSet& labels, const std::set<LabelPair>& can_flow) {
    SecurityLattice s(labels, can_flow);
    const std::size_t n = s.labels_.size();
    for (std::size_t i = 0; i < n; ++i) s.order_[i * n + i] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (s.order_[i * n + k])
                for (std::size_t j = 0; j < n; ++j)
                    if (s.order_[k * n + j]) s.order_[i * n + j] = 1;
    return s;
}

std::optional<std::size_t> SecurityLattice::index_of(const Label& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t SecurityLattice::require(const Label& label) const {
    if (auto i = index_of(label)) return *i;
    throw UnknownLabel("unknown label " + to_string(label));
}

std::set<LabelPair> SecurityLattice::can_flow_pairs() const {
    std::set<LabelPair> out;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (can_flow(i, j)) out.emplace(labels_[i], labels_[j]);
    return out;
}

SecurityLattice sentinel_lattice() {
    return SecurityLattice::closed({Label::bottom(), Label::top()}, {{Label::bottom(), Label::top()}});
}

bool leq(const SecurityLattice& s, const Label& a, const Label& b) {
    return s.can_flow(s.require(a), s.require(b));
}

std::vector<std::size_t> common_upper_bounds(const SecurityLattice& s, std::size_t a, std::size_t b) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < s.size(); ++k)
        if (s.can_flow(a, k) && s.can_flow(b, k)) out.push_back(k);
    return out;
}

std::vector<std::size_t> minimal_elements(const SecurityLattice& s, const std::vector<std::size_t>& subset) {
    std::vector<std::size_t> out;
    for (auto c : subset) {
        bool minimal = std::none_of(subset.begin(), subset.end(),
                                    [&](std::size_t d) { return d != c && s.can_flow(d, c); });
        if (minimal) out.push_back(c);
    }
    return out;
}

JoinResult join(const SecurityLattice& s, const Label& a, const Label& b) {
    auto mins = minimal_elements(s, common_upper_bounds(s, s.require(a), s.require(b)));
    if (mins.size() == 1) return s.labels()[mins.front()];
    NoJoin nj;
    for (auto i : mins) nj.minimal_upper_bounds.push_back(s.labels()[i]);
    return nj;
}

Label meet(const SecurityLattice& s, const Label& a, const Label& b) {
    const std::size_t ia = s.require(a);
    const std::size_t ib = s.require(b);
    auto report = validate_lattice(s);
    if (!report.is_lattice) throw NotALattice("meet requires a lattice: " + to_string(report.failures.front()));
    // Join of all common lower bounds; bottom is always one of them.
    std::size_t acc = s.require(Label::bottom());
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (!s.can_flow(k, ia) || !s.can_flow(k, ib)) continue;
        acc = minimal_elements(s, common_upper_bounds(s, acc, k)).front();
    }
    return s.labels()[acc];
}

std::string to_string(const AxiomFailure& f) {
    std::string out = f.axiom + ": " + to_string(f.first);
    if (f.second) out += ", " + to_string(*f.second);
    if (!f.detail.empty()) out += " (" + f.detail + ")";
    return out;
}

namespace {

std::string list_labels(const SecurityLattice& s, const std::vector<std::size_t>& idx) {
    std::string out;
    for (auto i : idx) {
        if (!out.empty()) out += ", ";
        out += to_string(s.labels()[i]);
    }
    return out;
}

}  // namespace

PosetReport validate_lattice(const LabelSet& labels, const std::set<LabelPair>& can_flow) {
    PosetReport report;
    auto fail = [&](const char* axiom, const Label& a, std::optional<Label> b, std::string detail) {
        report.failures.push_back({axiom, a, std::move(b), std::move(detail)});
    };

    // Finiteness holds for every in-memory label set.

    std::set<LabelPair> known;
    for (const auto& p : can_flow) {
        if (!labels.count(p.first) || !labels.count(p.second))
            fail(kAxiomOrder, p.first, p.second, "pair mentions a label outside the label set");
        else
            known.insert(p);
    }
    const SecurityLattice s(labels, known);
    const std::size_t n = s.size();
    const auto& ls = s.labels();

    for (std::size_t i = 0; i < n; ++i)
        if (!s.can_flow(i, i)) fail(kAxiomOrder, ls[i], ls[i], "not reflexive");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !s.can_flow(i, j)) continue;
            if (i < j && s.can_flow(j, i)) fail(kAxiomOrder, ls[i], ls[j], "not antisymmetric");
            for (std::size_t k = 0; k < n; ++k)
                if (s.can_flow(j, k) && !s.can_flow(i, k)) fail(kAxiomOrder, ls[i], ls[k], "not transitive");
        }
    const bool is_order = report.failures.empty();

    auto bounds = [&](const Label& sentinel, const char* axiom, bool below) {
        auto idx = s.index_of(sentinel);
        if (!idx) {
            fail(axiom, sentinel, std::nullopt, "missing");
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            bool ok = below ? s.can_flow(*idx, i) : s.can_flow(i, *idx);
            if (!ok) fail(axiom, sentinel, ls[i], below ? "not below every label" : "not above every label");
        }
    };
    bounds(Label::bottom(), kAxiomPublicLabel, true);
    bounds(Label::top(), kAxiomTopLabel, false);

    if (is_order) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                auto mins = minimal_elements(s, common_upper_bounds(s, i, j));
                if (mins.size() != 1)
                    fail(kAxiomLabelCombining, ls[i], ls[j],
                         mins.empty() ? "no common upper bound"
                                      : "minimal upper bounds " + list_labels(s, mins));
            }
    }
    report.is_lattice = report.failures.empty();
    return report;
}

PosetReport validate_lattice(const SecurityLattice& s) { return validate_lattice(s.label_set(), s.can_flow_pairs()); }

std::set<LabelPair> hasse_reduction(const SecurityLattice& s) {
    std::set<LabelPair> out;
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !s.can_flow(i, j)) continue;
            bool covered = true;
            for (std::size_t k = 0; k < n && covered; ++k)
                if (k != i && k != j && s.can_flow(i, k) && s.can_flow(k, j)) covered = false;
            if (covered) out.emplace(s.labels()[i], s.labels()[j]);
        }
    return out;
}

namespace {

// One factor of a product: indices into the lattice, or nullopt for the unit point.
std::vector<std::optional<std::size_t>> effective_elements(const SecurityLattice& s) {
    std::vector<std::size_t> core;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!s.labels()[i].is_sentinel()) core.push_back(i);
    if (core.empty()) return {std::nullopt};

    std::vector<std::optional<std::size_t>> out(core.begin(), core.end());
    bool unique_min = minimal_elements(s, core).size() == 1;
    std::vector<std::size_t> maxima;
    for (auto c : core) {
        bool maximal = std::none_of(core.begin(), core.end(), [&](auto d) { return d != c && s.can_flow(c, d); });
        if (maximal) maxima.push_back(c);
    }
    if (!unique_min) out.insert(out.begin(), s.require(Label::bottom()));
    if (maxima.size() != 1) out.push_back(s.require(Label::top()));
    return out;
}

bool factor_leq(const SecurityLattice& s, std::optional<std::size_t> a, std::optional<std::size_t> b) {
    if (!a || !b) return true;
    return s.can_flow(*a, *b);
}

}  // namespace

SecurityLattice product_lattice(const SecurityLattice& a, const SecurityLattice& b) {
    for (const auto* s : {&a, &b}) {
        auto report = validate_lattice(*s);
        if (!report.is_lattice)
            throw NotALattice("product operand is not a lattice: " + to_string(report.failures.front()));
    }
    const auto ea = effective_elements(a);
    const auto eb = effective_elements(b);

    std::uint32_t next_fresh = 0;
    for (const auto* s : {&a, &b})
        for (const auto& l : s->labels())
            if (l.is_fresh()) next_fresh = std::max(next_fresh, l.fresh_id() + 1);

    struct Element {
        std::optional<std::size_t> x, y;
        Label label;
    };
    std::vector<Element> elems;
    for (auto x : ea)
        for (auto y : eb) {
            const Label* lx = x ? &a.labels()[*x] : nullptr;
            const Label* ly = y ? &b.labels()[*y] : nullptr;
            Label mapped = Label::bottom();
            if (!lx && !ly) {
                throw Error("product of two sentinel-only lattices has no non-sentinel point");
            } else if (!lx || !ly) {
                mapped = lx ? *lx : *ly;
            } else if (lx->kind() == ly->kind() && lx->is_sentinel()) {
                mapped = *lx;
            } else if (lx->kind() == Label::Kind::vars && ly->kind() == Label::Kind::vars) {
                VarSet vars = lx->vars();
                vars.insert(ly->vars().begin(), ly->vars().end());
                mapped = Label::of(std::move(vars));
            } else {
                mapped = Label::fresh(next_fresh++);
            }
            elems.push_back({x, y, std::move(mapped)});
        }

    LabelSet labels;
    for (const auto& e : elems) {
        if (!labels.insert(e.label).second)
            throw Error("product labels collide on " + to_string(e.label) + "; operands share variables");
    }
    std::set<LabelPair> order;
    for (const auto& p : elems)
        for (const auto& q : elems)
            if (factor_leq(a, p.x, q.x) && factor_leq(b, p.y, q.y)) order.emplace(p.label, q.label);

    for (const Label& sentinel : {Label::bottom(), Label::top()}) {
        if (labels.count(sentinel)) continue;
        for (const auto& l : labels)
            order.emplace(sentinel == Label::bottom() ? LabelPair{sentinel, l} : LabelPair{l, sentinel});
    }
    labels.insert(Label::bottom());
    labels.insert(Label::top());
    return SecurityLattice::closed(labels, order);
}

namespace {

// Backtracking search for a bijection f with a ⊑ b <=> f(a) ⊑ f(b).
// `allowed(i, j)` restricts which target j label i of `a` may map to.
bool find_isomorphism(const SecurityLattice& a, const SecurityLattice& b,
                      const std::function<bool(std::size_t, std::size_t)>& allowed) {
    const std::size_t n = a.size();
    if (b.size() != n) return false;

    auto signature = [](const SecurityLattice& s, std::size_t i) {
        std::size_t down = 0, up = 0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            down += s.can_flow(k, i);
            up += s.can_flow(i, k);
        }
        return std::pair{down, up};
    };
    std::vector<std::pair<std::size_t, std::size_t>> sig_a(n), sig_b(n);
    for (std::size_t i = 0; i < n; ++i) {
        sig_a[i] = signature(a, i);
        sig_b[i] = signature(b, i);
    }

    std::vector<std::size_t> map(n);
    std::vector<char> used(n, 0);
    std::function<bool(std::size_t)> extend = [&](std::size_t i) {
        if (i == n) return true;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || sig_a[i] != sig_b[j] || !allowed(i, j)) continue;
            bool consistent = a.can_flow(i, i) == b.can_flow(j, j);
            for (std::size_t k = 0; k < i && consistent; ++k) {
                consistent = a.can_flow(i, k) == b.can_flow(j, map[k]) &&
                             a.can_flow(k, i) == b.can_flow(map[k], j);
            }
            if (!consistent) continue;
            map[i] = j;
            used[j] = 1;
            if (extend(i + 1)) return true;
            used[j] = 0;
        }
        return false;
    };
    return extend(0);
}

}  // namespace

bool order_isomorphic(const SecurityLattice& a, const SecurityLattice& b) {
    return find_isomorphism(a, b, [](std::size_t, std::size_t) { return true; });
}

bool equal_up_to_fresh_renaming(const SecurityLattice& a, const SecurityLattice& b) {
    return find_isomorphism(a, b, [&](std::size_t i, std::size_t j) {
        const Label& la = a.labels()[i];
        const Label& lb = b.labels()[j];
        if (la.is_fresh() || lb.is_fresh()) return la.is_fresh() && lb.is_fresh();
        return la == lb;
    });
}

}  // namespace iflat
