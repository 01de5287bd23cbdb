#include "iflat/flow.hpp"

#include <algorithm>
#include <map>

namespace iflat {

namespace {

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9') || c == '_'; }

}  // namespace

Variable::Variable(std::string name) : name_(std::move(name)) {
    if (!is_valid_name(name_)) {
        if (!name_.empty() && name_.front() == '_')
            throw InvalidName("variable name '" + name_ + "' uses the reserved '_' prefix");
        throw InvalidName("invalid variable name '" + name_ + "'");
    }
}

bool Variable::is_valid_name(std::string_view name) {
    if (name.empty() || !is_ident_start(name.front())) return false;
    return std::all_of(name.begin(), name.end(), is_ident_char);
}

VarSet make_vars(std::initializer_list<std::string_view> names) {
    VarSet out;
    for (auto n : names) out.emplace(std::string(n));
    return out;
}

PairSet make_pairs(std::initializer_list<std::pair<std::string_view, std::string_view>> pairs) {
    PairSet out;
    for (const auto& [a, b] : pairs) out.emplace(Variable(std::string(a)), Variable(std::string(b)));
    return out;
}

std::string to_string(const VarPair& pair) {
    return "(" + pair.first.name() + ", " + pair.second.name() + ")";
}

std::string to_string(const VarSet& vars) {
    std::string out = "{";
    bool first = true;
    for (const auto& v : vars) {
        if (!first) out += ", ";
        out += v.name();
        first = false;
    }
    return out + "}";
}

VarSet VarDomain::all() const {
    VarSet out = sources;
    out.insert(targets.begin(), targets.end());
    return out;
}

bool VarDomain::contains(const Variable& v) const { return sources.count(v) || targets.count(v); }

FlowRelation::FlowRelation(VarDomain domain, PairSet pairs)
    : domain_(std::move(domain)), pairs_(std::move(pairs)) {}

bool FlowRelation::contains(const Variable& from, const Variable& to) const {
    return pairs_.count({from, to}) != 0;
}

std::string_view to_string(WitnessKind kind) {
    switch (kind) {
        case WitnessKind::not_transitive: return "not-transitive";
        case WitnessKind::not_reflexive: return "not-reflexive";
        case WitnessKind::bad_range: return "bad-range";
        case WitnessKind::noflow_violated: return "noflow-violated";
    }
    return "unknown";
}

std::string to_string(const ViolationWitness& w) {
    std::string out = "witness: ";
    if (!w.context.empty()) out += w.context + ": ";
    out += std::string(to_string(w.kind)) + " " + to_string(w.pair);
    return out;
}

NotClosed::NotClosed(ViolationWitness witness)
    : Error("not a flow relation: " + to_string(witness)), witness_(std::move(witness)) {}

PairSet transitive_closure(const PairSet& pairs) {
    // Warshall over the variables that occur in `pairs`.
    std::map<Variable, std::size_t> index;
    std::vector<const Variable*> vars;
    for (const auto& [a, b] : pairs) {
        for (const Variable* v : {&a, &b}) {
            if (index.emplace(*v, vars.size()).second) vars.push_back(v);
        }
    }
    const std::size_t n = vars.size();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (const auto& [a, b] : pairs) reach[index[a]][index[b]] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = 1;

    PairSet out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (reach[i][j]) out.emplace(*vars[i], *vars[j]);
    return out;
}

namespace {

void check_domain(const VarDomain& domain) {
    for (const auto& v : domain.sources) {
        if (domain.targets.count(v))
            throw Error("variable '" + v.name() + "' is both a source and a target");
    }
}

void check_pairs_in_domain(const VarDomain& domain, const PairSet& pairs) {
    for (const auto& p : pairs) {
        for (const Variable* v : {&p.first, &p.second}) {
            if (!domain.contains(*v))
                throw UnknownVariable("flow " + to_string(p) + " mentions undeclared variable '" +
                                      v->name() + "'");
        }
        if (!domain.targets.count(p.second))
            throw RangeError("flow " + to_string(p) + " targets '" + p.second.name() +
                             "', which is not a target variable");
    }
}

}  // namespace

FlowRelation make_flow_relation(VarDomain domain, const PairSet& raw, CloseMode mode) {
    check_domain(domain);
    check_pairs_in_domain(domain, raw);
    if (mode == CloseMode::strict) {
        FlowRelation m(std::move(domain), raw);
        auto witnesses = validate_flow_relation(m);
        if (!witnesses.empty()) throw NotClosed(witnesses.front());
        return m;
    }
    PairSet seeded = raw;
    for (const auto& v : domain.targets) seeded.emplace(v, v);
    return FlowRelation(std::move(domain), transitive_closure(seeded));
}

std::vector<ViolationWitness> validate_flow_relation(const FlowRelation& m) {
    std::vector<ViolationWitness> out;
    const auto& dom = m.domain();
    for (const auto& p : m.pairs()) {
        if (!dom.contains(p.first) || !dom.targets.count(p.second))
            out.push_back({p, WitnessKind::bad_range, {}});
    }
    for (const auto& v : dom.targets) {
        if (!m.contains(v, v)) out.push_back({{v, v}, WitnessKind::not_reflexive, {}});
    }
    // Successor lists keep the composition scan proportional to |pairs| * out-degree.
    std::map<Variable, std::vector<Variable>> succ;
    for (const auto& [a, b] : m.pairs()) succ[a].push_back(b);
    PairSet missing;
    for (const auto& [a, b] : m.pairs()) {
        auto it = succ.find(b);
        if (it == succ.end()) continue;
        for (const auto& c : it->second) {
            if (!m.contains(a, c)) missing.emplace(a, c);
        }
    }
    for (const auto& p : missing) out.push_back({p, WitnessKind::not_transitive, {}});
    return out;
}

std::vector<ViolationWitness> satisfies_no_flows(const FlowRelation& m, const PairSet& no_flows) {
    const auto& dom = m.domain();
    std::vector<ViolationWitness> out;
    for (const auto& p : no_flows) {
        for (const Variable* v : {&p.first, &p.second}) {
            if (!dom.contains(*v))
                throw UnknownVariable("no-flow " + to_string(p) + " mentions '" + v->name() +
                                      "', which the flow relation does not declare");
        }
        if (m.pairs().count(p)) out.push_back({p, WitnessKind::noflow_violated, {}});
    }
    return out;
}

VarSet NoFlowInterface::variables() const {
    VarSet out = inputs;
    out.insert(outputs.begin(), outputs.end());
    return out;
}

NoFlowInterface make_interface(VarSet inputs, VarSet outputs, PairSet assumptions, PairSet guarantees) {
    for (const auto& v : inputs) {
        if (outputs.count(v)) throw Error("port '" + v.name() + "' is both an input and an output");
    }
    NoFlowInterface iface{std::move(inputs), std::move(outputs), std::move(assumptions),
                          std::move(guarantees)};
    const VarSet all = iface.variables();
    auto check = [&](const PairSet& pairs, const VarSet& allowed_targets, std::string_view what) {
        for (const auto& p : pairs) {
            for (const Variable* v : {&p.first, &p.second}) {
                if (!all.count(*v))
                    throw UnknownVariable("no-flow " + to_string(p) + " mentions undeclared port '" +
                                          v->name() + "'");
            }
            if (!allowed_targets.count(p.second))
                throw RangeError(std::string(what) + " no-flow " + to_string(p) + " must target " +
                                 (what == "assumption" ? "an input" : "an output"));
        }
    };
    check(iface.assumption_no_flows, iface.inputs, "assumption");
    check(iface.guarantee_no_flows, iface.outputs, "guarantee");
    return iface;
}

}  // namespace iflat
