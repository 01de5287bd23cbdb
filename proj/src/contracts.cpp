#include "iflat/contracts.hpp"

#include "iflat/translate.hpp"

namespace iflat {

namespace {

VarSet union_of(const VarSet& a, const VarSet& b) {
    VarSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

}  // namespace

VarSet FlowContract::variables() const { return union_of(inputs, outputs); }
VarSet LatticeContract::variables() const { return union_of(inputs, outputs); }

LatticeContract to_lattice_contract(const FlowContract& c) {
    LatticeContract out{c.inputs, c.outputs, {}, {}};
    out.assumption.reserve(c.assumption.size());
    for (const auto& m : c.assumption) out.assumption.push_back(to_lattice(m).lattice);
    out.guarantee.reserve(c.guarantee.size());
    for (const auto& m : c.guarantee) out.guarantee.push_back(to_lattice(m).lattice);
    return out;
}

FlowContract to_flow_contract(const LatticeContract& c) {
    const VarSet all = c.variables();
    FlowContract out{c.inputs, c.outputs, {}, {}};
    for (const auto& s : c.assumption) out.assumption.push_back(to_flow_rel(s, all, c.inputs));
    for (const auto& s : c.guarantee) out.guarantee.push_back(to_flow_rel(s, all, c.outputs));
    return out;
}

std::vector<ViolationWitness> validate_contract(const FlowContract& c) {
    std::vector<ViolationWitness> out;
    for (const auto& v : c.inputs)
        if (c.outputs.count(v)) out.push_back({{v, v}, WitnessKind::bad_range, "ports"});

    const VarSet all = c.variables();
    auto check = [&](const std::vector<FlowRelation>& members, const VarSet& targets, const char* role) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            const std::string context = std::string(role) + "[" + std::to_string(i) + "]";
            const FlowRelation& m = members[i];
            for (const auto& p : m.pairs()) {
                if (!all.count(p.first) || !targets.count(p.second))
                    out.push_back({p, WitnessKind::bad_range, context});
            }
            for (auto w : validate_flow_relation(m)) {
                // Pairs leaving the contract's target set are reported above.
                if (w.kind == WitnessKind::bad_range) continue;
                w.context = context;
                out.push_back(std::move(w));
            }
            for (const auto& v : targets)
                if (!m.domain().targets.count(v) && !m.contains(v, v))
                    out.push_back({{v, v}, WitnessKind::not_reflexive, context});
        }
    };
    check(c.assumption, c.inputs, "assumption");
    check(c.guarantee, c.outputs, "guarantee");
    return out;
}

std::vector<std::string> validate_lattice_contract(const LatticeContract& c) {
    std::vector<std::string> out;
    const VarSet all = c.variables();
    auto check = [&](const std::vector<SecurityLattice>& members, const char* role) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            const std::string context = std::string(role) + "[" + std::to_string(i) + "]";
            auto report = validate_lattice(members[i]);
            for (const auto& f : report.failures) out.push_back(context + ": " + to_string(f));
            for (const auto& l : members[i].labels())
                for (const auto& v : l.vars())
                    if (!all.count(v)) out.push_back(context + ": label " + to_string(l) + " mentions '" +
                                                     v.name() + "' outside the contract ports");
        }
    };
    check(c.assumption, "assumption");
    check(c.guarantee, "guarantee");
    return out;
}

}  // namespace iflat
