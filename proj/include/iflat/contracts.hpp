#pragma once

#include <vector>

#include "iflat/flow.hpp"
#include "iflat/lattice.hpp"

namespace iflat {

/// Assume-guarantee contract whose members are flow relations: assumptions
/// over Z × X, guarantees over Z × Y, with Z = X ∪ Y.
struct FlowContract {
    VarSet inputs;
    VarSet outputs;
    std::vector<FlowRelation> assumption;
    std::vector<FlowRelation> guarantee;

    VarSet variables() const;

    friend bool operator==(const FlowContract&, const FlowContract&) = default;
};

/// The same contract with every member given as a security lattice.
struct LatticeContract {
    VarSet inputs;
    VarSet outputs;
    std::vector<SecurityLattice> assumption;
    std::vector<SecurityLattice> guarantee;

    VarSet variables() const;

    friend bool operator==(const LatticeContract&, const LatticeContract&) = default;
};

/// Translates every member with to_lattice, keeping member order.
LatticeContract to_lattice_contract(const FlowContract& c);

/// Reads every assumption lattice over Z × X and every guarantee lattice over Z × Y.
FlowContract to_flow_contract(const LatticeContract& c);

/// Port overlap, members whose domain or targets leave X (assumptions) or Y
/// (guarantees), and per-member flow relation violations. Each witness names
/// its member in `context`, e.g. `assumption[0]`.
std::vector<ViolationWitness> validate_contract(const FlowContract& c);

/// Human-readable problems with a lattice contract: members that are not
/// lattices and labels mentioning variables outside Z.
std::vector<std::string> validate_lattice_contract(const LatticeContract& c);

}  // namespace iflat
