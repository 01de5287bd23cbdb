#pragma once

// Translations between flow relations and security lattices.
//
// to_lattice builds one label per strongly connected component of the flow
// graph (plus a singleton per source variable), orders labels by
// L1 ⊑ L2 <=> L1 × L2 ⊆ M, and completes the order with fresh join labels.
// to_flow_rel reads a lattice back as a flow relation over a domain Z × V.

#include <cstdint>
#include <optional>
#include <vector>

#include "iflat/flow.hpp"
#include "iflat/lattice.hpp"

namespace iflat {

/// Labels whose variables lie on a common loop of `m`, one per strongly
/// connected component, plus a singleton for every source variable.
LabelSet maximal_loop_labels(const FlowRelation& m);

/// The can-flow order over `labels` plus the sentinels, closed.
SecurityLattice can_flow_order(const LabelSet& labels, const FlowRelation& m);

/// Where a fresh join label is attached below the common upper bounds of the
/// pair it resolves.
enum class Placement {
    /// Above every label that lies below all common upper bounds. Always
    /// terminates with a lattice.
    cut,
    /// Above exactly the resolved pair and whatever lies below it. Can keep
    /// creating labels forever on some orders; bounded by the budget.
    pair_closure,
};

struct FreshInsertion {
    Label label;
    Label first;
    Label second;

    friend bool operator==(const FreshInsertion&, const FreshInsertion&) = default;
};

struct Completion {
    SecurityLattice lattice;
    std::vector<FreshInsertion> insertions;
};

/// Adds fresh labels until every pair has a least upper bound. Pairs are
/// processed in canonical label order, new pairs are queued behind them.
/// Throws CompletionBudgetExceeded after |labels|² fresh labels.
Completion add_least_upper_labels(const SecurityLattice& order, Placement placement = Placement::cut);

struct TranslationTrace {
    LabelSet loop_labels;
    /// Singleton loop sets absorbed into a larger component label.
    LabelSet pruned_labels;
    SecurityLattice pre_completion;
    std::vector<FreshInsertion> fresh_labels_added;
};

struct Translation {
    SecurityLattice lattice;
    TranslationTrace trace;
};

Translation to_lattice(const FlowRelation& m);

/// Re-derives the lattice from `m` by following the recorded steps. Throws
/// Error when a recorded step does not match what `m` produces.
SecurityLattice replay(const TranslationTrace& trace, const FlowRelation& m);

/// {(z, z') | (L, L') ∈ ⊑, z ∈ L ∩ Z, z' ∈ L' ∩ V} over the domain (Z \ V, V).
FlowRelation to_flow_rel(const SecurityLattice& s, const VarSet& all, const VarSet& targets);

struct EquivalenceVerdict {
    bool equivalent = true;
    std::optional<VarPair> missing_flow;
    std::optional<VarPair> extra_flow;
    std::optional<LabelPair> bad_order_pair;
};

/// Soundness (every ordered pair of labels only relates flows of `m`) and
/// completeness (to_flow_rel reproduces `m` exactly).
EquivalenceVerdict is_equivalent(const SecurityLattice& s, const FlowRelation& m, const VarSet& all,
                                 const VarSet& targets);

}  // namespace iflat
