#pragma once

// Seeded generators for flow relations and lattices. All draws go through
// std::mt19937_64, so a seed reproduces the same values on every platform.

#include <cstddef>
#include <cstdint>
#include <random>

#include "iflat/flow.hpp"
#include "iflat/lattice.hpp"

namespace iflat {

using Rng = std::mt19937_64;

/// Closure of a random digraph over max_vars/2..max_vars variables `v0, v1, ...`.
/// Every variable is a source or a target with equal odds (at least one
/// target), and edges only end in targets.
FlowRelation random_flow_relation(Rng& rng, std::size_t max_vars = 8);

/// A lattice together with the domain it is read back over.
struct DomainLattice {
    SecurityLattice lattice;
    VarSet all;
    VarSet targets;
};

/// A lattice whose non-sentinel, non-fresh labels are singleton sources
/// `u<i>` and pairwise disjoint target sets over `v<i>`, with source labels
/// only ordered below target labels. Missing joins are filled in by
/// add_least_upper_labels.
DomainLattice random_source_target_lattice(Rng& rng, std::size_t max_sources = 5, std::size_t max_targets = 6);

/// Whether `s` has the shape above over (all, targets): every variable in
/// exactly one label, source labels singletons with nothing but ⊥ below
/// them, target labels disjoint subsets of `targets`.
bool has_source_target_shape(const SecurityLattice& s, const VarSet& all, const VarSet& targets);

/// A random partial order over at most `max_labels` variable-set labels,
/// completed to a lattice.
SecurityLattice random_lattice(Rng& rng, std::size_t max_labels = 6);

}  // namespace iflat
