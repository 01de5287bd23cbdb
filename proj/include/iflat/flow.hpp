#pragma once

// Variables, flow relations and no-flow interfaces.
//
// A flow relation over a domain (U, V) is a set of pairs in (U ∪ V) × V that
// is transitive and reflexive on V. Relations are stored closed; generator
// pairs are expanded by make_flow_relation in `close` mode.

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iflat/errors.hpp"

namespace iflat {

class Variable {
public:
    /// Throws InvalidName unless `name` matches [a-zA-Z][a-zA-Z0-9_]*.
    explicit Variable(std::string name);

    const std::string& name() const { return name_; }

    friend auto operator<=>(const Variable&, const Variable&) = default;
    friend bool operator==(const Variable&, const Variable&) = default;

    static bool is_valid_name(std::string_view name);

private:
    std::string name_;
};

using VarSet = std::set<Variable>;
using VarPair = std::pair<Variable, Variable>;
using PairSet = std::set<VarPair>;

VarSet make_vars(std::initializer_list<std::string_view> names);
PairSet make_pairs(std::initializer_list<std::pair<std::string_view, std::string_view>> pairs);

std::string to_string(const VarPair& pair);
std::string to_string(const VarSet& vars);

/// The (U, V) split of a flow relation's domain (U ∪ V) × V.
struct VarDomain {
    VarSet sources;
    VarSet targets;

    VarSet all() const;
    bool contains(const Variable& v) const;

    friend bool operator==(const VarDomain&, const VarDomain&) = default;
};

class FlowRelation {
public:
    FlowRelation() = default;
    /// Stores the pairs as given. Use make_flow_relation for checked construction.
    FlowRelation(VarDomain domain, PairSet pairs);

    const VarDomain& domain() const { return domain_; }
    const PairSet& pairs() const { return pairs_; }
    bool contains(const Variable& from, const Variable& to) const;
    VarSet variables() const { return domain_.all(); }

    friend bool operator==(const FlowRelation&, const FlowRelation&) = default;

private:
    VarDomain domain_;
    PairSet pairs_;
};

enum class WitnessKind { not_transitive, not_reflexive, bad_range, noflow_violated };

std::string_view to_string(WitnessKind kind);

struct ViolationWitness {
    VarPair pair;
    WitnessKind kind;
    /// Where the violation was found, for witnesses aggregated over several relations.
    std::string context;

    friend bool operator==(const ViolationWitness&, const ViolationWitness&) = default;
};

/// `witness: <kind> (<a>, <b>)`, prefixed by the context when present.
std::string to_string(const ViolationWitness& w);

class NotClosed : public Error {
public:
    explicit NotClosed(ViolationWitness witness);
    const ViolationWitness& witness() const { return witness_; }

private:
    ViolationWitness witness_;
};

enum class CloseMode { strict, close };

PairSet transitive_closure(const PairSet& pairs);

/// Throws UnknownVariable for pairs outside the domain, RangeError for pairs
/// targeting a source, and NotClosed (strict mode) for the first violation.
FlowRelation make_flow_relation(VarDomain domain, const PairSet& raw, CloseMode mode);

/// Every violated flow-relation invariant, bad-range first, then missing
/// reflexive pairs, then missing transitive pairs.
std::vector<ViolationWitness> validate_flow_relation(const FlowRelation& m);

/// The pairs of `m` that are forbidden by `no_flows`; empty means satisfied.
std::vector<ViolationWitness> satisfies_no_flows(const FlowRelation& m, const PairSet& no_flows);

/// Ports plus assumption (targets an input) and guarantee (targets an output) no-flow pairs.
struct NoFlowInterface {
    VarSet inputs;
    VarSet outputs;
    PairSet assumption_no_flows;
    PairSet guarantee_no_flows;

    VarSet variables() const;

    friend bool operator==(const NoFlowInterface&, const NoFlowInterface&) = default;
};

/// Throws Error when ports overlap, UnknownVariable for undeclared names and
/// RangeError when a no-flow pair targets the wrong kind of port.
NoFlowInterface make_interface(VarSet inputs, VarSet outputs, PairSet assumptions, PairSet guarantees);

}  // namespace iflat
