#pragma once

// Security labels and can-flow orders.

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "iflat/flow.hpp"

namespace iflat {

class Label {
public:
    // Declaration order is the canonical label order.
    enum class Kind { bottom, vars, fresh, top };

    static Label top() { return Label(Kind::top, {}, 0); }
    static Label bottom() { return Label(Kind::bottom, {}, 0); }
    /// Throws Error for an empty set.
    static Label of(VarSet vars);
    static Label fresh(std::uint32_t id) { return Label(Kind::fresh, {}, id); }

    Kind kind() const { return kind_; }
    bool is_sentinel() const { return kind_ == Kind::top || kind_ == Kind::bottom; }
    bool is_fresh() const { return kind_ == Kind::fresh; }
    const VarSet& vars() const { return vars_; }
    std::uint32_t fresh_id() const { return fresh_id_; }

    /// Bottom, then variable sets lexicographically, then fresh labels by id, then Top.
    friend std::strong_ordering operator<=>(const Label& a, const Label& b);
    friend bool operator==(const Label&, const Label&) = default;

private:
    Label(Kind kind, VarSet vars, std::uint32_t id) : kind_(kind), vars_(std::move(vars)), fresh_id_(id) {}

    Kind kind_;
    VarSet vars_;
    std::uint32_t fresh_id_;
};

using LabelPair = std::pair<Label, Label>;
using LabelSet = std::set<Label>;

/// `TOP`, `BOT`, `_j<n>` or the brace-wrapped sorted variable list.
std::string to_string(const Label& label);
/// Sorted variable names joined by `_`; sentinels and fresh labels as in to_string.
std::string joined_name(const Label& label);

/// A finite set of labels with a can-flow relation. The constructor stores the
/// relation as given; whether it satisfies Denning's axioms is answered by
/// validate_lattice. Labels are kept in canonical order.
class SecurityLattice {
public:
    SecurityLattice() = default;
    /// Throws UnknownLabel when a pair mentions a label outside `labels`.
    SecurityLattice(const LabelSet& labels, const std::set<LabelPair>& can_flow);
    /// Same, then closes the relation reflexively and transitively.
    static SecurityLattice closed(const LabelSet& labels, const std::set<LabelPair>& can_flow);

    const std::vector<Label>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    bool contains(const Label& label) const { return index_of(label).has_value(); }
    std::optional<std::size_t> index_of(const Label& label) const;
    /// Throws UnknownLabel.
    std::size_t require(const Label& label) const;

    bool can_flow(std::size_t from, std::size_t to) const { return order_[from * labels_.size() + to] != 0; }
    std::set<LabelPair> can_flow_pairs() const;
    LabelSet label_set() const { return {labels_.begin(), labels_.end()}; }

    friend bool operator==(const SecurityLattice&, const SecurityLattice&) = default;

private:
    std::vector<Label> labels_;
    std::vector<char> order_;  // row-major, order_[i * n + j] == labels_[i] ⊑ labels_[j]
};

/// The two-label lattice ⊥ ⊑ ⊤.
SecurityLattice sentinel_lattice();

bool leq(const SecurityLattice& s, const Label& a, const Label& b);

/// The minimal common upper bounds of a pair that has no least upper bound.
struct NoJoin {
    std::vector<Label> minimal_upper_bounds;
    friend bool operator==(const NoJoin&, const NoJoin&) = default;
};

using JoinResult = std::variant<Label, NoJoin>;

JoinResult join(const SecurityLattice& s, const Label& a, const Label& b);
/// Throws NotALattice unless `s` passes validate_lattice.
Label meet(const SecurityLattice& s, const Label& a, const Label& b);

/// Index-level helpers shared by the completion and translation code.
std::vector<std::size_t> common_upper_bounds(const SecurityLattice& s, std::size_t a, std::size_t b);
std::vector<std::size_t> minimal_elements(const SecurityLattice& s, const std::vector<std::size_t>& subset);

struct AxiomFailure {
    std::string axiom;
    Label first;
    std::optional<Label> second;
    std::string detail;
};

struct PosetReport {
    bool is_lattice = true;
    std::vector<AxiomFailure> failures;
};

inline constexpr const char* kAxiomFiniteness = "Finiteness";
inline constexpr const char* kAxiomOrder = "Order";
inline constexpr const char* kAxiomPublicLabel = "Public Label";
inline constexpr const char* kAxiomTopLabel = "Top Label";
inline constexpr const char* kAxiomLabelCombining = "Totally of Label Combining";

/// Checks Denning's axioms in order: finiteness, partial order, unique bottom,
/// unique top, and a unique least upper bound for every pair. The join check
/// only runs on relations that are partial orders.
PosetReport validate_lattice(const LabelSet& labels, const std::set<LabelPair>& can_flow);
PosetReport validate_lattice(const SecurityLattice& s);

std::string to_string(const AxiomFailure& failure);

/// Covering pairs of a partial order.
std::set<LabelPair> hasse_reduction(const SecurityLattice& s);

/// Componentwise product. Sentinels that only pad a lattice (the non-sentinel
/// labels already have a unique least or greatest element) are dropped before
/// the product and fresh sentinels are added afterwards; a sentinel-only
/// operand acts as the unit. Pairs of variable-set labels become the union of
/// their variables, other mixed pairs become fresh labels.
/// Throws NotALattice on invalid input and Error when two pairs would collide.
SecurityLattice product_lattice(const SecurityLattice& a, const SecurityLattice& b);

/// Exists an order isomorphism between `a` and `b` (labels ignored).
bool order_isomorphic(const SecurityLattice& a, const SecurityLattice& b);

/// Exists an order isomorphism mapping fresh labels to fresh labels and fixing
/// every other label.
bool equal_up_to_fresh_renaming(const SecurityLattice& a, const SecurityLattice& b);

}  // namespace iflat
