#pragma once

// The `.ifs` specification language.
//
//   # line comment
//   interface Bus {
//     inputs: wheel_s, distw_f_s;
//     outputs: odo_t, distw_f_t;
//     assume noflow odo_t -> distw_f_s;
//     guarantee noflow wheel_s -> distw_f_t;
//   }
//   flows I3 [strict] {
//     inputs: wheel_s;           # sources
//     outputs: odo_t;            # targets
//     flow wheel_s -> odo_t;
//   }
//   lattice Conf {
//     [inputs: ...; outputs: ...;]
//     label {Public};
//     label {Secret};
//     label _j0;
//     Public below Secret;      # or {Public} below {Secret}
//   }
//   contract C {
//     inputs: x;
//     outputs: y;
//     assume [maximal] { flow y -> x; }
//     guarantee [maximal] { flow x -> y; }
//   }
//
// Sentinel labels are implicit in lattice blocks and the written order is
// closed on load. `flows` blocks are transitively closed unless marked
// `strict`, in which case the relation is kept as written and checked by
// validation.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "iflat/contracts.hpp"
#include "iflat/errors.hpp"
#include "iflat/flow.hpp"
#include "iflat/lattice.hpp"

namespace iflat {

struct SourceSpan {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t length = 0;
};

class SpecError : public Error {
public:
    enum class Kind { syntax, unknown_variable, duplicate_name, semantic };

    SpecError(Kind kind, SourceSpan span, const std::string& message);

    Kind kind() const { return kind_; }
    const SourceSpan& span() const { return span_; }
    /// The message without the position prefix.
    const std::string& message() const { return message_; }

private:
    Kind kind_;
    SourceSpan span_;
    std::string message_;
};

struct InterfaceDecl {
    std::string name;
    NoFlowInterface interface;
    SourceSpan span;
};

struct FlowsDecl {
    std::string name;
    bool strict = false;
    /// Pairs as written; `relation` holds the loaded (closed) form.
    PairSet written;
    FlowRelation relation;
    SourceSpan span;
};

struct LatticeDecl {
    std::string name;
    /// Optional port lists, used as the Z × V domain when reading the lattice back as flows.
    std::optional<VarDomain> ports;
    LabelSet declared;
    std::set<LabelPair> written;
    SecurityLattice lattice;
    SourceSpan span;
};

struct ContractDecl {
    std::string name;
    FlowContract contract;
    std::vector<PairSet> written_assumption;
    std::vector<PairSet> written_guarantee;
    std::vector<bool> maximal_assumption;
    std::vector<bool> maximal_guarantee;
    SourceSpan span;
};

using Declaration = std::variant<InterfaceDecl, FlowsDecl, LatticeDecl, ContractDecl>;

const std::string& declaration_name(const Declaration& d);
std::string_view declaration_kind(const Declaration& d);
const SourceSpan& declaration_span(const Declaration& d);

struct SpecDocument {
    std::vector<Declaration> declarations;

    const Declaration* find(std::string_view name) const;
    const InterfaceDecl* find_interface(std::string_view name) const;
    const FlowsDecl* find_flows(std::string_view name) const;
    const LatticeDecl* find_lattice(std::string_view name) const;
    const ContractDecl* find_contract(std::string_view name) const;
};

/// Throws SpecError.
SpecDocument parse_spec(std::string_view text);

/// Canonical text; parse_spec(pretty_print(d)) is structurally equal to d.
std::string pretty_print(const SpecDocument& doc);
std::string pretty_print(const Declaration& decl);

/// Builds declarations from computed values, deriving the written pairs.
FlowsDecl make_flows_decl(std::string name, const FlowRelation& relation);
LatticeDecl make_lattice_decl(std::string name, const SecurityLattice& lattice,
                              std::optional<VarDomain> ports = std::nullopt);

/// Same declarations, names, written forms and loaded values; spans ignored.
bool structurally_equal(const SpecDocument& a, const SpecDocument& b);

}  // namespace iflat
