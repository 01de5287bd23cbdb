#pragma once

// Canonical JSON encoding, schema version 1 (see schema/iflat.schema.json).
// Object keys are sorted, variable lists sorted and labels listed in
// canonical label order, so equal values always encode to the same bytes.

#include <string>
#include <string_view>

#include <json.hpp>

#include "iflat/contracts.hpp"
#include "iflat/flow.hpp"
#include "iflat/lattice.hpp"
#include "iflat/spec.hpp"

namespace iflat {

inline constexpr int kJsonSchemaVersion = 1;

nlohmann::json to_json(const Label& l);
nlohmann::json to_json(const FlowRelation& m);
nlohmann::json to_json(const SecurityLattice& s);
nlohmann::json to_json(const NoFlowInterface& i);
nlohmann::json to_json(const FlowContract& c);
nlohmann::json to_json(const LatticeContract& c);
nlohmann::json to_json(const SpecDocument& d);

// All of these throw JsonSchemaError naming the offending JSON path.
Label label_from_json(const nlohmann::json& j);
FlowRelation flow_relation_from_json(const nlohmann::json& j);
SecurityLattice lattice_from_json(const nlohmann::json& j);
NoFlowInterface interface_from_json(const nlohmann::json& j);
FlowContract flow_contract_from_json(const nlohmann::json& j);
LatticeContract lattice_contract_from_json(const nlohmann::json& j);
SpecDocument document_from_json(const nlohmann::json& j);

/// Compact canonical text.
template <class T>
std::string emit_json(const T& value) {
    return to_json(value).dump();
}

/// Throws JsonSchemaError on malformed text.
nlohmann::json parse_json_text(std::string_view text);

}  // namespace iflat
