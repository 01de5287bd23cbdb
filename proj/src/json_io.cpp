#include "iflat/json_io.hpp"

namespace iflat {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw JsonSchemaError(path + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) schema_error(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema_error(path, std::string("missing field '") + key + "'");
    return *it;
}

const json& array_field(const json& j, const char* key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_array()) schema_error(path + "/" + key, "expected an array");
    return v;
}

std::string string_field(const json& j, const char* key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_string()) schema_error(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

bool bool_field(const json& j, const char* key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_boolean()) schema_error(path + "/" + key, "expected a boolean");
    return v.get<bool>();
}

void check_header(const json& j, const char* type, const std::string& path) {
    const json& schema = field(j, "schema", path);
    if (!schema.is_number_integer() || schema.get<int>() != kJsonSchemaVersion)
        schema_error(path + "/schema", "unsupported schema version");
    if (string_field(j, "type", path) != type)
        schema_error(path + "/type", std::string("expected type '") + type + "'");
}

json header(const char* type) { return json{{"schema", kJsonSchemaVersion}, {"type", type}}; }

Variable variable_from(const json& j, const std::string& path) {
    if (!j.is_string()) schema_error(path, "expected a variable name");
    try {
        return Variable(j.get<std::string>());
    } catch (const InvalidName& e) {
        schema_error(path, e.what());
    }
}

json vars_json(const VarSet& vars) {
    json out = json::array();
    for (const auto& v : vars) out.push_back(v.name());
    return out;
}

VarSet vars_from(const json& j, const std::string& path) {
    if (!j.is_array()) schema_error(path, "expected an array of variable names");
    VarSet out;
    for (std::size_t i = 0; i < j.size(); ++i) out.insert(variable_from(j[i], path + "/" + std::to_string(i)));
    return out;
}

json pairs_json(const PairSet& pairs) {
    json out = json::array();
    for (const auto& [a, b] : pairs) out.push_back(json::array({a.name(), b.name()}));
    return out;
}

PairSet pairs_from(const json& j, const std::string& path) {
    if (!j.is_array()) schema_error(path, "expected an array of pairs");
    PairSet out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        if (!j[i].is_array() || j[i].size() != 2) schema_error(p, "expected a two-element array");
        out.emplace(variable_from(j[i][0], p + "/0"), variable_from(j[i][1], p + "/1"));
    }
    return out;
}

Label label_at(const json& j, const std::string& path) {
    if (!j.is_object()) schema_error(path, "expected a label object");
    const std::string kind = string_field(j, "kind", path);
    if (kind == "top") return Label::top();
    if (kind == "bottom") return Label::bottom();
    if (kind == "fresh") {
        const json& id = field(j, "id", path);
        if (!id.is_number_unsigned()) schema_error(path + "/id", "expected a non-negative integer");
        return Label::fresh(id.get<std::uint32_t>());
    }
    if (kind == "vars") {
        VarSet vars = vars_from(field(j, "vars", path), path + "/vars");
        if (vars.empty()) schema_error(path + "/vars", "variable-set labels must not be empty");
        return Label::of(std::move(vars));
    }
    schema_error(path + "/kind", "unknown label kind '" + kind + "'");
}

SecurityLattice lattice_at(const json& j, const std::string& path) {
    check_header(j, "lattice", path);
    const json& jl = array_field(j, "labels", path);
    std::vector<Label> labels;
    for (std::size_t i = 0; i < jl.size(); ++i) labels.push_back(label_at(jl[i], path + "/labels/" + std::to_string(i)));
    const LabelSet label_set(labels.begin(), labels.end());
    if (label_set.size() != labels.size()) schema_error(path + "/labels", "duplicate label");

    const json& jo = array_field(j, "can_flow", path);
    std::set<LabelPair> order;
    for (std::size_t i = 0; i < jo.size(); ++i) {
        const std::string p = path + "/can_flow/" + std::to_string(i);
        const json& e = jo[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
            schema_error(p, "expected a pair of label indices");
        auto a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>();
        if (a >= labels.size() || b >= labels.size()) schema_error(p, "label index out of range");
        order.emplace(labels[a], labels[b]);
    }
    return SecurityLattice(label_set, order);
}

FlowRelation flow_relation_at(const json& j, const std::string& path) {
    check_header(j, "flow_relation", path);
    VarDomain domain{vars_from(field(j, "sources", path), path + "/sources"),
                     vars_from(field(j, "targets", path), path + "/targets")};
    return FlowRelation(std::move(domain), pairs_from(field(j, "pairs", path), path + "/pairs"));
}

template <class T, class F>
std::vector<T> list_at(const json& j, const char* key, const std::string& path, F&& item) {
    const json& arr = array_field(j, key, path);
    std::vector<T> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(item(arr[i], path + "/" + key + "/" + std::to_string(i)));
    return out;
}

NoFlowInterface interface_at(const json& j, const std::string& path) {
    check_header(j, "interface", path);
    NoFlowInterface i;
    i.inputs = vars_from(field(j, "inputs", path), path + "/inputs");
    i.outputs = vars_from(field(j, "outputs", path), path + "/outputs");
    i.assumption_no_flows = pairs_from(field(j, "assumption_no_flows", path), path + "/assumption_no_flows");
    i.guarantee_no_flows = pairs_from(field(j, "guarantee_no_flows", path), path + "/guarantee_no_flows");
    return i;
}

FlowContract flow_contract_at(const json& j, const std::string& path) {
    check_header(j, "flow_contract", path);
    FlowContract c;
    c.inputs = vars_from(field(j, "inputs", path), path + "/inputs");
    c.outputs = vars_from(field(j, "outputs", path), path + "/outputs");
    c.assumption = list_at<FlowRelation>(j, "assumption", path, flow_relation_at);
    c.guarantee = list_at<FlowRelation>(j, "guarantee", path, flow_relation_at);
    return c;
}

std::vector<bool> bools_at(const json& j, const char* key, const std::string& path) {
    std::vector<bool> out;
    const json& arr = array_field(j, key, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_boolean()) schema_error(path + "/" + key + "/" + std::to_string(i), "expected a boolean");
        out.push_back(arr[i].get<bool>());
    }
    return out;
}

Declaration declaration_at(const json& j, const std::string& path) {
    const std::string kind = string_field(j, "kind", path);
    const std::string name = string_field(j, "name", path);
    if (kind == "interface") return InterfaceDecl{name, interface_at(field(j, "interface", path), path + "/interface"), {}};
    if (kind == "flows") {
        FlowsDecl d;
        d.name = name;
        d.strict = bool_field(j, "strict", path);
        d.written = pairs_from(field(j, "written", path), path + "/written");
        d.relation = flow_relation_at(field(j, "relation", path), path + "/relation");
        return d;
    }
    if (kind == "lattice") {
        LatticeDecl d;
        d.name = name;
        const json& ports = field(j, "ports", path);
        if (!ports.is_null())
            d.ports = VarDomain{vars_from(field(ports, "sources", path + "/ports"), path + "/ports/sources"),
                                vars_from(field(ports, "targets", path + "/ports"), path + "/ports/targets")};
        for (const auto& l : list_at<Label>(j, "declared", path, label_at)) d.declared.insert(l);
        const json& written = array_field(j, "written", path);
        for (std::size_t i = 0; i < written.size(); ++i) {
            const std::string p = path + "/written/" + std::to_string(i);
            if (!written[i].is_array() || written[i].size() != 2) schema_error(p, "expected a pair of labels");
            d.written.emplace(label_at(written[i][0], p + "/0"), label_at(written[i][1], p + "/1"));
        }
        d.lattice = lattice_at(field(j, "lattice", path), path + "/lattice");
        return d;
    }
    if (kind == "contract") {
        ContractDecl d;
        d.name = name;
        d.contract = flow_contract_at(field(j, "contract", path), path + "/contract");
        d.written_assumption = list_at<PairSet>(j, "written_assumption", path, pairs_from);
        d.written_guarantee = list_at<PairSet>(j, "written_guarantee", path, pairs_from);
        d.maximal_assumption = bools_at(j, "maximal_assumption", path);
        d.maximal_guarantee = bools_at(j, "maximal_guarantee", path);
        if (d.written_assumption.size() != d.contract.assumption.size() ||
            d.maximal_assumption.size() != d.contract.assumption.size() ||
            d.written_guarantee.size() != d.contract.guarantee.size() ||
            d.maximal_guarantee.size() != d.contract.guarantee.size())
            schema_error(path, "member lists have different lengths");
        return d;
    }
    schema_error(path + "/kind", "unknown declaration kind '" + kind + "'");
}

}  // namespace

json to_json(const Label& l) {
    switch (l.kind()) {
        case Label::Kind::top: return {{"kind", "top"}};
        case Label::Kind::bottom: return {{"kind", "bottom"}};
        case Label::Kind::fresh: return {{"kind", "fresh"}, {"id", l.fresh_id()}};
        case Label::Kind::vars: return {{"kind", "vars"}, {"vars", vars_json(l.vars())}};
    }
    return {};
}

json to_json(const FlowRelation& m) {
    json j = header("flow_relation");
    j["sources"] = vars_json(m.domain().sources);
    j["targets"] = vars_json(m.domain().targets);
    j["pairs"] = pairs_json(m.pairs());
    return j;
}

json to_json(const SecurityLattice& s) {
    json j = header("lattice");
    j["labels"] = json::array();
    for (const auto& l : s.labels()) j["labels"].push_back(to_json(l));
    j["can_flow"] = json::array();
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b)
            if (s.can_flow(a, b)) j["can_flow"].push_back(json::array({a, b}));
    return j;
}

json to_json(const NoFlowInterface& i) {
    json j = header("interface");
    j["inputs"] = vars_json(i.inputs);
    j["outputs"] = vars_json(i.outputs);
    j["assumption_no_flows"] = pairs_json(i.assumption_no_flows);
    j["guarantee_no_flows"] = pairs_json(i.guarantee_no_flows);
    return j;
}

json to_json(const FlowContract& c) {
    json j = header("flow_contract");
    j["inputs"] = vars_json(c.inputs);
    j["outputs"] = vars_json(c.outputs);
    j["assumption"] = json::array();
    for (const auto& m : c.assumption) j["assumption"].push_back(to_json(m));
    j["guarantee"] = json::array();
    for (const auto& m : c.guarantee) j["guarantee"].push_back(to_json(m));
    return j;
}

json to_json(const LatticeContract& c) {
    json j = header("lattice_contract");
    j["inputs"] = vars_json(c.inputs);
    j["outputs"] = vars_json(c.outputs);
    j["assumption"] = json::array();
    for (const auto& s : c.assumption) j["assumption"].push_back(to_json(s));
    j["guarantee"] = json::array();
    for (const auto& s : c.guarantee) j["guarantee"].push_back(to_json(s));
    return j;
}

json to_json(const SpecDocument& d) {
    json j = header("document");
    j["declarations"] = json::array();
    for (const auto& decl : d.declarations) {
        json e{{"kind", std::string(declaration_kind(decl))}, {"name", declaration_name(decl)}};
        if (auto* x = std::get_if<InterfaceDecl>(&decl)) {
            e["interface"] = to_json(x->interface);
        } else if (auto* x = std::get_if<FlowsDecl>(&decl)) {
            e["strict"] = x->strict;
            e["written"] = pairs_json(x->written);
            e["relation"] = to_json(x->relation);
        } else if (auto* x = std::get_if<LatticeDecl>(&decl)) {
            e["ports"] = x->ports ? json{{"sources", vars_json(x->ports->sources)},
                                         {"targets", vars_json(x->ports->targets)}}
                                  : json(nullptr);
            e["declared"] = json::array();
            for (const auto& l : x->declared) e["declared"].push_back(to_json(l));
            e["written"] = json::array();
            for (const auto& [lo, hi] : x->written) e["written"].push_back(json::array({to_json(lo), to_json(hi)}));
            e["lattice"] = to_json(x->lattice);
        } else if (auto* x = std::get_if<ContractDecl>(&decl)) {
            e["contract"] = to_json(x->contract);
            e["written_assumption"] = json::array();
            for (const auto& p : x->written_assumption) e["written_assumption"].push_back(pairs_json(p));
            e["written_guarantee"] = json::array();
            for (const auto& p : x->written_guarantee) e["written_guarantee"].push_back(pairs_json(p));
            e["maximal_assumption"] = x->maximal_assumption;
            e["maximal_guarantee"] = x->maximal_guarantee;
        }
        j["declarations"].push_back(std::move(e));
    }
    return j;
}

Label label_from_json(const json& j) { return label_at(j, ""); }
FlowRelation flow_relation_from_json(const json& j) { return flow_relation_at(j, ""); }
SecurityLattice lattice_from_json(const json& j) { return lattice_at(j, ""); }
NoFlowInterface interface_from_json(const json& j) { return interface_at(j, ""); }
FlowContract flow_contract_from_json(const json& j) { return flow_contract_at(j, ""); }

LatticeContract lattice_contract_from_json(const json& j) {
    check_header(j, "lattice_contract", "");
    LatticeContract c;
    c.inputs = vars_from(field(j, "inputs", ""), "/inputs");
    c.outputs = vars_from(field(j, "outputs", ""), "/outputs");
    c.assumption = list_at<SecurityLattice>(j, "assumption", "", lattice_at);
    c.guarantee = list_at<SecurityLattice>(j, "guarantee", "", lattice_at);
    return c;
}

SpecDocument document_from_json(const json& j) {
    check_header(j, "document", "");
    SpecDocument d;
    d.declarations = list_at<Declaration>(j, "declarations", "", declaration_at);
    return d;
}

json parse_json_text(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw JsonSchemaError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace iflat
