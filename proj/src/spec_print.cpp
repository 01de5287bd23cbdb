#include <map>
#include <sstream>

#include "iflat/spec.hpp"

namespace iflat {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

constexpr const char* kIndent = "    ";

void print_ports(std::ostream& os, const VarSet& inputs, const VarSet& outputs, const char* indent = kIndent) {
    auto line = [&](const char* kw, const VarSet& vars) {
        if (vars.empty()) return;
        os << indent << kw << ": ";
        bool first = true;
        for (const auto& v : vars) {
            os << (first ? "" : ", ") << v.name();
            first = false;
        }
        os << ";\n";
    };
    line("inputs", inputs);
    line("outputs", outputs);
}

void print_pairs(std::ostream& os, const PairSet& pairs, const char* prefix, const char* indent) {
    for (const auto& [a, b] : pairs) os << indent << prefix << a.name() << " -> " << b.name() << ";\n";
}

// A label reference that resolves back to `l` within `declared`.
std::string label_ref(const Label& l, const std::map<std::string, int>& name_counts) {
    if (l.kind() != Label::Kind::vars) return to_string(l);
    const std::string joined = joined_name(l);
    if (name_counts.at(joined) == 1) return joined;
    return to_string(l);
}

void print_member(std::ostream& os, const char* kw, bool maximal, const PairSet& written) {
    os << kIndent << kw << (maximal ? " maximal" : "") << " {";
    if (written.empty()) {
        os << "}\n";
        return;
    }
    os << "\n";
    print_pairs(os, written, "flow ", "        ");
    os << kIndent << "}\n";
}

}  // namespace

const std::string& declaration_name(const Declaration& d) {
    return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

const SourceSpan& declaration_span(const Declaration& d) {
    return std::visit([](const auto& x) -> const SourceSpan& { return x.span; }, d);
}

std::string_view declaration_kind(const Declaration& d) {
    return std::visit(overloaded{[](const InterfaceDecl&) { return std::string_view("interface"); },
                                 [](const FlowsDecl&) { return std::string_view("flows"); },
                                 [](const LatticeDecl&) { return std::string_view("lattice"); },
                                 [](const ContractDecl&) { return std::string_view("contract"); }},
                      d);
}

const Declaration* SpecDocument::find(std::string_view name) const {
    for (const auto& d : declarations)
        if (declaration_name(d) == name) return &d;
    return nullptr;
}

const InterfaceDecl* SpecDocument::find_interface(std::string_view name) const {
    auto* d = find(name);
    return d ? std::get_if<InterfaceDecl>(d) : nullptr;
}

const FlowsDecl* SpecDocument::find_flows(std::string_view name) const {
    auto* d = find(name);
    return d ? std::get_if<FlowsDecl>(d) : nullptr;
}

const LatticeDecl* SpecDocument::find_lattice(std::string_view name) const {
    auto* d = find(name);
    return d ? std::get_if<LatticeDecl>(d) : nullptr;
}

const ContractDecl* SpecDocument::find_contract(std::string_view name) const {
    auto* d = find(name);
    return d ? std::get_if<ContractDecl>(d) : nullptr;
}

std::string pretty_print(const Declaration& decl) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const InterfaceDecl& d) {
                       os << "interface " << d.name << " {\n";
                       print_ports(os, d.interface.inputs, d.interface.outputs);
                       print_pairs(os, d.interface.assumption_no_flows, "assume noflow ", kIndent);
                       print_pairs(os, d.interface.guarantee_no_flows, "guarantee noflow ", kIndent);
                       os << "}\n";
                   },
                   [&](const FlowsDecl& d) {
                       os << "flows " << d.name << (d.strict ? " strict" : "") << " {\n";
                       print_ports(os, d.relation.domain().sources, d.relation.domain().targets);
                       print_pairs(os, d.written, "flow ", kIndent);
                       os << "}\n";
                   },
                   [&](const LatticeDecl& d) {
                       os << "lattice " << d.name << " {\n";
                       if (d.ports) print_ports(os, d.ports->sources, d.ports->targets);
                       std::map<std::string, int> counts;
                       for (const auto& l : d.declared) ++counts[joined_name(l)];
                       for (const auto& l : d.declared) os << kIndent << "label " << to_string(l) << ";\n";
                       for (const auto& [lo, hi] : d.written)
                           os << kIndent << label_ref(lo, counts) << " below " << label_ref(hi, counts) << ";\n";
                       os << "}\n";
                   },
                   [&](const ContractDecl& d) {
                       os << "contract " << d.name << " {\n";
                       print_ports(os, d.contract.inputs, d.contract.outputs);
                       for (std::size_t i = 0; i < d.written_assumption.size(); ++i)
                           print_member(os, "assume", d.maximal_assumption[i], d.written_assumption[i]);
                       for (std::size_t i = 0; i < d.written_guarantee.size(); ++i)
                           print_member(os, "guarantee", d.maximal_guarantee[i], d.written_guarantee[i]);
                       os << "}\n";
                   },
               },
               decl);
    return os.str();
}

std::string pretty_print(const SpecDocument& doc) {
    std::string out;
    for (const auto& d : doc.declarations) {
        if (!out.empty()) out += "\n";
        out += pretty_print(d);
    }
    return out;
}

FlowsDecl make_flows_decl(std::string name, const FlowRelation& relation) {
    FlowsDecl d;
    d.name = std::move(name);
    d.relation = relation;
    for (const auto& p : relation.pairs())
        if (p.first != p.second) d.written.insert(p);
    return d;
}

LatticeDecl make_lattice_decl(std::string name, const SecurityLattice& lattice, std::optional<VarDomain> ports) {
    LatticeDecl d;
    d.name = std::move(name);
    d.ports = std::move(ports);
    for (const auto& l : lattice.labels())
        if (!l.is_sentinel()) d.declared.insert(l);
    for (const auto& [lo, hi] : hasse_reduction(lattice))
        if (!lo.is_sentinel() && !hi.is_sentinel()) d.written.emplace(lo, hi);
    d.lattice = lattice;
    return d;
}

bool structurally_equal(const SpecDocument& a, const SpecDocument& b) {
    if (a.declarations.size() != b.declarations.size()) return false;
    for (std::size_t i = 0; i < a.declarations.size(); ++i) {
        const auto& x = a.declarations[i];
        const auto& y = b.declarations[i];
        if (x.index() != y.index()) return false;
        bool same = std::visit(
            overloaded{
                [&](const InterfaceDecl& d) {
                    const auto& e = std::get<InterfaceDecl>(y);
                    return d.name == e.name && d.interface == e.interface;
                },
                [&](const FlowsDecl& d) {
                    const auto& e = std::get<FlowsDecl>(y);
                    return d.name == e.name && d.strict == e.strict && d.written == e.written &&
                           d.relation == e.relation;
                },
                [&](const LatticeDecl& d) {
                    const auto& e = std::get<LatticeDecl>(y);
                    return d.name == e.name && d.ports == e.ports && d.declared == e.declared &&
                           d.written == e.written && d.lattice == e.lattice;
                },
                [&](const ContractDecl& d) {
                    const auto& e = std::get<ContractDecl>(y);
                    return d.name == e.name && d.contract == e.contract &&
                           d.written_assumption == e.written_assumption &&
                           d.written_guarantee == e.written_guarantee &&
                           d.maximal_assumption == e.maximal_assumption &&
                           d.maximal_guarantee == e.maximal_guarantee;
                },
            },
            x);
        if (!same) return false;
    }
    return true;
}

}  // namespace iflat
