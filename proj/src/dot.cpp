#include "iflat/dot.hpp"

#include <sstream>

namespace iflat {

namespace {

std::string quoted(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string emit_dot(const SecurityLattice& s, std::string_view graph_name) {
    const PosetReport report = validate_lattice(s);
    std::set<LabelPair> edges;
    if (report.is_lattice) {
        edges = hasse_reduction(s);
    } else {
        for (const auto& p : s.can_flow_pairs())
            if (p.first != p.second) edges.insert(p);
    }

    std::ostringstream os;
    os << "digraph " << quoted(graph_name) << " {\n";
    os << "  rankdir=BT;\n";
    if (!report.is_lattice) {
        const auto& f = report.failures.front();
        os << "  warning=" << quoted("not a lattice: " + f.axiom) << ";\n";
    }
    os << "  node [shape=box];\n";
    for (const auto& l : s.labels()) os << "  " << quoted(to_string(l)) << ";\n";
    for (const auto& [lo, hi] : edges) os << "  " << quoted(to_string(lo)) << " -> " << quoted(to_string(hi)) << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace iflat
