#pragma once

#include <string>
#include <string_view>

#include "iflat/lattice.hpp"

namespace iflat {

/// Graphviz text for the Hasse diagram of `s`, edges pointing from each label
/// to the labels covering it, drawn bottom to top. A relation that fails
/// validate_lattice is drawn with every ordered pair and a `warning` graph
/// attribute. Output depends only on the value of `s`.
std::string emit_dot(const SecurityLattice& s, std::string_view graph_name = "lattice");

}  // namespace iflat
