#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "coverspec/multigraph.hpp"

namespace coverspec {

// Line format:
//   vertex <name> [potential <p/q>]
//   edge <u> <v> weight <x/y>[+<x/y>i]
// Blank lines and text after '#' are ignored. Vertex ids follow declaration order.
Multigraph parse_graph(std::istream& in);
Multigraph parse_graph_text(std::string_view text);
Multigraph read_graph_file(const std::string& path);

// Canonical text: vertices in id order, then one line per edge pair.
std::string serialize_graph(const Multigraph& g);
void write_graph_file(const Multigraph& g, const std::string& path);

}  // namespace coverspec
