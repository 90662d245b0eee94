#pragma once

#include <iosfwd>
#include <string>

#include "rigidlab/graph.hpp"
#include "rigidlab/rigidity.hpp"

namespace rigidlab::io {

// Graph text format:
//   n <N>
//   i j        (one edge per line, 0-based)
// Blank lines and lines starting with '#' are ignored.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

// Configuration CSV: one row per vertex, d comma-separated coordinates.
// The writer emits 17 significant digits so values round-trip exactly.
Configuration read_configuration(std::istream& in);
Configuration read_configuration_file(const std::string& path);
void write_configuration(std::ostream& out, const Configuration& c);
void write_configuration_file(const std::string& path, const Configuration& c);

}  // namespace rigidlab::io
