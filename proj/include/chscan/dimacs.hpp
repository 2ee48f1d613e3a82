#pragma once

#include <iosfwd>
#include <string>

#include "chscan/graph.hpp"

namespace chscan {

// DIMACS shortest-path format: 'c' comment lines, one 'p sp <n> <m>' problem
// line, then 'a <u> <v> <w>' arc lines with 1-based node ids and non-negative
// integer weights. Malformed input throws std::runtime_error naming the line.
Graph load_dimacs(std::istream& in);
Graph load_dimacs_file(const std::string& path);

// Writes 'p sp n m' followed by one 'a u v w' line per arc, 1-based.
void write_dimacs(const Graph& g, std::ostream& out);

}  // namespace chscan
