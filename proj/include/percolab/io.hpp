#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "percolab/graph.hpp"

namespace percolab {

// Edge-list text format: header `n <count>`, then one `u v` line per edge copy,
// 1-indexed. Blank lines and lines starting with '#' are ignored on input.
void write_edge_list(std::ostream& out, const MultiGraph& g);
MultiGraph read_edge_list(std::istream& in);

void save_edge_list(const std::string& path, const MultiGraph& g);
MultiGraph load_edge_list(const std::string& path);

// One value per line.
void write_values(std::ostream& out, const std::vector<double>& values);
std::vector<double> read_values(std::istream& in);

}  // namespace percolab
