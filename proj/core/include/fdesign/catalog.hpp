#pragma once

#include <string>
#include <vector>

#include "fdesign/hypergraph.hpp"

namespace fdesign {

RGraph complete_graph(int r, int n);
RGraph fano_plane();
// Faces of the octahedron: one vertex from each antipodal pair {0,1},{2,3},{4,5}.
RGraph octahedron();
RGraph path_graph(int edges);
RGraph cycle_graph(int n);
RGraph single_edge(int r);

// Named patterns for the command line: k3, fano, octahedron, p3 (two-edge path),
// c4, k4, edge, and kN or kN_r for complete graphs.
RGraph named_pattern(const std::string& name);

}  // namespace fdesign
