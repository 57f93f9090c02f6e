#include "fdesign/catalog.hpp"

#include <numeric>
#include <regex>

#include "fdesign/combinatorics.hpp"
#include "fdesign/errors.hpp"

namespace fdesign {

RGraph complete_graph(int r, int n) {
    RGraph g(r, n);
    VertexSet all(n);
    std::iota(all.begin(), all.end(), 0);
    for_each_subset(all, r, [&](const VertexSet& e) { g.add_edge(e); });
    return g;
}

RGraph fano_plane() {
    return RGraph(3, 7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

RGraph octahedron() {
    RGraph g(3, 6);
    for (int z = 0; z < 8; ++z) g.add_edge({(z & 1), 2 + ((z >> 1) & 1), 4 + ((z >> 2) & 1)});
    return g;
}

RGraph path_graph(int edges) {
    if (edges < 1) throw InvalidArgument("path_graph: need at least one edge");
    RGraph g(2, edges + 1);
    for (int i = 0; i < edges; ++i) g.add_edge({i, i + 1});
    return g;
}

RGraph cycle_graph(int n) {
    if (n < 3) throw InvalidArgument("cycle_graph: need n >= 3");
    RGraph g(2, n);
    for (int i = 0; i < n; ++i) g.add_edge({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
    return g;
}

RGraph single_edge(int r) { return complete_graph(r, r); }

RGraph named_pattern(const std::string& name) {
    if (name == "fano") return fano_plane();
    if (name == "octahedron") return octahedron();
    if (name == "p3") return path_graph(2);
    if (name == "c4") return cycle_graph(4);
    if (name == "edge") return single_edge(2);
    static const std::regex kn("k([0-9]+)(?:_([0-9]+))?");
    std::smatch m;
    if (std::regex_match(name, m, kn)) {
        if (m[1].length() > 6 || m[2].length() > 2) throw InvalidArgument("named_pattern: bad complete graph " + name);
        int n = std::stoi(m[1]);
        int r = m[2].matched ? std::stoi(m[2]) : 2;
        if (r < 1 || n < r || binom128(n, r) > 5'000'000) throw InvalidArgument("named_pattern: bad complete graph " + name);
        return complete_graph(r, n);
    }
    throw InvalidArgument("named_pattern: unknown pattern " + name);
}

}  // namespace fdesign
