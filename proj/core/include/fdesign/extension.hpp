#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdesign/packing.hpp"

namespace fdesign {

struct FreshVertex {
    std::size_t instance = 0;  // index of the edge instance of H (parallel copies counted separately)
    Vertex role = 0;           // vertex of V(F) \ e0 it plays
    Vertex vertex = 0;
};

struct NablaResult {
    MultiRGraph tilde;  // union of the F_e
    RGraph core;        // tilde - H
    Packing decomposition;
    std::vector<VertexSet> instances;  // the edge of H behind each F_e
    std::vector<FreshVertex> fresh;
};

// Extends every edge instance e of H into a copy of F in which psi_e(v) plays v
// for v in e0 and fresh vertices play V(F) \ e0. psi, if given, holds one
// vector per instance: psi[i][j] is the vertex of e playing the j-th smallest
// vertex of e0. The default maps sorted e0 onto sorted e. Fresh vertices are
// numbered h.n() + instance * (f - r) + (rank of the role in V(F) \ e0).
NablaResult nabla(const MultiRGraph& h, const RGraph& f, const VertexSet& e0,
                  const std::vector<std::vector<Vertex>>* psi = nullptr);

// Every r-subset of V(F*) meeting e* is an edge.
bool symmetric_extender_check(const RGraph& fstar, const VertexSet& estar);

// m/(r-i) C(k-i, r-1-i) is an integer for all 0 <= i <= r-1.
bool in_admissible_set(int r, i64 k, i64 m);

// Vertices 0..k-1 are the colours, k + j is the j-th smallest vertex of V(F*) \ e*.
MultiRGraph canonical_multigraph(const RGraph& fstar, const VertexSet& estar, int k, i64 m);

struct ColouringVerdict {
    bool strong = true;
    std::optional<VertexSet> bad_edge;  // an edge repeating a colour
    bool regular = false;
    i64 m = 0;
    // |c^{subset}(C')| for every (r-1)-subset C' of the colours.
    std::map<VertexSet, i64> counts;
    // Counts on smaller colour sets match m/(r-i) C(k-i, r-1-i).
    bool lower_counts_ok = false;
    std::string detail;
};

ColouringVerdict verify_strong_colouring(const RGraph& h, const std::vector<int>& colour, int k);

struct StrongColouring {
    i64 t = 0;
    int k = 0;
    i64 m = 0;
    RGraph graph;  // H plus t vertex-disjoint copies of F on fresh vertices
    std::vector<int> colour;
};

// r = 2 only. H must be F-divisible and F weakly regular.
StrongColouring find_strong_colouring_r2(const RGraph& h, const RGraph& f);

struct IdentificationVerdict {
    bool ok = true;
    bool i1 = true;
    bool i2 = true;
    std::string detail;
    std::optional<VertexSet> witness;
};

// partition[v] is the vertex of H' whose class contains v.
IdentificationVerdict verify_identification(const MultiRGraph& h, const MultiRGraph& hp, const std::vector<Vertex>& partition);

// The partition from the proof that nabla H identifies onto M_{k,m}: colour
// classes for V(H) and fibres {z_{e,v}} for each v in V(F*) \ e*.
std::vector<Vertex> nabla_identification_partition(const NablaResult& nab, int h_n, const std::vector<int>& colour,
                                                   int k, const RGraph& fstar, const VertexSet& estar);

}  // namespace fdesign
