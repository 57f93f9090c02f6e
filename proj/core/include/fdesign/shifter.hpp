#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdesign/divisibility.hpp"
#include "fdesign/regularise.hpp"

namespace fdesign {

// Root layout shared by all shifters: x^0_i is vertex i-1 and x^1_i is vertex
// k+i-1, so the roots are 0..2k-1 in the order (x^0_1..x^0_k, x^1_1..x^1_k).
inline Vertex shifter_root(int k, int i, int z) { return z * k + i; }

struct Multishifter {
    int k = 0;
    MultiRGraph graph;
    Packing decomposition;
    VertexSet roots;
    std::vector<VertexSet> s_star;       // the k-subsets of V(F)
    std::vector<i64> s_star_degree;      // |F(S*)|
    std::vector<i64> coefficients;       // a_{S*}, each >= 1
    i64 target = 0;                      // Deg(F)_k
    i64 modulus = 0;                     // Deg(F*)_k
};

// With swap_last the roles of x^0_k and x^1_k are exchanged, which flips the
// sign of every corner residue.
Multishifter multishifter(const RGraph& f, const FDecomposition& fd, int k, bool swap_last = false);

struct Shifter {
    int k = 0;
    RGraph graph;
    Packing decomposition;
    VertexSet roots;
    std::vector<Vertex> order;  // non-root vertices: multishifter vertices, then the fresh ones
    i64 degeneracy = 0;
    i64 degeneracy_bound = 0;   // C(f*-1, r-1)
    std::vector<i64> coefficients;
};

struct ShifterOptions {
    i64 max_edges = 5'000'000;
};

Shifter simple_shifter(const RGraph& f, const FDecomposition& fd, int k, const ShifterOptions& opts = {});

struct CongruenceVerdict {
    bool ok = true;
    std::string detail;
    std::optional<VertexSet> witness;
    i64 value = 0;
    i64 expected = 0;
    i64 modulus = 1;
};

// Exhaustive degree scan: |T(S)| = 0 mod b_|S| for |S| < k, and on k-sets
// corner {x_i^{z_i}} = (-1)^{sum z} * corner_value mod b_k, all others 0.
CongruenceVerdict verify_shifter_congruences(const MultiRGraph& t, const VertexSet& roots, int k, const DivVector& b,
                                             i64 corner_value);
CongruenceVerdict verify_shifter_congruences(const RGraph& t, const VertexSet& roots, int k, const DivVector& b,
                                             i64 corner_value);

struct ShifterVerdict {
    bool ok = true;
    std::string detail;
    bool decomposition = false;
    bool well_separated = false;
    bool root_pairs = false;     // every copy meets each {x_i^0, x_i^1} at most once
    bool roots_independent = false;  // T[X] empty
    CongruenceVerdict congruences;
};

// Decomposition, separation, root pairs, degree congruences and T[X] empty.
ShifterVerdict verify_shifter(const RGraph& t, const Packing& dec, const VertexSet& roots, int k, const DivVector& b,
                              i64 corner_value);

}  // namespace fdesign
