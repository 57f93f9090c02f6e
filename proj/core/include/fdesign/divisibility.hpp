#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fdesign/hypergraph.hpp"

namespace fdesign {

// (d_0, ..., d_{r-1}); entry i is the gcd of all i-set link sizes.
using DivVector = std::vector<i64>;

// Link of S. Vertices keep their labels; those of S are isolated in the result.
// For |S| = r the result is a 0-graph whose single possible edge is the empty set.
RGraph link(const RGraph& g, const VertexSet& s);
MultiRGraph link(const MultiRGraph& g, const VertexSet& s);

i64 link_size(const RGraph& g, const VertexSet& s);
i64 link_size(const MultiRGraph& g, const VertexSet& s);

DivVector div_vector(const RGraph& f);

struct DivisibilityVerdict {
    bool divisible = true;
    // Lexicographically smallest violating set, its link size and the modulus.
    std::optional<VertexSet> witness;
    i64 count = 0;
    i64 modulus = 1;
};

// b_i | lambda * |G(S)| for every S with |S| < b.size().
DivisibilityVerdict check_divisibility(const RGraph& g, const DivVector& b, i64 lambda = 1);
DivisibilityVerdict check_divisibility(const MultiRGraph& g, const DivVector& b, i64 lambda = 1);

DivisibilityVerdict is_divisible(const RGraph& g, const RGraph& f, i64 lambda = 1);
DivisibilityVerdict is_divisible(const MultiRGraph& g, const RGraph& f, i64 lambda = 1);

struct WeakRegularity {
    bool regular = false;
    std::vector<i64> s;
    struct Witness {
        int i = 0;
        VertexSet first;
        i64 first_degree = 0;
        VertexSet second;
        i64 second_degree = 0;
    };
    std::optional<Witness> witness;
};

WeakRegularity is_weakly_regular(const RGraph& f);

struct Shadow {
    RGraph graph;
    std::optional<std::vector<i64>> s;
};

Shadow shadow(const RGraph& f);

// n = r! * a * prod(Deg(F)); K_n^(r) is checked to be F-divisible.
i64 find_divisible_order(const RGraph& f, i64 a);

// Is K_n^(r) divisible by the vector b? Uses exact binomials.
bool complete_graph_divisible(int r, i64 n, const DivVector& b);

// Extremal |G(S)| over all (r-1)-subsets S of the vertex set.
i64 max_degree(const RGraph& g);
i64 max_degree(const MultiRGraph& g);
i64 min_degree(const RGraph& g);
i64 min_degree(const MultiRGraph& g);

enum class TypicalityMode { Exhaustive, Sampled };

struct TypicalityResult {
    double c = 0.0;
    bool typical = false;  // c < 1
    TypicalityMode mode = TypicalityMode::Exhaustive;
    i64 evaluated = 0;  // number of families A examined
};

// Smallest c with G (c, h, p)-typical. Exhaustive mode visits every family of
// at most h distinct (r-1)-sets and refuses when that exceeds max_families;
// sampled mode draws `samples` families with the given seed.
TypicalityResult typicality(const RGraph& g, int h, double p, TypicalityMode mode = TypicalityMode::Exhaustive,
                            i64 samples = 10000, std::uint64_t seed = 0, i64 max_families = 50'000'000);

}  // namespace fdesign
