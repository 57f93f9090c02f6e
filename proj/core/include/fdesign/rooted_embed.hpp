#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "fdesign/hypergraph.hpp"
#include "fdesign/packing.hpp"

namespace fdesign {

using EdgeSet = std::unordered_set<VertexSet, VertexSetHash>;

struct RootedPiece {
    RGraph t;
    VertexSet roots;                  // X, as template vertices
    std::vector<Vertex> root_images;  // Lambda, aligned with roots
    // Placement order of V(T) \ X; computed by smallest-last peeling when empty.
    std::vector<Vertex> order;
};

// Subsets S of X with 1 <= |S| <= r-1 and |T(S)| > 0.
EdgeSet rooted_sets(const RGraph& t, const VertexSet& roots);
// r-subsets e of V(T) with e and X disjoint, or e meeting X in a rooted set.
std::vector<VertexSet> hull(const RGraph& t, const VertexSet& roots);

// Largest number of edges a vertex sends back into X and earlier vertices.
i64 rooted_degeneracy(const RGraph& t, const VertexSet& roots, const std::vector<Vertex>& order);
std::vector<Vertex> rooted_degeneracy_order(const RGraph& t, const VertexSet& roots);

struct RootedEmbedOptions {
    int retries = 50;
    // Host r-sets no hull image may use.
    EdgeSet forbidden;
};

struct RootedEmbedResult {
    std::vector<Embedding> embeddings;
    RGraph image;            // union of the embedded pieces
    i64 max_degree = 0;      // achieved, not guaranteed by anything
};

RootedEmbedResult rooted_embed(const RGraph& host, const std::vector<RootedPiece>& pieces, std::uint64_t seed,
                               const RootedEmbedOptions& opts = {});

struct RootedEmbedVerdict {
    bool ok = true;
    std::string detail;
    std::optional<std::size_t> piece;
};

// Faithfulness, injectivity, homomorphism and pairwise hull disjointness.
RootedEmbedVerdict verify_rooted_embedding(const RGraph& host, const std::vector<RootedPiece>& pieces,
                                           const std::vector<Embedding>& embeddings);

}  // namespace fdesign
