#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdesign/hypergraph.hpp"

namespace fdesign {

struct Embedding {
    // role_map[v] is the host vertex playing pattern vertex v.
    std::vector<Vertex> role_map;
    bool operator==(const Embedding& o) const { return role_map == o.role_map; }
};

struct Packing {
    RGraph pattern;
    int host_n = 0;
    std::vector<Embedding> copies;
};

VertexSet image_vertices(const Embedding& e);
VertexSet image_edge(const Embedding& emb, const VertexSet& pattern_edge);
// Image edges of one copy, sorted.
std::vector<VertexSet> image_edges(const RGraph& pattern, const Embedding& emb);
// Union of all copies, counting multiplicity.
MultiRGraph covered(const Packing& p);
// Sorts copies by (image vertex set, role map) for stable serialization.
void canonicalize(Packing& p);

enum class PackingVerdictKind { ValidPacking, Decomposition, Violation };

struct PackingVerdict {
    PackingVerdictKind kind = PackingVerdictKind::Decomposition;
    std::string detail;
    std::optional<std::size_t> copy;
    std::optional<VertexSet> edge;
    bool ok() const { return kind != PackingVerdictKind::Violation; }
};

std::string to_string(PackingVerdictKind k);

PackingVerdict verify_packing(const RGraph& g, const Packing& p);
// Every edge of G covered exactly lambda times by pairwise distinct copies.
PackingVerdict verify_design(const RGraph& g, const Packing& p, i64 lambda);

struct SeparationVerdict {
    bool ws1 = true;
    i64 kappa = 0;
    // On a WS1 violation: two copies and an (r+1)-set they share.
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    VertexSet shared;
};

SeparationVerdict well_separation(const Packing& p);

// F placed on every clique of a K_f^(r)-packing under an independent uniform
// random bijection.
Packing k_random_packing(const Packing& cliques, const RGraph& f, std::uint64_t seed);

struct NibbleOptions {
    i64 max_rounds = 0;  // 0 = no limit on committed copies
    std::optional<i64> separation_kappa;
    i64 samples_per_copy_factor = 200;  // budget = factor * n samples per committed copy
};

struct NibbleResult {
    Packing packing;
    RGraph leftover;
    i64 samples = 0;
};

NibbleResult greedy_nibble(const RGraph& g, const RGraph& f, std::uint64_t seed, const NibbleOptions& opts = {});

}  // namespace fdesign
