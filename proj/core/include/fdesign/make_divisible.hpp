#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fdesign/balancer.hpp"
#include "fdesign/regularise.hpp"
#include "fdesign/rooted_embed.hpp"
#include "fdesign/shifter.hpp"

namespace fdesign {

enum class MakeDivisibleMode { Abstract, Embedded };

struct MakeDivisibleOptions {
    MakeDivisibleMode mode = MakeDivisibleMode::Abstract;
    // Abstract mode: also build D explicitly and check everything on it.
    bool materialize = false;
    i64 max_edges = 5'000'000;   // for materialized D
    ShifterOptions shifter;
    // Embedded mode: every family of at most C(f*-1, r-1) (r-1)-sets needs a
    // common neighbourhood of size >= xi * n.
    double xi = 0.0;
    i64 max_families = 2'000'000;  // above this the richness check samples
    int retries = 50;
};

// One element of Omega: a copy of T_level placed with map.role_map[v] the
// ground vertex of template vertex v. Roots of T_k are template vertices
// 0..2k-1 and go to the tuple.
struct ShiftPiece {
    int level = 0;
    AdapterTuple tuple;
    Embedding map;
};

struct Richness {
    i64 min_common = 0;
    i64 families = 0;
    bool sampled = false;
};

Richness codegree_richness(const RGraph& g, int h, i64 max_families, std::uint64_t seed);

struct MakeDivisible {
    MakeDivisibleMode mode = MakeDivisibleMode::Abstract;
    RGraph f;
    FDecomposition fd;
    DivVector b;  // Deg(F*)
    DivVector h;  // Deg(F)
    int host_n = 0;
    int n = 0;    // ground set: the host, then (abstract mode) fresh vertices
    std::vector<std::optional<Shifter>> templates;   // index k in [1, r-1]
    std::vector<std::optional<Balancer>> balancers;  // index k, empty when h_k = b_k
    std::vector<ShiftPiece> pieces;
    std::map<std::pair<int, AdapterTuple>, std::vector<std::size_t>> by_tuple;
    i64 edge_count = 0;  // |D|
    bool materialized = false;
    RGraph d;            // only when materialized
    i64 max_degree = -1; // Delta(D), when D is explicit
    std::optional<Richness> richness;
};

// The host graph is used only for its vertex count in abstract mode.
MakeDivisible make_divisible(const RGraph& g, const RGraph& f, const FDecomposition& fd, std::uint64_t seed,
                             const MakeDivisibleOptions& opts = {});

struct Threshold {
    i64 n = 0;
    bool exact = true;  // false: estimated from leading terms, n is beyond the exact table
};

// Smallest host size for which the embedded-mode threshold holds on a
// complete host.
Threshold embedded_threshold(const RGraph& f, const FDecomposition& fd, const ShifterOptions& sopts = {});

const RGraph& piece_template(const MakeDivisible& md, int level);
RGraph piece_graph(const MakeDivisible& md, std::size_t piece);
std::vector<Embedding> piece_decomposition(const MakeDivisible& md, std::size_t piece);

struct Response {
    std::vector<std::size_t> chosen;  // pieces forming D*
    std::vector<std::size_t> rest;    // pieces forming D - D*
    i64 shift0_copies = 0;
    std::vector<i64> chosen_per_level;
    bool divisible = false;           // H + D* is F*-divisible
    bool decomposition = false;       // D - D* has a 1-well separated F-decomposition
    bool compositional = false;       // verified from template tables instead of explicitly
    std::string detail;
    // Explicit objects, only when D is materialized.
    std::optional<RGraph> d_star;
    std::optional<Packing> rest_decomposition;
};

Response respond(const MakeDivisible& md, const RGraph& h);

}  // namespace fdesign
