#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fdesign/catalog.hpp"
#include "fdesign/errors.hpp"
#include "fdesign/packing.hpp"
#include "fdesign/regularise.hpp"
#include "fdesign/rooted_embed.hpp"
#include "oracles.hpp"

using namespace fdesign;

namespace {

Packing sts7() {
    Packing p{complete_graph(2, 3), 7, {}};
    for (const auto& line : fano_plane()) p.copies.push_back(Embedding{line});
    return p;
}

// A relabelling of the Fano plane sharing no line with the original.
Packing disjoint_sts7() {
    RGraph fano = fano_plane();
    std::vector<Vertex> perm(7);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        Packing p{complete_graph(2, 3), 7, {}};
        for (const auto& line : fano) {
            VertexSet img = make_set({perm[line[0]], perm[line[1]], perm[line[2]]});
            ok = ok && !fano.contains(img);
            p.copies.push_back(Embedding{img});
        }
        if (ok) return p;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {};
}

}  // namespace

TEST_CASE("packing verdicts") {
    RGraph k7 = complete_graph(2, 7);
    auto v = verify_packing(k7, sts7());
    CHECK(v.kind == PackingVerdictKind::Decomposition);
    CHECK(oracle::is_decomposition(k7, sts7()));

    Regularisation reg = regularise(complete_graph(2, 3));
    CHECK(verify_packing(reg.fstar, reg.decomposition).kind == PackingVerdictKind::Decomposition);

    CHECK(verify_packing(RGraph(2, 4), Packing{complete_graph(2, 3), 4, {}}).kind == PackingVerdictKind::Decomposition);

    Packing partial = sts7();
    partial.copies.pop_back();
    CHECK(verify_packing(k7, partial).kind == PackingVerdictKind::ValidPacking);

    Packing overlap = sts7();
    overlap.copies.push_back(Embedding{{0, 1, 3}});
    auto o = verify_packing(k7, overlap);
    CHECK(o.kind == PackingVerdictKind::Violation);
    REQUIRE(o.copy);
    CHECK(*o.copy == 7);
    CHECK(o.edge.has_value());

    RGraph missing = k7;
    missing.erase({0, 1});
    auto m = verify_packing(missing, sts7());
    CHECK(m.kind == PackingVerdictKind::Violation);
    CHECK(m.edge == VertexSet{0, 1});

    Packing noninjective = sts7();
    noninjective.copies[0].role_map = {0, 0, 1};
    CHECK_FALSE(verify_packing(k7, noninjective).ok());

    Packing wrong_r{complete_graph(3, 4), 7, {}};
    CHECK_THROWS_AS(verify_packing(k7, wrong_r), InvalidArgument);
}

TEST_CASE("design verdicts") {
    RGraph k7 = complete_graph(2, 7);
    CHECK(verify_design(k7, sts7(), 1).kind == PackingVerdictKind::Decomposition);
    Packing dup = sts7();
    dup.copies.push_back(dup.copies[0]);
    CHECK(verify_design(k7, dup, 1).kind == PackingVerdictKind::Violation);

    Packing second = disjoint_sts7();
    REQUIRE(second.copies.size() == 7);
    Packing both = sts7();
    both.copies.insert(both.copies.end(), second.copies.begin(), second.copies.end());
    CHECK(verify_design(k7, both, 2).ok());
    for (const auto& [e, c] : oracle::coverage(both)) CHECK(c == 2);
    CHECK_FALSE(verify_design(k7, both, 1).ok());
    CHECK_FALSE(verify_design(k7, sts7(), 2).ok());

    // The same triangle twice with different role maps is still one subgraph.
    Packing relabelled = sts7();
    Packing twice = sts7();
    for (auto c : relabelled.copies) {
        std::swap(c.role_map[0], c.role_map[1]);
        twice.copies.push_back(c);
    }
    CHECK_FALSE(verify_design(k7, twice, 2).ok());
}

TEST_CASE("well separation") {
    auto s = well_separation(sts7());
    CHECK(s.ws1);
    CHECK(s.kappa == 1);

    Packing two{path_graph(2), 4, {Embedding{{0, 1, 2}}, Embedding{{0, 3, 1}}}};
    auto t = well_separation(two);
    CHECK(t.ws1);
    CHECK(t.kappa == 2);

    Packing clash{path_graph(2), 4, {Embedding{{0, 1, 2}}, Embedding{{2, 0, 1}}}};
    auto c = well_separation(clash);
    CHECK_FALSE(c.ws1);
    REQUIRE(c.pair);
    CHECK(c.shared == VertexSet{0, 1, 2});

    Packing k4s{complete_graph(2, 4), 10, {Embedding{{0, 1, 2, 3}}, Embedding{{0, 4, 5, 6}}, Embedding{{1, 4, 7, 8}}}};
    CHECK(well_separation(k4s).kappa == 1);
}

TEST_CASE("K-random packings") {
    Packing cliques = sts7();
    RGraph p3 = path_graph(2);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Packing p = k_random_packing(cliques, p3, seed);
        CHECK(covered(p).total() == 14);
        CHECK(verify_packing(complete_graph(2, 7), p).ok());
        auto sep = well_separation(p);
        CHECK(sep.ws1);
        CHECK(sep.kappa == 1);
    }
    CHECK(k_random_packing(cliques, p3, 4).copies == k_random_packing(cliques, p3, 4).copies);
    Packing full = k_random_packing(cliques, complete_graph(2, 3), 1);
    CHECK(verify_packing(complete_graph(2, 7), full).kind == PackingVerdictKind::Decomposition);
    CHECK_THROWS_AS(k_random_packing(cliques, path_graph(3), 0), InvalidArgument);
    Packing not_complete{p3, 7, cliques.copies};
    CHECK_THROWS_AS(k_random_packing(not_complete, p3, 0), InvalidArgument);
}

TEST_CASE("greedy nibble") {
    RGraph k15 = complete_graph(2, 15);
    RGraph k3 = complete_graph(2, 3);
    auto res = greedy_nibble(k15, k3, 1);
    CHECK(verify_packing(k15, res.packing).ok());
    RGraph expect = k15;
    const MultiRGraph cov = covered(res.packing);
    for (const auto& [e, m] : cov.edges()) expect.erase(e);
    CHECK(res.leftover == expect);
    CHECK(res.leftover.size() == k15.size() - 3 * res.packing.copies.size());

    RGraph bipartite(2, 6);
    for (int a = 0; a < 3; ++a)
        for (int b = 3; b < 6; ++b) bipartite.add_edge({a, b});
    auto none = greedy_nibble(bipartite, k3, 2);
    CHECK(none.packing.copies.empty());
    CHECK(none.leftover == bipartite);

    CHECK(greedy_nibble(k15, k3, 9).packing.copies == greedy_nibble(k15, k3, 9).packing.copies);

    NibbleOptions capped;
    capped.max_rounds = 5;
    CHECK(greedy_nibble(k15, k3, 1, capped).packing.copies.size() == 5);

    NibbleOptions sep;
    sep.separation_kappa = 1;
    RGraph k9_3 = complete_graph(3, 9);
    auto s = greedy_nibble(k9_3, complete_graph(3, 4), 3, sep);
    CHECK(verify_packing(k9_3, s.packing).ok());
    CHECK(well_separation(s.packing).kappa <= 1);
}

TEST_CASE("rooted embedding") {
    RGraph host = complete_graph(2, 10);
    RGraph cherry(2, 3, {{0, 2}, {1, 2}});
    std::set<Vertex> thirds;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        RootedPiece piece{cherry, {0, 1}, {3, 7}, {}};
        auto res = rooted_embed(host, {piece}, seed);
        REQUIRE(res.embeddings.size() == 1);
        const auto& m = res.embeddings[0].role_map;
        CHECK(m[0] == 3);
        CHECK(m[1] == 7);
        thirds.insert(m[2]);
        CHECK(verify_rooted_embedding(host, {piece}, res.embeddings).ok);
    }
    CHECK(thirds.size() == 8);
    CHECK(thirds.count(3) == 0);
    CHECK(thirds.count(7) == 0);

    CHECK(rooted_embed(host, {}, 0).embeddings.empty());

    RootedPiece big{complete_graph(2, 4), {}, {}, {}};
    CHECK_THROWS_AS(rooted_embed(complete_graph(2, 3), {big}, 0), EmbeddingFailure);

    RootedPiece bad{complete_graph(2, 3), {0, 1}, {0, 1}, {}};
    CHECK_THROWS_AS(rooted_embed(host, {bad}, 0), InvalidArgument);

    // Several pieces: hulls must be pairwise edge-disjoint.
    std::vector<RootedPiece> pieces;
    for (int i = 0; i < 4; ++i) pieces.push_back(RootedPiece{cherry, {0, 1}, {i, i + 5}, {}});
    RGraph k20 = complete_graph(2, 20);
    auto res = rooted_embed(k20, pieces, 5);
    CHECK(verify_rooted_embedding(k20, pieces, res.embeddings).ok);
    auto tampered = res.embeddings;
    tampered[1].role_map[2] = tampered[0].role_map[2];
    tampered[1].role_map[0] = tampered[0].role_map[0];
    CHECK_FALSE(verify_rooted_embedding(k20, pieces, tampered).ok);
}

TEST_CASE("rooted degeneracy and hulls") {
    RGraph cherry(2, 3, {{0, 2}, {1, 2}});
    CHECK(rooted_degeneracy(cherry, {0, 1}, {2}) == 2);
    auto h = hull(cherry, {0, 1});
    // {0,2}, {1,2}: pairs meeting X in a rooted singleton or avoiding X.
    CHECK(std::find(h.begin(), h.end(), VertexSet{0, 1}) == h.end());
    CHECK(std::find(h.begin(), h.end(), VertexSet{0, 2}) != h.end());
    CHECK(rooted_sets(cherry, {0, 1}).size() == 2);
}
