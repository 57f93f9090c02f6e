#include <doctest.h>

#include <string>

#include "fdesign/catalog.hpp"
#include "fdesign/divisibility.hpp"
#include "fdesign/errors.hpp"
#include "fdesign/make_divisible.hpp"
#include "fdesign/regularise.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace fdesign;

namespace {

const FDecomposition& k3_fd() {
    static const FDecomposition fd = to_fdecomposition(regularise(complete_graph(2, 3)));
    return fd;
}

// K_3 split into its three edges: F = an edge, F* = K_3.
FDecomposition edge_in_triangle() {
    Packing p{single_edge(2), 3, {Embedding{{0, 1}}, Embedding{{0, 2}}, Embedding{{1, 2}}}};
    return FDecomposition{complete_graph(2, 3), p};
}

// H + D* from the explicit pieces, without the library's response bookkeeping.
RGraph h_plus_dstar(const MakeDivisible& md, const RGraph& h, const Response& res) {
    RGraph out(h.r(), md.n);
    for (const auto& e : h) out.add_edge(e);
    for (std::size_t i : res.chosen)
        for (const auto& e : piece_graph(md, i)) out.add_edge(e);
    return out;
}

}  // namespace

TEST_CASE("abstract triangle divisibility fixing") {
    RGraph k3 = complete_graph(2, 3);
    RGraph two_triangles(2, 6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
    MakeDivisible md = make_divisible(complete_graph(2, 6), k3, k3_fd(), 0);
    CHECK(md.b == DivVector{126, 12});
    CHECK(md.h == DivVector{3, 2});
    CHECK_FALSE(md.materialized);
    Response res = respond(md, two_triangles);
    CHECK(res.divisible);
    CHECK(res.decomposition);
    CHECK(res.compositional);
    // 6 edges is 2 copies of F; 42 copies are needed to reach 126.
    CHECK(res.shift0_copies == 40);
    CHECK(res.chosen.size() + res.rest.size() == md.pieces.size());
    CHECK(instances::dstar_divisible_r2(md, two_triangles, res.chosen));
    CHECK_FALSE(instances::dstar_divisible_r2(md, two_triangles, {}));

    CHECK_THROWS_AS(respond(md, RGraph(2, 6, {{0, 1}})), InvalidArgument);
    CHECK_THROWS_AS(respond(md, RGraph(2, 9, {{6, 7}, {6, 8}, {7, 8}})), InvalidArgument);
}

TEST_CASE("an already divisible H needs no shift") {
    RGraph k3 = complete_graph(2, 3);
    // Every vertex of the regularised K_3 host has degree 12; it has 126 edges.
    const Regularisation& reg = regularise(k3);
    MakeDivisible md = make_divisible(reg.fstar, k3, k3_fd(), 0);
    Response res = respond(md, reg.fstar);
    CHECK(res.divisible);
    CHECK(res.shift0_copies == 0);
    for (i64 c : res.chosen_per_level) CHECK(c == 0);
    CHECK(res.chosen.empty());
}

TEST_CASE("materialized and compositional responses agree") {
    FDecomposition fd = edge_in_triangle();
    RGraph edge = single_edge(2);
    Rng rng(31);
    for (int t = 0; t < 25; ++t) {
        const int n = 4 + static_cast<int>(rng.below(5));
        RGraph h = oracle::random_graph(2, n, 0.4, rng);
        const std::uint64_t seed = rng.below(1000);
        MakeDivisible abstract = make_divisible(complete_graph(2, n), edge, fd, seed);
        MakeDivisibleOptions mat;
        mat.materialize = true;
        MakeDivisible explicit_md = make_divisible(complete_graph(2, n), edge, fd, seed, mat);
        REQUIRE(explicit_md.materialized);
        CHECK(explicit_md.edge_count == static_cast<i64>(explicit_md.d.size()));

        Response a = respond(abstract, h);
        Response e = respond(explicit_md, h);
        CHECK(a.compositional);
        CHECK_FALSE(e.compositional);
        CHECK(a.chosen == e.chosen);
        CHECK(a.divisible == e.divisible);
        CHECK(a.decomposition == e.decomposition);
        CHECK(e.divisible);
        CHECK(e.decomposition);
        REQUIRE(e.d_star);
        RGraph hd = h_plus_dstar(explicit_md, h, e);
        CHECK(oracle::divisible(MultiRGraph(hd), explicit_md.b));
        CHECK(instances::dstar_divisible_r2(abstract, h, a.chosen));
        REQUIRE(e.rest_decomposition);
        CHECK(well_separation(*e.rest_decomposition).kappa <= 1);
    }
}

TEST_CASE("random triangle-divisible graphs") {
    RGraph k3 = complete_graph(2, 3);
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        const int n = 3 + static_cast<int>(rng.below(6));
        RGraph h = instances::random_k3_divisible(n, rng);
        MakeDivisible md = make_divisible(complete_graph(2, n), k3, k3_fd(), t);
        Response res = respond(md, h);
        CHECK(res.divisible);
        CHECK(res.decomposition);
        CHECK(instances::dstar_divisible_r2(md, h, res.chosen));
    }
}

TEST_CASE("embedded mode") {
    FDecomposition fd = edge_in_triangle();
    RGraph edge = single_edge(2);
    Threshold need = embedded_threshold(edge, fd);
    CHECK(need.exact);
    CHECK(need.n == 721);

    MakeDivisibleOptions emb;
    emb.mode = MakeDivisibleMode::Embedded;
    try {
        make_divisible(complete_graph(2, 720), edge, fd, 0, emb);
        FAIL("expected a resource error");
    } catch (const ResourceLimit& e) {
        CHECK(e.required() == 721);
        CHECK(std::string(e.what()).find("721") != std::string::npos);
    }

    MakeDivisible md = make_divisible(complete_graph(2, 721), edge, fd, 0, emb);
    CHECK(md.materialized);
    CHECK(md.max_degree > 0);
    RGraph h(2, 721, {{0, 1}, {1, 2}, {3, 4}});
    Response res = respond(md, h);
    CHECK(res.divisible);
    CHECK(res.decomposition);
    CHECK(oracle::divisible(MultiRGraph(h_plus_dstar(md, h, res)), md.b));

    Threshold k3_need = embedded_threshold(complete_graph(2, 3), k3_fd());
    CHECK_FALSE(k3_need.exact);
    CHECK(k3_need.n > 200'000);
    try {
        make_divisible(complete_graph(2, 10), complete_graph(2, 3), k3_fd(), 0, emb);
        FAIL("expected a resource error");
    } catch (const ResourceLimit& e) {
        CHECK(std::string(e.what()).find("about") != std::string::npos);
    }
}

TEST_CASE("codegree richness") {
    auto rich = codegree_richness(complete_graph(2, 10), 2, 1000, 0);
    CHECK(rich.min_common == 8);
    CHECK(rich.families == 55);
    CHECK_FALSE(rich.sampled);
    auto sampled = codegree_richness(complete_graph(2, 10), 2, 20, 0);
    CHECK(sampled.sampled);
    CHECK(sampled.min_common >= 8);
    RGraph star(2, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(codegree_richness(star, 2, 1000, 0).min_common == 0);
}
