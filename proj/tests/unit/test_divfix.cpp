#include <doctest.h>

#include "fdesign/catalog.hpp"
#include "fdesign/divisibility.hpp"
#include "fdesign/errors.hpp"
#include "fdesign/extension.hpp"
#include "fdesign/set_function.hpp"
#include "oracles.hpp"

using namespace fdesign;

TEST_CASE("indicator functions and their extensions") {
    SetFunction tri = indicator(complete_graph(2, 3));
    for (Vertex v = 0; v < 3; ++v) CHECK(tri({v}) == 2);
    CHECK(tri({}) == 3);
    CHECK(indicator(fano_plane())({}) == 7);

    RGraph a(2, 5, {{0, 1}, {1, 2}});
    RGraph b(2, 5, {{2, 3}, {3, 4}, {0, 4}});
    CHECK(indicator(a) + indicator(b) == indicator(union_of(a, b)));

    Rng rng(8);
    for (int t = 0; t < 40; ++t) {
        const int r = 2 + static_cast<int>(rng.below(2));
        const int n = r + 2 + static_cast<int>(rng.below(3));
        SetFunction phi(r, n);
        for (const auto& e : oracle::subsets(n, r))
            if (rng.bernoulli(0.4)) phi.set(e, static_cast<i64>(rng.below(11)) - 5);
        for (int i = 0; i <= r; ++i)
            for (const auto& s : oracle::subsets(n, i)) REQUIRE(phi(s) == oracle::extend(phi, s));
        DivVector bv;
        for (int i = 0; i < r; ++i) bv.push_back(1 + static_cast<i64>(rng.below(3)));
        CHECK(phi.is_divisible(bv) == oracle::set_function_divisible(phi, bv));
    }
}

TEST_CASE("set function arithmetic") {
    SetFunction f(2, 4);
    f.set({0, 1}, 3);
    f.add({1, 0}, -3);
    CHECK(f.is_zero());
    f.set({2, 3}, 2);
    CHECK((f * 3)({2}) == 6);
    CHECK_THROWS_AS(f.set({0, 1, 2}, 1), InvalidArgument);
    CHECK_THROWS_AS(f({0, 1, 2}), InvalidArgument);
    auto viol = f.divisibility_violation({4});
    REQUIRE(viol);
    CHECK(viol->set.empty());
    CHECK(viol->value == 2);
}

TEST_CASE("nabla") {
    MultiRGraph single(2, 3);
    single.add({1, 2});
    RGraph k3 = complete_graph(2, 3);
    auto res = nabla(single, k3, {0, 1});
    CHECK(res.core == RGraph(2, 4, {{1, 3}, {2, 3}}));
    CHECK(res.tilde == MultiRGraph(RGraph(2, 4, {{1, 2}, {1, 3}, {2, 3}})));
    CHECK(res.fresh.size() == 1);
    CHECK(verify_packing(res.tilde.support(), res.decomposition).kind == PackingVerdictKind::Decomposition);
    CHECK_THROWS_AS(nabla(single, path_graph(2), {0, 2}), InvalidArgument);

    Rng rng(12);
    int both = 0;
    for (int t = 0; t < 120; ++t) {
        const int n = 4 + static_cast<int>(rng.below(4));
        MultiRGraph h(2, n);
        for (const auto& e : oracle::subsets(n, 2))
            if (rng.bernoulli(0.5)) h.add(e, 1 + static_cast<i64>(rng.below(2)));
        for (const RGraph& f : {k3, path_graph(2), cycle_graph(4)}) {
            auto nab = nabla(h, f, *f.begin());
            CHECK(static_cast<i64>(nab.core.size()) == h.total() * static_cast<i64>(f.size() - 1));
            CHECK(covered(nab.decomposition) == nab.tilde);
            const bool hd = is_divisible(h, f).divisible;
            CHECK(is_divisible(nab.core, f).divisible == hd);
            both += hd ? 1 : 0;
        }
    }
    CHECK(both > 0);
}

TEST_CASE("symmetric extenders and the admissible set") {
    CHECK(symmetric_extender_check(complete_graph(3, 6), {0, 1, 2}));
    RGraph fano = fano_plane();
    CHECK_FALSE(symmetric_extender_check(fano, *fano.begin()));
    CHECK(symmetric_extender_check(single_edge(3), {0, 1, 2}));
    VertexSet non_line;
    for_each_subset(make_set({0, 1, 2, 3, 4, 5, 6}), 3, [&](const VertexSet& s) {
        if (non_line.empty() && !fano.contains(s)) non_line = s;
    });
    CHECK_THROWS_AS(symmetric_extender_check(fano, non_line), InvalidArgument);

    CHECK(in_admissible_set(2, 3, 2));
    CHECK_FALSE(in_admissible_set(2, 3, 1));
    for (int k = 1; k < 8; ++k)
        for (int m = 0; m < 8; ++m) CHECK(in_admissible_set(2, k, m) == ((m * k) % 2 == 0));
}

TEST_CASE("canonical multigraphs") {
    RGraph k3 = complete_graph(2, 3);
    MultiRGraph m = canonical_multigraph(k3, {0, 1}, 3, 2);
    CHECK(m.n() == 4);
    CHECK(m.total() == 6);
    for (int j = 0; j < 3; ++j) CHECK(m.multiplicity({j, 3}) == 2);
    CHECK(m.multiplicity({0, 1}) == 0);
    CHECK_THROWS_AS(canonical_multigraph(k3, {0, 1}, 3, 1), InvalidArgument);

    // r = 3: mixed edges get m/(r-a) C(k-a, r-1-a).
    MultiRGraph m3 = canonical_multigraph(complete_graph(3, 5), {0, 1, 2}, 4, 6);
    CHECK(m3.multiplicity({0, 1, 4}) == 6 / 1 * binom(2, 0));
    CHECK(m3.multiplicity({0, 4, 5}) == 6 / 2 * binom(3, 1));
    CHECK(m3.multiplicity({0, 1, 2}) == 0);
    CHECK(m3.n() == 6);
}

TEST_CASE("strong colourings") {
    // A bipartite graph coloured by its sides.
    RGraph h(2, 6);
    for (int a = 0; a < 3; ++a)
        for (int b = 3; b < 6; ++b) h.add_edge({a, b});
    std::vector<int> sides{0, 0, 0, 1, 1, 1};
    auto v = verify_strong_colouring(h, sides, 2);
    CHECK(v.strong);
    CHECK(v.regular);
    CHECK(v.m == 9);
    CHECK(v.lower_counts_ok);

    std::vector<int> bad{0, 0, 0, 1, 1, 0};
    auto w = verify_strong_colouring(h, bad, 2);
    CHECK_FALSE(w.strong);
    REQUIRE(w.bad_edge);

    for (const RGraph& g : {RGraph(2, 0), complete_graph(2, 7), complete_graph(2, 9)}) {
        if (!is_divisible(g, complete_graph(2, 3)).divisible) continue;
        auto sc = find_strong_colouring_r2(g, complete_graph(2, 3));
        CHECK(sc.t >= 0);
        auto vv = verify_strong_colouring(sc.graph, sc.colour, sc.k);
        CHECK(vv.strong);
        CHECK(vv.regular);
        CHECK(vv.m == sc.m);
        CHECK(vv.lower_counts_ok);
        CHECK(sc.graph.size() == g.size() + 3 * static_cast<std::size_t>(sc.t));
    }
    CHECK_THROWS_AS(find_strong_colouring_r2(complete_graph(2, 4), complete_graph(2, 3)), InvalidArgument);
    CHECK_THROWS_AS(find_strong_colouring_r2(complete_graph(3, 5), complete_graph(3, 4)), Unsupported);
}

TEST_CASE("identifications") {
    MultiRGraph h(2, 4);
    h.add({0, 1});
    h.add({2, 3});
    CHECK(verify_identification(h, h, {0, 1, 2, 3}).ok);
    auto merged = verify_identification(h, h, {0, 0, 2, 3});
    CHECK_FALSE(merged.ok);
    CHECK_FALSE(merged.i1);

    // Three disjoint edges with a strong 2-regular 3-colouring; the nabla
    // construction identifies onto the canonical multigraph M_{3,2}.
    RGraph three(2, 6, {{0, 1}, {2, 3}, {4, 5}});
    std::vector<int> colour{0, 1, 1, 2, 2, 0};
    auto cv = verify_strong_colouring(three, colour, 3);
    REQUIRE(cv.strong);
    REQUIRE(cv.regular);
    CHECK(cv.m == 2);
    RGraph k3 = complete_graph(2, 3);
    auto nab = nabla(MultiRGraph(three), k3, {0, 1});
    auto part = nabla_identification_partition(nab, 6, colour, 3, k3, {0, 1});
    MultiRGraph target = canonical_multigraph(k3, {0, 1}, 3, 2);
    auto iv = verify_identification(MultiRGraph(nab.core), target, part);
    CHECK(iv.ok);

    auto wrong = part;
    wrong[0] = 1;
    CHECK_FALSE(verify_identification(MultiRGraph(nab.core), target, wrong).ok);
}
