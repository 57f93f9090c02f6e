#include <doctest.h>

#include <cmath>

#include "fdesign/catalog.hpp"
#include "fdesign/divisibility.hpp"
#include "fdesign/errors.hpp"
#include "fdesign/hypergraph.hpp"
#include "oracles.hpp"

using namespace fdesign;

namespace {

RGraph tight_cycle(int n) {
    RGraph g(3, n);
    for (int i = 0; i < n; ++i) g.add_edge({i, (i + 1) % n, (i + 2) % n});
    return g;
}

}  // namespace

TEST_CASE("edges are validated and stored sorted") {
    RGraph g(3, 5);
    CHECK(g.insert({4, 0, 2}));
    CHECK(g.contains({0, 2, 4}));
    CHECK_FALSE(g.insert({2, 4, 0}));
    CHECK_THROWS_AS(g.add_edge({0, 2, 4}), InvalidArgument);
    CHECK_THROWS_AS(g.add_edge({0, 1}), InvalidArgument);
    CHECK_THROWS_AS(g.add_edge({0, 1, 5}), InvalidArgument);
    CHECK_THROWS_AS(g.add_edge({0, 1, 1}), InvalidArgument);
    CHECK_THROWS(g.resize(4));
}

TEST_CASE("multigraph multiplicities") {
    MultiRGraph g(2, 4);
    g.add({0, 1}, 2);
    g.add({1, 0});
    g.add({2, 3});
    CHECK(g.multiplicity({0, 1}) == 3);
    CHECK(g.total() == 4);
    CHECK(g.size() == 2);
    CHECK_FALSE(g.is_simple());
    g.add({0, 1}, -2);
    CHECK(g.is_simple());
    CHECK_THROWS(g.add({2, 3}, -2));
}

TEST_CASE("links") {
    RGraph fano = fano_plane();
    for (Vertex v = 0; v < 7; ++v) {
        RGraph l = link(fano, {v});
        CHECK(l.r() == 2);
        CHECK(l.size() == 3);
        std::set<Vertex> covered;
        for (const auto& e : l)
            for (Vertex x : e) covered.insert(x);
        CHECK(covered.size() == 6);
        CHECK(covered.count(v) == 0);
    }
    RGraph k4 = complete_graph(2, 4);
    CHECK(link(k4, {}) == k4);
    RGraph l = link(k4, {2});
    CHECK(l.r() == 1);
    CHECK(l.size() == 3);
    CHECK_THROWS_AS(link(k4, {0, 1, 2}), InvalidArgument);
    CHECK(link_size(k4, {0, 1}) == 1);
}

TEST_CASE("Deg vectors of named patterns") {
    CHECK(div_vector(fano_plane()) == DivVector{7, 3, 1});
    CHECK(div_vector(complete_graph(2, 3)) == DivVector{3, 2});
    CHECK(div_vector(octahedron()) == DivVector{8, 4, 2});
    CHECK_THROWS_AS(div_vector(RGraph(2, 3)), InvalidArgument);
}

TEST_CASE("Deg vector matches brute force on random graphs") {
    Rng rng(5);
    for (int t = 0; t < 60; ++t) {
        const int r = 2 + static_cast<int>(rng.below(2));
        const int n = r + 1 + static_cast<int>(rng.below(5));
        RGraph g = oracle::random_graph(r, n, 0.5, rng);
        if (g.empty()) continue;
        CHECK(div_vector(g) == oracle::deg(g));
    }
}

TEST_CASE("divisibility") {
    RGraph k3 = complete_graph(2, 3);
    CHECK(is_divisible(complete_graph(2, 13), k3).divisible);
    auto v = is_divisible(complete_graph(2, 4), k3);
    CHECK_FALSE(v.divisible);
    REQUIRE(v.witness);
    CHECK(v.witness->size() == 1);
    CHECK(v.count == 3);
    CHECK(is_divisible(RGraph(2, 6), k3).divisible);
    CHECK_THROWS_AS(is_divisible(complete_graph(3, 5), k3), InvalidArgument);
    // lambda = 2 makes every vertex degree even
    CHECK(is_divisible(complete_graph(2, 4), k3, 2).divisible);
    CHECK_FALSE(is_divisible(complete_graph(2, 5), k3, 2).divisible);
    CHECK(is_divisible(complete_graph(2, 9), k3, 3).divisible);

    Rng rng(17);
    for (int t = 0; t < 80; ++t) {
        const int n = 3 + static_cast<int>(rng.below(5));
        MultiRGraph g(2, n);
        for (const auto& e : oracle::subsets(n, 2)) g.add(e, static_cast<i64>(rng.below(3)));
        DivVector b{1 + static_cast<i64>(rng.below(6)), 1 + static_cast<i64>(rng.below(4))};
        CHECK(check_divisibility(g, b).divisible == oracle::divisible(g, b));
    }
}

TEST_CASE("link-divisibility identity for Fano and octahedron") {
    // |F(S)| * C(r - i, j - i) = sum over j-sets T containing S of |F(T)|.
    for (const RGraph& f : {fano_plane(), octahedron()}) {
        const int r = f.r();
        for (int i = 0; i < r; ++i)
            for (int j = i; j < r; ++j)
                for (const auto& s : oracle::subsets(f.n(), i)) {
                    i64 sum = 0;
                    for (const auto& t : oracle::subsets(f.n(), j))
                        if (is_subset(s, t)) sum += link_size(f, t);
                    CHECK(sum == link_size(f, s) * binom(r - i, j - i));
                }
    }
}

TEST_CASE("links of weakly regular patterns inherit the degree vector") {
    for (const RGraph& f : {fano_plane(), octahedron(), complete_graph(3, 5)}) {
        const DivVector d = div_vector(f);
        const int r = f.r();
        for (int i = 1; i < r; ++i)
            for (const auto& s : oracle::subsets(f.n(), i)) {
                RGraph l = link(f, s);
                if (l.size() == 0) continue;
                const DivVector ld = div_vector(l);
                REQUIRE(static_cast<int>(ld.size()) == r - i);
                for (int j = 0; j < r - i; ++j) CHECK(ld[j] == d[i + j]);
            }
    }
}

TEST_CASE("weak regularity") {
    auto w = is_weakly_regular(fano_plane());
    CHECK(w.regular);
    CHECK(w.s == std::vector<i64>{7, 3, 1});
    CHECK_FALSE(is_weakly_regular(tight_cycle(5)).regular == true);
    CHECK(is_weakly_regular(complete_graph(3, 6)).regular);
    auto p = is_weakly_regular(path_graph(2));
    CHECK_FALSE(p.regular);
    REQUIRE(p.witness);
    CHECK(p.witness->first_degree != p.witness->second_degree);
    CHECK(p.witness->first_degree != 0);
    CHECK(p.witness->second_degree != 0);
}

TEST_CASE("shadows") {
    auto s = shadow(fano_plane());
    CHECK(s.graph == complete_graph(2, 7));
    REQUIRE(s.s);
    CHECK(*s.s == std::vector<i64>{21, 6});
    auto e = shadow(single_edge(3));
    CHECK(e.graph.size() == 3);
    auto o = shadow(octahedron());
    CHECK(o.graph.size() == 12);
    REQUIRE(o.s);
    CHECK(*o.s == std::vector<i64>{12, 4});
    CHECK_THROWS_AS(shadow(single_edge(1)), InvalidArgument);
}

TEST_CASE("divisible orders") {
    CHECK(find_divisible_order(complete_graph(2, 3), 1) == 13);
    CHECK(is_divisible(complete_graph(2, 13), complete_graph(2, 3)).divisible);
    CHECK(find_divisible_order(single_edge(2), 3) == 2 * 3 + 1);
    CHECK(find_divisible_order(single_edge(3), 2) == 6 * 2 + 2);
    CHECK(find_divisible_order(fano_plane(), 1) == 128);
    CHECK(complete_graph_divisible(3, 128, {7, 3, 1}));
    for (int a = 1; a <= 3; ++a) CHECK(complete_graph_divisible(2, 12 * a + 1, {3, 2}));
    for (i64 n = 3; n < 40; ++n) {
        bool brute = (n * (n - 1) / 2) % 3 == 0 && (n - 1) % 2 == 0;
        CHECK(complete_graph_divisible(2, n, {3, 2}) == brute);
    }
}

TEST_CASE("extremal degrees") {
    CHECK(max_degree(complete_graph(2, 7)) == 6);
    CHECK(min_degree(complete_graph(2, 7)) == 6);
    CHECK(max_degree(fano_plane()) == 1);
    CHECK(min_degree(fano_plane()) == 1);
    CHECK(max_degree(RGraph(2, 5)) == 0);
    CHECK(min_degree(path_graph(2)) == 1);
}

TEST_CASE("typicality") {
    for (int n : {5, 8, 11}) {
        auto t = typicality(complete_graph(2, n), 2, 1.0);
        CHECK(t.c == doctest::Approx(2.0 / n));
        CHECK(t.typical);
        CHECK(t.mode == TypicalityMode::Exhaustive);
    }
    auto e = typicality(RGraph(2, 6), 2, 0.5);
    CHECK_FALSE(e.typical);
    CHECK(e.c == doctest::Approx(1.0));
    CHECK_THROWS_AS(typicality(complete_graph(2, 5), 2, 0.0), InvalidArgument);

    // Brute force over families of one or two vertices in a random graph.
    Rng rng(3);
    RGraph g = oracle::random_graph(2, 9, 0.6, rng);
    double worst = 0;
    for (int a = 0; a < 9; ++a)
        for (int b = a; b < 9; ++b) {
            int common = 0;
            for (int v = 0; v < 9; ++v)
                if (v != a && v != b && g.contains(make_set({a, v})) && (a == b || g.contains(make_set({b, v})))) ++common;
            const double expect = (a == b ? 0.6 : 0.36) * 9;
            worst = std::max(worst, std::abs(common - expect) / expect);
        }
    CHECK(typicality(g, 2, 0.6).c == doctest::Approx(worst));

    // G(200, 1/2) with h = 2: the worst pair of vertices deviates by roughly
    // 0.4 to 0.6 in relative terms, far above 0.2.
    Rng big_rng(0);
    auto big = typicality(oracle::random_graph(2, 200, 0.5, big_rng), 2, 0.5);
    CHECK(big.typical);
    CHECK(big.c > 0.2);
    CHECK(big.c < 0.8);

    auto s = typicality(g, 2, 0.6, TypicalityMode::Sampled, 500, 1);
    CHECK(s.mode == TypicalityMode::Sampled);
    CHECK(s.evaluated == 500);
    CHECK(s.c <= worst + 1e-12);
}
