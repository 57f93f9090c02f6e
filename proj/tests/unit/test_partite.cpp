#include <doctest.h>

#include <map>

#include "fdesign/errors.hpp"
#include "fdesign/partite.hpp"
#include "oracles.hpp"

using namespace fdesign;

namespace {

// Coverage of crossing j-sets by the cliques of one list.
std::map<VertexSet, int> crossing_coverage(const std::vector<VertexSet>& cliques, int j) {
    std::map<VertexSet, int> c;
    for (const auto& q : cliques) for_each_subset(q, j, [&](const VertexSet& s) { ++c[s]; });
    return c;
}

i64 power(int q, int j) {
    i64 c = 1;
    for (int i = 0; i < j; ++i) c *= q;
    return c;
}

i64 crossing_count(int q, int f, int j) { return binom(f, j) * power(q, j); }

void independent_check(const ResolvableDecomposition& d) {
    std::vector<VertexSet> all;
    for (const auto& cls : d.classes) {
        CHECK(static_cast<i64>(cls.size()) == power(d.q, d.r - 1));
        for (const auto& q : cls) {
            REQUIRE(static_cast<int>(q.size()) == d.f);
            CHECK(is_crossing(q, d.q));
        }
        auto c = crossing_coverage(cls, d.r - 1);
        CHECK(static_cast<i64>(c.size()) == crossing_count(d.q, d.f, d.r - 1));
        for (const auto& [s, m] : c) CHECK(m == 1);
        all.insert(all.end(), cls.begin(), cls.end());
    }
    CHECK(static_cast<i64>(all.size()) == power(d.q, d.r));
    auto c = crossing_coverage(all, d.r);
    CHECK(static_cast<i64>(c.size()) == crossing_count(d.q, d.f, d.r));
    for (const auto& [s, m] : c) CHECK(m == 1);
}

}  // namespace

TEST_CASE("crossing sets") {
    CHECK(is_crossing({0, 4, 9}, 4));
    CHECK_FALSE(is_crossing({0, 3}, 4));
    CHECK(partite_vertex(5, 2, 3) == 13);
    CHECK(partite_part(5, 13) == 2);
    CHECK(partite_elem(5, 13) == 3);
}

TEST_CASE("resolvable decompositions pass an independent coverage count") {
    for (auto [q, f, r] : std::vector<std::tuple<int, int, int>>{
             {4, 2, 1}, {5, 2, 1}, {8, 4, 2}, {7, 3, 2}, {9, 4, 3}, {13, 4, 3}, {7, 3, 1}, {11, 4, 2}}) {
        CAPTURE(q);
        CAPTURE(f);
        CAPTURE(r);
        auto d = resolvable_decomposition(q, f, r);
        CHECK(verify_resolvable(d).ok);
        independent_check(d);
    }
}

TEST_CASE("the (8,4,2) example has the documented shape") {
    auto d = resolvable_decomposition(8, 4, 2);
    CHECK(d.classes.size() == 8);
    for (const auto& cls : d.classes) {
        CHECK(cls.size() == 8);
        std::set<Vertex> cover;
        for (const auto& q : cls) cover.insert(q.begin(), q.end());
        CHECK(cover.size() == 32);
    }
    auto c = crossing_coverage([&] {
        std::vector<VertexSet> all;
        for (const auto& cls : d.classes) all.insert(all.end(), cls.begin(), cls.end());
        return all;
    }(), 2);
    CHECK(c.size() == 384);
}

TEST_CASE("the solver finds the clique through every crossing r-set") {
    CauchyScheme s(7, 3, 2);
    auto d = s.enumerate();
    for (std::size_t cls = 0; cls < d.classes.size(); ++cls)
        for (const auto& q : d.classes[cls]) {
            CHECK(s.in_null_space(q));
            CHECK(s.class_of(q) == static_cast<int>(cls));
            for_each_subset(q, 2, [&](const VertexSet& e) { CHECK(s.clique_through(e) == q); });
        }
    CHECK(s.matrix().rows() == 2);
    CHECK(s.matrix().cols() == 3);
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(resolvable_decomposition(5, 3, 2), InvalidArgument);
    CHECK_THROWS_AS(resolvable_decomposition(6, 2, 1), InvalidArgument);
    CHECK_THROWS_AS(resolvable_decomposition(7, 3, 3), InvalidArgument);
    CHECK_THROWS_AS(resolvable_decomposition(7, 3, 0), InvalidArgument);
}

TEST_CASE("tampered decompositions are rejected") {
    auto d = resolvable_decomposition(7, 3, 2);
    auto missing = d;
    missing.classes[2].pop_back();
    auto v = verify_resolvable(missing);
    CHECK_FALSE(v.ok);
    CHECK(v.witness.size() >= 1);

    auto merged = d;
    for (std::size_t i = 1; i < merged.classes.size(); ++i)
        merged.classes[0].insert(merged.classes[0].end(), merged.classes[i].begin(), merged.classes[i].end());
    merged.classes.resize(1);
    CHECK_FALSE(verify_resolvable(merged).ok);

    auto noncrossing = d;
    noncrossing.classes[0][0] = {0, 1, 14};
    CHECK_FALSE(verify_resolvable(noncrossing).ok);
}
