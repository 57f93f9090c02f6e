#include <doctest.h>

#include "fdesign/catalog.hpp"
#include "fdesign/divisibility.hpp"
#include "fdesign/errors.hpp"
#include "fdesign/regularise.hpp"
#include "oracles.hpp"

using namespace fdesign;

namespace {

void check_regularisation(const RGraph& f) {
    Regularisation reg = regularise(f);
    const int r = f.r();
    const int fv = f.n();
    CHECK(reg.q == regularisation_order(fv));
    CHECK(reg.fstar.n() == reg.q * fv);
    CHECK(reg.fstar.n() <= 2 * fv * factorial(fv));
    auto w = is_weakly_regular(reg.fstar);
    REQUIRE(w.regular);
    CHECK(w.s == reg.s);
    CHECK(reg.s.back() == static_cast<i64>(f.size()) * factorial(r) * factorial(fv - r + 1));
    CHECK(reg.s == regularisation_s_vector(f, reg.q));
    CHECK(oracle::is_decomposition(reg.fstar, reg.decomposition));
    CHECK(verify_packing(reg.fstar, reg.decomposition).kind == PackingVerdictKind::Decomposition);
    auto sep = well_separation(reg.decomposition);
    CHECK(sep.ws1);
    CHECK(sep.kappa == 1);
    CHECK(oracle::max_overlap(reg.decomposition) < r);
    // Each copy of F* is the image of a copy of F.
    CHECK(reg.fstar.size() == f.size() * reg.decomposition.copies.size());
}

}  // namespace

TEST_CASE("regularisation orders") {
    CHECK(regularisation_order(3) == 7);
    CHECK(regularisation_order(4) == 25);
    CHECK(regularisation_order(5) == 121);
}

TEST_CASE("regularisation of the triangle") {
    Regularisation reg = regularise(complete_graph(2, 3));
    CHECK(reg.q == 7);
    CHECK(reg.fstar.n() == 21);
    CHECK(reg.s == std::vector<i64>{126, 12});
    CHECK(reg.decomposition.copies.size() == 42);
    check_regularisation(complete_graph(2, 3));
}

TEST_CASE("regularisation of the two-edge path") {
    Regularisation reg = regularise(path_graph(2));
    CHECK(reg.q == 7);
    CHECK(reg.s == std::vector<i64>{84, 8});
    check_regularisation(path_graph(2));
}

TEST_CASE("regularisation of four-vertex graphs") {
    check_regularisation(cycle_graph(4));
    check_regularisation(complete_graph(2, 4));
}

TEST_CASE("regularisation preconditions") {
    CHECK_THROWS_AS(regularise(single_edge(2)), InvalidArgument);
    CHECK_THROWS_AS(regularise(complete_graph(3, 3)), InvalidArgument);
    RegulariseOptions tiny;
    tiny.max_edges = 10;
    try {
        regularise(complete_graph(2, 3), tiny);
        FAIL("expected a resource error");
    } catch (const ResourceLimit& e) {
        CHECK(e.required() == doctest::Approx(126));
    }
}
