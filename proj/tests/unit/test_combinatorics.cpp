#include <doctest.h>

#include <numeric>

#include "fdesign/combinatorics.hpp"
#include "fdesign/errors.hpp"
#include "fdesign/hypergraph.hpp"
#include "oracles.hpp"

using namespace fdesign;

TEST_CASE("binomials match Pascal's rule") {
    for (int n = 0; n <= 40; ++n)
        for (int k = 1; k < n; ++k) CHECK(binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k));
    CHECK(binom(5, 7) == 0);
    CHECK(binom(62, 31) == 465428353255261088LL);
    CHECK_THROWS_AS(binom(200, 100), ResourceLimit);
}

TEST_CASE("factorial, gcd and lcm") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(gcd_all({12, 18, 30}) == 6);
    CHECK(gcd_all({0, 0, 7}) == 7);
    CHECK(lcm(4, 6) == 12);
    CHECK(mod(-7, 5) == 3);
}

TEST_CASE("bezout coefficients reproduce the gcd") {
    Rng rng(11);
    for (int t = 0; t < 500; ++t) {
        std::vector<i64> xs;
        const int m = 1 + static_cast<int>(rng.below(5));
        for (int i = 0; i < m; ++i) xs.push_back(static_cast<i64>(rng.below(200)) - 100);
        auto c = bezout(xs);
        REQUIRE(c.size() == xs.size());
        i64 sum = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) sum += c[i] * xs[i];
        CHECK(sum == gcd_all(xs));
    }
}

TEST_CASE("prime powers") {
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
    auto pp = prime_power(49);
    REQUIRE(pp);
    CHECK(pp->p == 7);
    CHECK(pp->k == 2);
    CHECK_FALSE(prime_power(12));
    CHECK_FALSE(prime_power(1));
    CHECK(smallest_prime_power_in(6, 12) == 7);
    CHECK(smallest_prime_power_in(24, 28) == 25);
    CHECK_FALSE(smallest_prime_power_in(24, 24));
}

TEST_CASE("next_combination enumerates all k-subsets in order") {
    for (int n = 0; n <= 8; ++n)
        for (int k = 0; k <= n; ++k) {
            std::vector<VertexSet> seen;
            for_each_subset([&] {
                VertexSet s(n);
                std::iota(s.begin(), s.end(), 0);
                return s;
            }(), k, [&](const VertexSet& s) { seen.push_back(s); });
            CHECK(seen == oracle::subsets(n, k));
        }
}
