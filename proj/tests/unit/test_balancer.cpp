#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fdesign/balancer.hpp"
#include "fdesign/catalog.hpp"
#include "fdesign/errors.hpp"
#include "fdesign/regularise.hpp"
#include "fdesign/shifter.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace fdesign;

namespace {

std::vector<Vertex> range(int n) {
    std::vector<Vertex> u(n);
    std::iota(u.begin(), u.end(), 0);
    return u;
}

// Largest number of tuples, with multiplicity, having a given k-set as a corner.
i64 brute_delta(const std::map<AdapterTuple, i64>& tuples, int k) {
    std::map<VertexSet, i64> deg;
    for (const auto& [x, m] : tuples)
        for (int z = 0; z < (1 << k); ++z) {
            VertexSet corner;
            for (int i = 0; i < k; ++i) corner.push_back(x[i + ((z >> i & 1) ? k : 0)]);
            std::sort(corner.begin(), corner.end());
            deg[corner] += m;
        }
    i64 best = 0;
    for (const auto& [s, d] : deg) best = std::max(best, d);
    return best;
}

}  // namespace

TEST_CASE("corners carry alternating signs") {
    auto c = corners({0, 1, 2, 3});
    REQUIRE(c.size() == 4);
    std::map<VertexSet, int> sign(c.begin(), c.end());
    CHECK(sign[{0, 1}] == 1);
    CHECK(sign[{1, 2}] == -1);
    CHECK(sign[{0, 3}] == -1);
    CHECK(sign[{2, 3}] == 1);
}

TEST_CASE("synthetic adapters are adapters") {
    for (int r = 2; r <= 4; ++r)
        for (int k = 1; k < r; ++k) {
            AdapterTuple x(2 * k);
            std::iota(x.begin(), x.end(), 0);
            DivVector b(k + 1, 1);
            b[k] = 6;
            for (int i = 0; i < k; ++i) b[i] = 5;
            SetFunction tau = synthetic_adapter(x, r, 2 * k + r + 2, 2);
            CHECK(adapter_check(tau, x, b, 2));
            SetFunction padded = synthetic_adapter(x, r, 2 * k + r + 2, 2, 6, true);
            CHECK(adapter_check(padded, x, b, 2));
            CHECK_FALSE(padded == tau);
            CHECK_FALSE(adapter_check(tau, x, b, 1));
        }
    CHECK(adapter_check(SetFunction(2, 5), {0, 1}, {3, 3}, 3));
}

TEST_CASE("balancer base case") {
    Balancer omega = balancer(range(5), 1, {3, 3}, 2);
    CHECK(omega.size() == 8);
    for (int j = 0; j < 4; ++j) CHECK(omega.tuples.at({j, j + 1}) == 2);
    CHECK(omega.delta == 4);
    CHECK(omega.delta <= omega.delta_bound);
    CHECK(omega.delta_bound == 6);
    CHECK(balancer(range(5), 1, {1, 1}, 2).size() == 0);
    CHECK(balancer_delta(omega.tuples, 1) == brute_delta(omega.tuples, 1));
}

TEST_CASE("balancer degree bounds") {
    for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 3}})
        for (i64 bk : {1, 2, 3, 4, 6})
            for (int n : {2 * k, 2 * k + 3, 10}) {
                DivVector b(k + 1);
                for (int s = 0; s <= k; ++s) b[s] = bk * binom(r, k);  // the hypothesis holds trivially
                b[k] = bk;
                Balancer omega = balancer(range(n), k, b, r);
                CHECK(omega.delta <= omega.delta_bound);
                CHECK(omega.delta_bound == (1 << k) * factorial(k) * factorial(k) * bk);
                CHECK(balancer_delta(omega.tuples, k) == omega.delta);
                CHECK(brute_delta(omega.tuples, k) == omega.delta);
            }
    CHECK_THROWS_AS(balancer(range(6), 1, {2, 3}, 2), InvalidArgument);  // C(2,1)*2 = 4 not 0 mod 3
}

TEST_CASE("balancing a path") {
    RGraph path(2, 6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    Balancer omega = balancer(range(6), 1, {1, 2}, 2);
    auto res = balance(indicator(path), omega, 1, synthetic_source(2, 6, 1, 2, false));
    CHECK(res.phi.is_divisible({1, 2}));
    CHECK(oracle::set_function_divisible(res.phi, {1, 2}));

    auto zero = balance(SetFunction(2, 6), omega, 1, synthetic_source(2, 6, 1, 2, false));
    for (const auto& [x, m] : zero.chosen) CHECK(m == 0);
}

TEST_CASE("random balancing campaigns with all adapter sources") {
    Rng rng(99);
    int done = 0;
    for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
        for (int t = 0; t < 40; ++t) {
            const i64 bk = 1 + static_cast<i64>(rng.below(6));
            DivVector b(k + 1);
            for (int s = 0; s < k; ++s) b[s] = bk * (1 + static_cast<i64>(rng.below(2)));
            b[k] = bk;
            bool ok = true;
            for (int s = 0; s <= k; ++s) ok = ok && (binom(r - s, k - s) * b[s]) % bk == 0;
            if (!ok) continue;
            const i64 h = 1;
            const int n = 2 * k + static_cast<int>(rng.below(5));
            const int ground = n + r + 2;
            Balancer omega = balancer(range(n), k, b, r);
            SetFunction phi = random_balanceable(r, ground, omega.u, b, h, rng);
            auto plain = balance(phi, omega, h, synthetic_source(r, ground, h, bk, false));
            auto padded = balance(phi, omega, h, synthetic_source(r, ground, h, bk, true));
            CHECK(oracle::set_function_divisible(plain.phi, b));
            CHECK(oracle::set_function_divisible(padded.phi, b));
            CHECK(plain.chosen == padded.chosen);
            CHECK(plain.chosen == select_adapters(phi, omega, h));
            ++done;
        }
    }
    CHECK(done > 50);
}

TEST_CASE("shifter adapters balance the same way") {
    RGraph k3 = complete_graph(2, 3);
    FDecomposition fd = to_fdecomposition(regularise(k3));
    Multishifter m = multishifter(k3, fd, 1);
    Rng rng(4);
    Balancer omega = balancer(range(6), 1, {126, 12}, 2);
    for (int t = 0; t < 5; ++t) {
        SetFunction phi = random_balanceable(2, 8, omega.u, {126, 12}, 2, rng);
        auto res = balance(phi, omega, 2, shifter_source(m, 8));
        CHECK(res.phi.is_divisible({126, 12}));
        CHECK(res.chosen == select_adapters(phi, omega, 2));
    }
}

TEST_CASE("selection preconditions") {
    Balancer omega = balancer(range(4), 1, {4, 2}, 2);
    SetFunction phi(2, 8);
    phi.set({5, 6}, 1);  // residue outside U
    CHECK_THROWS_AS(select_adapters(phi, omega, 1), InvalidArgument);
    SetFunction odd(2, 8);
    odd.set({0, 1}, 2);  // phi(empty) = 2 is not divisible by b_0 = 4
    CHECK_THROWS_AS(select_adapters(odd, omega, 1), InvalidArgument);
    RGraph path(2, 8, {{0, 1}, {1, 2}, {2, 3}, {0, 2}});
    CHECK_THROWS_AS(balance(indicator(path), omega, 1, [](const AdapterTuple&) { return SetFunction(2, 8); }),
                    InvalidArgument);
}

TEST_CASE("auto-divisibility") {
    RGraph g(2, 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    auto res = check_auto_div(indicator(g), {1, 2}, {4});
    CHECK(res.divisible);
    CHECK(res.certificate);
    CHECK(check_auto_div(SetFunction(3, 6), {1, 1, 1}, {0, 1, 2}).divisible);

    Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        const int r = 2 + static_cast<int>(rng.below(2));
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(r - 1)));
        DivVector b = instances::admissible_b(r, k, 6, rng);
        const int n = 2 * k + 2 * r + static_cast<int>(rng.below(3));
        SetFunction phi = instances::auto_div_instance(r, k, b, n, rng);
        auto a = check_auto_div(phi, b, make_set(range(2 * k - 1)));
        CHECK(a.divisible);
        CHECK(a.certificate);
        CHECK(oracle::set_function_divisible(phi, b));
    }
    CHECK_THROWS_AS(check_auto_div(SetFunction(2, 4), {1, 2}, {0, 1}), InvalidArgument);
}
