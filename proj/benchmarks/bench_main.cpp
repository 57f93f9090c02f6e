#include <benchmark/benchmark.h>

#include "fdesign/balancer.hpp"
#include "fdesign/catalog.hpp"
#include "fdesign/divisibility.hpp"
#include "fdesign/make_divisible.hpp"
#include "fdesign/matrix.hpp"
#include "fdesign/packing.hpp"
#include "fdesign/partite.hpp"
#include "fdesign/regularise.hpp"

using namespace fdesign;

static void BM_DivVector(benchmark::State& state) {
    RGraph g = complete_graph(3, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(div_vector(g));
}
BENCHMARK(BM_DivVector)->Arg(10)->Arg(20)->Arg(30);

static void BM_CauchyDeterminant(benchmark::State& state) {
    Field f = Field::of_order(49);
    const int m = static_cast<int>(state.range(0));
    std::vector<FieldElem> xs, ys;
    for (int i = 0; i < m; ++i) {
        xs.push_back(f.elem(i));
        ys.push_back(f.elem(m + i));
    }
    Matrix a = cauchy(f, xs, ys);
    for (auto _ : state) benchmark::DoNotOptimize(determinant(a));
}
BENCHMARK(BM_CauchyDeterminant)->Arg(3)->Arg(6)->Arg(12);

static void BM_ResolvableDecomposition(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(resolvable_decomposition(q, 4, 3));
}
BENCHMARK(BM_ResolvableDecomposition)->Arg(8)->Arg(13)->Unit(benchmark::kMillisecond);

static void BM_Regularise(benchmark::State& state) {
    RGraph f = complete_graph(2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(regularise(f));
}
BENCHMARK(BM_Regularise)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Nibble(benchmark::State& state) {
    RGraph g = complete_graph(2, static_cast<int>(state.range(0)));
    RGraph k3 = complete_graph(2, 3);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(greedy_nibble(g, k3, seed++));
}
BENCHMARK(BM_Nibble)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_BalanceRandom(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<Vertex> u(n);
    for (int i = 0; i < n; ++i) u[i] = i;
    Balancer omega = balancer(u, 2, {6, 6, 3}, 3);
    Rng rng(1);
    for (auto _ : state) {
        SetFunction phi = random_balanceable(3, n + 6, u, omega.b, 1, rng);
        benchmark::DoNotOptimize(select_adapters(phi, omega, 1));
    }
}
BENCHMARK(BM_BalanceRandom)->Arg(8)->Arg(12);

static void BM_MakeDivisibleAbstract(benchmark::State& state) {
    RGraph k3 = complete_graph(2, 3);
    FDecomposition fd = to_fdecomposition(regularise(k3));
    RGraph host = complete_graph(2, static_cast<int>(state.range(0)));
    RGraph h(2, host.n(), {{0, 1}, {0, 2}, {1, 2}});
    for (auto _ : state) {
        MakeDivisible md = make_divisible(host, k3, fd, 0);
        benchmark::DoNotOptimize(respond(md, h));
    }
}
BENCHMARK(BM_MakeDivisibleAbstract)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
