#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "fdesign/divisibility.hpp"
#include "fdesign/errors.hpp"
#include "fdesign/rng.hpp"

namespace fdesign {

namespace {

using Bits = std::vector<std::uint64_t>;

struct Neighbourhoods {
    std::vector<VertexSet> sets;  // all (r-1)-subsets of [n], lexicographic
    std::vector<Bits> nbhd;
    std::unordered_map<VertexSet, std::size_t, VertexSetHash> index;
};

Neighbourhoods build(const RGraph& g) {
    Neighbourhoods out;
    const int k = g.r() - 1;
    const std::size_t words = (static_cast<std::size_t>(g.n()) + 63) / 64;
    VertexSet all(g.n());
    for (int v = 0; v < g.n(); ++v) all[v] = v;
    for_each_subset(all, k, [&](const VertexSet& s) {
        out.index.emplace(s, out.sets.size());
        out.sets.push_back(s);
    });
    out.nbhd.assign(out.sets.size(), Bits(words, 0));
    for (const auto& e : g) {
        for (Vertex v : e) {
            VertexSet s;
            for (Vertex u : e)
                if (u != v) s.push_back(u);
            out.nbhd[out.index.at(s)][v / 64] |= std::uint64_t{1} << (v % 64);
        }
    }
    return out;
}

i64 popcount(const Bits& b) {
    i64 c = 0;
    for (auto w : b) c += std::popcount(w);
    return c;
}

double deviation(i64 size, int a, double p, int n) {
    const double expect = std::pow(p, a) * n;
    return std::abs(static_cast<double>(size) - expect) / expect;
}

}  // namespace

TypicalityResult typicality(const RGraph& g, int h, double p, TypicalityMode mode, i64 samples, std::uint64_t seed,
                            i64 max_families) {
    if (h < 1) throw InvalidArgument("typicality: h must be at least 1");
    if (!(p > 0.0) || p > 1.0) throw InvalidArgument("typicality: p must lie in (0, 1]");
    if (g.r() < 1) throw InvalidArgument("typicality: uniformity must be at least 1");
    if (g.n() == 0) throw InvalidArgument("typicality: empty vertex set");

    TypicalityResult res;
    res.mode = mode;
    const auto nb = build(g);
    const std::size_t count = nb.sets.size();
    const int n = g.n();

    if (mode == TypicalityMode::Exhaustive) {
        i128 families = 0;
        for (int a = 1; a <= h && a <= static_cast<int>(count); ++a) families += binom128(static_cast<i64>(count), a);
        if (families > max_families)
            throw ResourceLimit("typicality: exhaustive mode would examine too many families",
                                static_cast<long double>(families));
        std::vector<Bits> stack(h + 1);
        stack[0].assign(nb.nbhd.empty() ? 0 : nb.nbhd[0].size(), ~std::uint64_t{0});
        // Mask off bits beyond n in the all-ones start value.
        if (!stack[0].empty() && n % 64 != 0) stack[0].back() = (std::uint64_t{1} << (n % 64)) - 1;
        double worst = 0.0;
        i64 evaluated = 0;
        auto dfs = [&](auto&& self, std::size_t start, int depth) -> void {
            for (std::size_t j = start; j < count; ++j) {
                Bits& cur = stack[depth + 1];
                cur = stack[depth];
                for (std::size_t w = 0; w < cur.size(); ++w) cur[w] &= nb.nbhd[j][w];
                ++evaluated;
                worst = std::max(worst, deviation(popcount(cur), depth + 1, p, n));
                if (depth + 1 < h) self(self, j + 1, depth + 1);
            }
        };
        dfs(dfs, 0, 0);
        res.c = worst;
        res.evaluated = evaluated;
    } else {
        if (samples <= 0) throw InvalidArgument("typicality: sample count must be positive");
        Rng rng(seed);
        double worst = 0.0;
        const int hmax = std::min<int>(h, static_cast<int>(count));
        for (i64 t = 0; t < samples; ++t) {
            int a = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(hmax)));
            std::vector<std::size_t> pick;
            while (static_cast<int>(pick.size()) < a) {
                auto j = static_cast<std::size_t>(rng.below(count));
                if (std::find(pick.begin(), pick.end(), j) == pick.end()) pick.push_back(j);
            }
            Bits cur = nb.nbhd[pick[0]];
            for (int j = 1; j < a; ++j)
                for (std::size_t w = 0; w < cur.size(); ++w) cur[w] &= nb.nbhd[pick[j]][w];
            worst = std::max(worst, deviation(popcount(cur), a, p, n));
        }
        res.c = worst;
        res.evaluated = samples;
    }
    res.typical = res.c < 1.0;
    return res;
}

}  // namespace fdesign
