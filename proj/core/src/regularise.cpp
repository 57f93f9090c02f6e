#include "fdesign/regularise.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fdesign/divisibility.hpp"
#include "fdesign/errors.hpp"
#include "fdesign/partite.hpp"

namespace fdesign {

int regularisation_order(int f) {
    if (f < 1 || f > 12) throw InvalidArgument("regularisation_order: f out of range");
    const i64 lo = factorial(f);
    auto q = smallest_prime_power_in(lo, 2 * lo);
    if (!q) throw InternalError("no prime power in [f!, 2 f!]");
    return static_cast<int>(*q);
}

std::vector<i64> regularisation_s_vector(const RGraph& f, int q) {
    const int r = f.r();
    const int n = f.n();
    std::vector<i64> s(r);
    const i64 top = static_cast<i64>(f.size()) * factorial(r) * factorial(n - r + 1);
    for (int i = 0; i < r; ++i) {
        i128 c = binom128(n - i, r - 1 - i);
        for (int j = 0; j < r - 1 - i; ++j) c *= q;
        i128 v = static_cast<i128>(top) * c;
        if (v % (r - i) != 0) throw InternalError("s-vector entry is not an integer");
        v /= (r - i);
        if (v > static_cast<i128>(INT64_MAX)) throw ResourceLimit("s-vector entry overflows", static_cast<long double>(v));
        s[i] = static_cast<i64>(v);
    }
    return s;
}

Regularisation regularise(const RGraph& f, const RegulariseOptions& opts) {
    const int r = f.r();
    const int n = f.n();
    if (r < 2 || r >= n) throw InvalidArgument("regularise: need 2 <= r < f");
    if (f.empty()) throw InvalidArgument("regularise: F has no edges");
    if (n > 12) {
        // q >= f! already puts F* far beyond any budget
        long double lower = static_cast<long double>(f.size());
        for (int i = 0; i < r; ++i) lower *= static_cast<long double>(factorial(std::min(n, 20)));
        throw ResourceLimit("regularise: F* would have at least " + std::to_string(static_cast<double>(lower)) + " edges", lower);
    }
    const int q = regularisation_order(n);
    const i64 nperm = factorial(n);

    long double edges = static_cast<long double>(nperm) * static_cast<long double>(f.size());
    for (int i = 0; i < r - 1; ++i) edges *= q;
    if (edges > static_cast<long double>(opts.max_edges))
        throw ResourceLimit("regularise: F* would have " + std::to_string(static_cast<unsigned long long>(edges)) +
                                " edges, above the budget",
                            edges);

    Regularisation reg;
    reg.f = f;
    reg.q = q;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do reg.permutation_table.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    ResolvableDecomposition dec = resolvable_decomposition(q, n, r);
    reg.fstar = RGraph(r, q * n);
    reg.decomposition = Packing{f, q * n, {}};
    for (i64 i = 0; i < nperm; ++i) {
        const auto& pi = reg.permutation_table[i];
        for (const auto& clique : dec.classes[i]) {
            // clique[p] is the vertex in part p
            Embedding emb;
            emb.role_map.resize(n);
            for (int j = 0; j < n; ++j) emb.role_map[j] = clique[pi[j]];
            for (const auto& e : f) reg.fstar.add_edge(image_edge(emb, e));
            reg.decomposition.copies.push_back(std::move(emb));
        }
    }

    reg.s = regularisation_s_vector(f, q);
    WeakRegularity wr = is_weakly_regular(reg.fstar);
    if (!wr.regular || wr.s != reg.s) throw InternalError("regularise: F* does not have the expected s-vector");
    return reg;
}

FDecomposition to_fdecomposition(const Regularisation& reg) { return FDecomposition{reg.fstar, reg.decomposition}; }

}  // namespace fdesign
