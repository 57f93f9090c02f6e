#include "fdesign/divisibility.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <type_traits>

#include "fdesign/errors.hpp"

namespace fdesign {

namespace {

template <class G, class Out>
Out link_impl(const G& g, const VertexSet& s) {
    if (static_cast<int>(s.size()) > g.r()) throw InvalidArgument("link: |S| exceeds the uniformity");
    for (Vertex v : s)
        if (v < 0 || v >= g.n()) throw InvalidArgument("link: vertex outside the graph");
    Out out(g.r() - static_cast<int>(s.size()), g.n());
    g.for_each_edge([&](const VertexSet& e, i64 m) {
        if (!is_subset(s, e)) return;
        VertexSet rest = set_difference(e, s);
        if constexpr (std::is_same_v<Out, RGraph>) {
            out.add_edge(std::move(rest));
        } else {
            out.add(std::move(rest), m);
        }
    });
    return out;
}

template <class G>
i64 link_size_impl(const G& g, const VertexSet& s) {
    i64 total = 0;
    g.for_each_edge([&](const VertexSet& e, i64 m) {
        if (is_subset(s, e)) total += m;
    });
    return total;
}

template <class G>
DivisibilityVerdict check_divisibility_impl(const G& g, const DivVector& b, i64 lambda) {
    DivisibilityVerdict v;
    if (static_cast<int>(b.size()) > g.r()) throw InvalidArgument("divisibility vector longer than the uniformity");
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] <= 0) throw InvalidArgument("divisibility moduli must be positive");
        // Sets with an empty link are divisible, so only subsets of edges matter.
        for (const auto& [s, c] : degree_table(g, static_cast<int>(i))) {
            if (mod(lambda * c, b[i]) == 0) continue;
            if (!v.witness || s < *v.witness) {
                v.divisible = false;
                v.witness = s;
                v.count = c;
                v.modulus = b[i];
            }
        }
    }
    return v;
}

template <class G>
i64 extremal_degree(const G& g, bool want_max) {
    if (g.r() == 0) return want_max ? (g.empty() ? 0 : g.size()) : 0;
    auto table = degree_table(g, g.r() - 1);
    i64 best = 0;
    if (want_max) {
        for (const auto& [s, c] : table) best = std::max(best, c);
        return best;
    }
    // Any (r-1)-set missing from the table has degree 0.
    if (static_cast<i128>(table.size()) < binom128(g.n(), g.r() - 1)) return 0;
    bool first = true;
    for (const auto& [s, c] : table) {
        best = first ? c : std::min(best, c);
        first = false;
    }
    return best;
}

}  // namespace

RGraph link(const RGraph& g, const VertexSet& s) { return link_impl<RGraph, RGraph>(g, s); }
MultiRGraph link(const MultiRGraph& g, const VertexSet& s) { return link_impl<MultiRGraph, MultiRGraph>(g, s); }
i64 link_size(const RGraph& g, const VertexSet& s) { return link_size_impl(g, s); }
i64 link_size(const MultiRGraph& g, const VertexSet& s) { return link_size_impl(g, s); }

DivVector div_vector(const RGraph& f) {
    if (f.empty()) throw InvalidArgument("div_vector: F has no edges");
    DivVector d(f.r(), 0);
    for (int i = 0; i < f.r(); ++i) {
        i64 g = 0;
        for (const auto& [s, c] : degree_table(f, i)) g = std::gcd(g, c);
        d[i] = g;
    }
    return d;
}

DivisibilityVerdict check_divisibility(const RGraph& g, const DivVector& b, i64 lambda) {
    return check_divisibility_impl(g, b, lambda);
}
DivisibilityVerdict check_divisibility(const MultiRGraph& g, const DivVector& b, i64 lambda) {
    return check_divisibility_impl(g, b, lambda);
}

DivisibilityVerdict is_divisible(const RGraph& g, const RGraph& f, i64 lambda) {
    if (g.r() != f.r()) throw InvalidArgument("is_divisible: uniformity mismatch");
    if (lambda <= 0) throw InvalidArgument("is_divisible: lambda must be positive");
    return check_divisibility(g, div_vector(f), lambda);
}

DivisibilityVerdict is_divisible(const MultiRGraph& g, const RGraph& f, i64 lambda) {
    if (g.r() != f.r()) throw InvalidArgument("is_divisible: uniformity mismatch");
    if (lambda <= 0) throw InvalidArgument("is_divisible: lambda must be positive");
    return check_divisibility(g, div_vector(f), lambda);
}

WeakRegularity is_weakly_regular(const RGraph& f) {
    if (f.empty()) throw InvalidArgument("is_weakly_regular: F has no edges");
    WeakRegularity out;
    out.regular = true;
    out.s.assign(f.r(), 0);
    for (int i = 0; i < f.r(); ++i) {
        auto table = degree_table(f, i);
        // Deterministic witness: scan in sorted order.
        std::vector<std::pair<VertexSet, i64>> entries(table.begin(), table.end());
        std::sort(entries.begin(), entries.end());
        const VertexSet* first = nullptr;
        i64 value = 0;
        for (const auto& [s, c] : entries) {
            if (!first) {
                first = &s;
                value = c;
            } else if (c != value) {
                out.regular = false;
                out.s.clear();
                out.witness = WeakRegularity::Witness{i, *first, value, s, c};
                return out;
            }
        }
        out.s[i] = value;
    }
    return out;
}

Shadow shadow(const RGraph& f) {
    if (f.r() < 2) throw InvalidArgument("shadow: uniformity must be at least 2");
    Shadow out{RGraph(f.r() - 1, f.n()), std::nullopt};
    for (const auto& e : f)
        for_each_subset(e, f.r() - 1, [&](const VertexSet& s) { out.graph.insert(s); });
    if (!f.empty()) {
        auto wr = is_weakly_regular(f);
        if (wr.regular) {
            const int r = f.r();
            const i64 top = wr.s[r - 1];
            std::vector<i64> sp(r - 1);
            for (int i = 0; i < r - 1; ++i) {
                i64 num = static_cast<i64>(r - i) * wr.s[i];
                if (num % top != 0) throw InternalError("shadow: non-integral s' entry");
                sp[i] = num / top;
            }
            out.s = sp;
        }
    }
    return out;
}

bool complete_graph_divisible(int r, i64 n, const DivVector& b) {
    for (int i = 0; i < static_cast<int>(b.size()); ++i) {
        i128 c = binom128(n - i, r - i);
        if (c % b[i] != 0) return false;
    }
    return true;
}

i64 find_divisible_order(const RGraph& f, i64 a) {
    if (a <= 0) throw InvalidArgument("find_divisible_order: a must be positive");
    DivVector d = div_vector(f);
    i128 p = 1;
    for (i64 x : d) p *= x;
    i128 n = static_cast<i128>(factorial(f.r())) * a * p + f.r() - 1;
    if (n > (static_cast<i128>(1) << 62)) throw ResourceLimit("divisible order too large", static_cast<long double>(n));
    if (!complete_graph_divisible(f.r(), static_cast<i64>(n), d))
        throw InternalError("find_divisible_order: complete graph not divisible");
    return static_cast<i64>(n);
}

i64 max_degree(const RGraph& g) { return extremal_degree(g, true); }
i64 max_degree(const MultiRGraph& g) { return extremal_degree(g, true); }
i64 min_degree(const RGraph& g) { return extremal_degree(g, false); }
i64 min_degree(const MultiRGraph& g) { return extremal_degree(g, false); }

}  // namespace fdesign
