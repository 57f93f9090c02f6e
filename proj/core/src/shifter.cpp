#include "fdesign/shifter.hpp"

#include <algorithm>
#include <set>
#include <numeric>
#include <string>

#include "fdesign/errors.hpp"
#include "fdesign/rooted_embed.hpp"

namespace fdesign {

namespace {

void check_inputs(const RGraph& f, const FDecomposition& fd, int k) {
    const int r = f.r();
    if (k < 1 || k >= r) throw InvalidArgument("shifter: need 1 <= k < r");
    if (fd.fstar.r() != r) throw InvalidArgument("shifter: F and F* have different uniformity");
    if (!(fd.decomposition.pattern == f)) throw InvalidArgument("shifter: the decomposition is not into copies of F");
    if (fd.decomposition.copies.empty()) throw InvalidArgument("shifter: F* has an empty decomposition");
    auto v = verify_packing(fd.fstar, fd.decomposition);
    if (v.kind != PackingVerdictKind::Decomposition) throw InvalidArgument("shifter: not an F-decomposition of F*: " + v.detail);
}

// a_{S*} with sum a_{S*} |F(S*)| = Deg(F)_k mod Deg(F*)_k, each reduced into
// [1, period] where period = b_k / gcd(b_k, |F(S*)|).
std::vector<i64> shift_coefficients(const std::vector<i64>& degs, i64 target, i64 bk) {
    std::vector<i64> c = bezout(degs);
    i64 check = 0;
    for (std::size_t i = 0; i < degs.size(); ++i) check += c[i] * degs[i];
    if (check != target) throw InternalError("shifter: Bezout coefficients do not reach Deg(F)_k");
    std::vector<i64> a(degs.size());
    for (std::size_t i = 0; i < degs.size(); ++i) {
        i64 period = bk / std::gcd(bk, degs[i]);
        a[i] = mod(c[i], period);
        if (a[i] == 0) a[i] = period;
    }
    return a;
}

}  // namespace

Multishifter multishifter(const RGraph& f, const FDecomposition& fd, int k, bool swap_last) {
    check_inputs(f, fd, k);
    const int r = f.r();
    const int fs = fd.fstar.n();
    const int n = 2 * k + fs;
    Multishifter m;
    m.k = k;
    m.graph = MultiRGraph(r, n);
    m.decomposition = Packing{f, n, {}};
    for (int i = 0; i < 2 * k; ++i) m.roots.push_back(i);
    m.target = div_vector(f)[k];
    m.modulus = div_vector(fd.fstar)[k];
    if (m.modulus % m.target != 0) throw InvalidArgument("shifter: Deg(F)_k does not divide Deg(F*)_k");

    VertexSet fv(f.n());
    for (int i = 0; i < f.n(); ++i) fv[i] = i;
    for_each_subset(fv, k, [&](const VertexSet& s) {
        m.s_star.push_back(s);
        m.s_star_degree.push_back(link_size(f, s));
    });
    m.coefficients = shift_coefficients(m.s_star_degree, m.target, m.modulus);

    const auto& rho = fd.decomposition.copies[0].role_map;  // F' = first copy
    const Vertex hat = fs;                                   // the new vertex x^_k
    for (std::size_t si = 0; si < m.s_star.size(); ++si) {
        const auto& s = m.s_star[si];
        std::vector<Vertex> x(k);
        for (int i = 0; i < k; ++i) x[i] = rho[s[i]];
        for (int w = 0; w < (1 << (k - 1)); ++w) {
            std::vector<Vertex> mu(fs + 1);
            for (int v = 0; v < fs; ++v) mu[v] = 2 * k + v;
            for (int i = 0; i < k - 1; ++i) mu[x[i]] = shifter_root(k, i, (w >> i) & 1);
            bool odd = __builtin_popcount(static_cast<unsigned>(w)) % 2 == 1;
            if (swap_last) odd = !odd;
            // odd: x^0_k plays x_k and x^1_k plays x^_k; even: the reverse
            mu[x[k - 1]] = shifter_root(k, k - 1, odd ? 0 : 1);
            mu[hat] = shifter_root(k, k - 1, odd ? 1 : 0);
            for (std::size_t t = 0; t < fd.decomposition.copies.size(); ++t) {
                Embedding emb;
                emb.role_map.resize(f.n());
                for (int u = 0; u < f.n(); ++u) {
                    Vertex v = fd.decomposition.copies[t].role_map[u];
                    if (t == 0 && v == x[k - 1]) v = hat;
                    emb.role_map[u] = mu[v];
                }
                for (i64 c = 0; c < m.coefficients[si]; ++c) {
                    for (const auto& e : f) m.graph.add(image_edge(emb, e));
                    m.decomposition.copies.push_back(emb);
                }
            }
        }
    }
    return m;
}

Shifter simple_shifter(const RGraph& f, const FDecomposition& fd, int k, const ShifterOptions& opts) {
    Multishifter ms = multishifter(f, fd, k, true);
    const int r = f.r();
    const int fs = fd.fstar.n();
    const int fn = f.n();
    const long double copies = static_cast<long double>(ms.decomposition.copies.size());
    const long double edges = copies * static_cast<long double>(fd.fstar.size() - f.size());
    if (edges > static_cast<long double>(opts.max_edges))
        throw ResourceLimit("simple_shifter: shifter would have " + std::to_string(static_cast<unsigned long long>(edges)) +
                                " edges, above the budget",
                            edges);

    const auto& d0 = fd.decomposition.copies[0].role_map;
    std::vector<char> in_d0(fs, 0);
    for (Vertex v : d0) in_d0[v] = 1;
    std::vector<Vertex> rest;  // F* vertices outside F', played by fresh vertices
    for (int v = 0; v < fs; ++v)
        if (!in_d0[v]) rest.push_back(v);

    const int base = ms.graph.n();
    const int z = fs - fn;
    const int n = base + static_cast<int>(ms.decomposition.copies.size()) * z;
    RGraph t(r, n);
    Packing dec{f, n, {}};
    std::vector<Vertex> tau(fs);
    for (std::size_t j = 0; j < ms.decomposition.copies.size(); ++j) {
        const auto& sigma = ms.decomposition.copies[j].role_map;
        for (int u = 0; u < fn; ++u) tau[d0[u]] = sigma[u];
        for (int i = 0; i < z; ++i) tau[rest[i]] = base + static_cast<int>(j) * z + i;
        for (std::size_t c = 1; c < fd.decomposition.copies.size(); ++c) {
            Embedding emb;
            emb.role_map.resize(fn);
            for (int u = 0; u < fn; ++u) emb.role_map[u] = tau[fd.decomposition.copies[c].role_map[u]];
            for (const auto& e : f)
                if (!t.insert(image_edge(emb, e))) throw InternalError("simple_shifter: extensions overlap");
            dec.copies.push_back(std::move(emb));
        }
    }

    // Drop non-root vertices that carry nothing, keeping labels monotone.
    std::vector<char> keep(n, 0);
    for (int i = 0; i < 2 * k; ++i) keep[i] = 1;
    for (const auto& e : t)
        for (Vertex v : e) keep[v] = 1;
    for (const auto& c : dec.copies)
        for (Vertex v : c.role_map) keep[v] = 1;
    std::vector<Vertex> map(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v)
        if (keep[v]) map[v] = next++;

    Shifter out;
    out.k = k;
    out.graph = relabel(t, map, next);
    out.decomposition = Packing{f, next, {}};
    for (auto& c : dec.copies) {
        for (auto& v : c.role_map) v = map[v];
        out.decomposition.copies.push_back(std::move(c));
    }
    out.roots = ms.roots;
    for (int v = 2 * k; v < n; ++v)
        if (keep[v]) out.order.push_back(map[v]);
    out.coefficients = ms.coefficients;
    out.degeneracy = rooted_degeneracy(out.graph, out.roots, out.order);
    out.degeneracy_bound = binom(fs - 1, r - 1);
    if (out.degeneracy > out.degeneracy_bound) throw InternalError("simple_shifter: degeneracy bound violated");
    return out;
}

namespace {

template <class G>
CongruenceVerdict scan(const G& t, const VertexSet& roots, int k, const DivVector& b, i64 corner_value) {
    if (static_cast<int>(roots.size()) != 2 * k) throw InvalidArgument("verify_shifter_congruences: need 2k roots");
    if (static_cast<int>(b.size()) <= k) throw InvalidArgument("verify_shifter_congruences: divisibility vector too short");
    CongruenceVerdict v;
    auto fail = [&](std::string d, const VertexSet& s, i64 val, i64 expect, i64 modulus) {
        v.ok = false;
        v.detail = std::move(d);
        v.witness = s;
        v.value = val;
        v.expected = expect;
        v.modulus = modulus;
    };
    for (int i = 0; i < k; ++i) {
        auto table = degree_table(t, i);
        std::vector<std::pair<VertexSet, i64>> entries(table.begin(), table.end());
        std::sort(entries.begin(), entries.end());
        for (const auto& [s, d] : entries)
            if (mod(d, b[i]) != 0) {
                fail("a set below level k has a nonzero residue", s, d, 0, b[i]);
                return v;
            }
    }
    const i64 bk = b[k];
    auto table = degree_table(t, k);
    std::set<VertexSet> corners;
    for (int z = 0; z < (1 << k); ++z) {
        VertexSet s;
        for (int i = 0; i < k; ++i) s.push_back(roots[i + k * ((z >> i) & 1)]);
        std::sort(s.begin(), s.end());
        corners.insert(s);
        const i64 sign = __builtin_popcount(static_cast<unsigned>(z)) % 2 == 0 ? 1 : -1;
        const i64 expect = mod(sign * corner_value, bk);
        auto it = table.find(s);
        const i64 d = it == table.end() ? 0 : it->second;
        if (mod(d, bk) != expect) {
            fail("a corner k-set has the wrong residue", s, d, expect, bk);
            return v;
        }
    }
    std::vector<std::pair<VertexSet, i64>> entries(table.begin(), table.end());
    std::sort(entries.begin(), entries.end());
    for (const auto& [s, d] : entries)
        if (!corners.count(s) && mod(d, bk) != 0) {
            fail("a non-corner k-set has a nonzero residue", s, d, 0, bk);
            return v;
        }
    return v;
}

}  // namespace

CongruenceVerdict verify_shifter_congruences(const MultiRGraph& t, const VertexSet& roots, int k, const DivVector& b,
                                             i64 corner_value) {
    return scan(t, roots, k, b, corner_value);
}

CongruenceVerdict verify_shifter_congruences(const RGraph& t, const VertexSet& roots, int k, const DivVector& b,
                                             i64 corner_value) {
    return scan(t, roots, k, b, corner_value);
}

ShifterVerdict verify_shifter(const RGraph& t, const Packing& dec, const VertexSet& roots, int k, const DivVector& b,
                              i64 corner_value) {
    ShifterVerdict v;
    auto pv = verify_packing(t, dec);
    v.decomposition = pv.kind == PackingVerdictKind::Decomposition;
    auto ws = well_separation(dec);
    v.well_separated = ws.ws1 && ws.kappa <= 1;
    v.root_pairs = true;
    for (const auto& c : dec.copies) {
        VertexSet img = image_vertices(c);
        for (int i = 0; i < k; ++i) {
            bool a = std::binary_search(img.begin(), img.end(), roots[i]);
            bool bb = std::binary_search(img.begin(), img.end(), roots[i + k]);
            if (a && bb) v.root_pairs = false;
        }
    }
    VertexSet x = roots;
    std::sort(x.begin(), x.end());
    v.roots_independent = true;
    for (const auto& e : t)
        if (is_subset(e, x)) v.roots_independent = false;
    v.congruences = verify_shifter_congruences(t, roots, k, b, corner_value);
    v.ok = v.decomposition && v.well_separated && v.root_pairs && v.roots_independent && v.congruences.ok;
    if (!v.decomposition) v.detail = "not an F-decomposition: " + pv.detail;
    else if (!v.well_separated) v.detail = "decomposition is not 1-well separated";
    else if (!v.root_pairs) v.detail = "a copy meets both vertices of a root pair";
    else if (!v.roots_independent) v.detail = "T[X] has an edge";
    else if (!v.congruences.ok) v.detail = v.congruences.detail;
    return v;
}

}  // namespace fdesign
