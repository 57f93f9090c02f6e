#include "fdesign/packing.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "fdesign/errors.hpp"
#include "fdesign/rng.hpp"

namespace fdesign {

VertexSet image_vertices(const Embedding& e) {
    VertexSet s = e.role_map;
    std::sort(s.begin(), s.end());
    return s;
}

VertexSet image_edge(const Embedding& emb, const VertexSet& pattern_edge) {
    VertexSet img;
    img.reserve(pattern_edge.size());
    for (Vertex v : pattern_edge) img.push_back(emb.role_map.at(v));
    std::sort(img.begin(), img.end());
    return img;
}

std::vector<VertexSet> image_edges(const RGraph& pattern, const Embedding& emb) {
    std::vector<VertexSet> out;
    out.reserve(pattern.size());
    for (const auto& e : pattern) out.push_back(image_edge(emb, e));
    std::sort(out.begin(), out.end());
    return out;
}

MultiRGraph covered(const Packing& p) {
    MultiRGraph g(p.pattern.r(), p.host_n);
    for (const auto& c : p.copies)
        for (const auto& e : p.pattern) g.add(image_edge(c, e));
    return g;
}

void canonicalize(Packing& p) {
    std::stable_sort(p.copies.begin(), p.copies.end(), [](const Embedding& a, const Embedding& b) {
        auto ia = image_vertices(a), ib = image_vertices(b);
        if (ia != ib) return ia < ib;
        return a.role_map < b.role_map;
    });
}

std::string to_string(PackingVerdictKind k) {
    switch (k) {
        case PackingVerdictKind::ValidPacking: return "valid-packing";
        case PackingVerdictKind::Decomposition: return "decomposition";
        case PackingVerdictKind::Violation: return "violation";
    }
    return "unknown";
}

namespace {

PackingVerdict violation(std::string detail, std::optional<std::size_t> copy = std::nullopt,
                         std::optional<VertexSet> edge = std::nullopt) {
    PackingVerdict v;
    v.kind = PackingVerdictKind::Violation;
    v.detail = std::move(detail);
    v.copy = copy;
    v.edge = std::move(edge);
    return v;
}

// Checks that a copy is an injective map into [0, n).
std::optional<std::string> check_copy(const Packing& p, const Embedding& c, int n) {
    if (static_cast<int>(c.role_map.size()) != p.pattern.n()) return "role map size differs from |V(F)|";
    std::vector<char> seen(n, 0);
    for (Vertex v : c.role_map) {
        if (v < 0 || v >= n) return "role map vertex outside the host";
        if (seen[v]) return "role map is not injective";
        seen[v] = 1;
    }
    return std::nullopt;
}

}  // namespace

PackingVerdict verify_packing(const RGraph& g, const Packing& p) {
    if (p.pattern.r() != g.r()) throw InvalidArgument("verify_packing: pattern uniformity differs from the host");
    if (p.host_n != g.n()) return violation("packing host size differs from the host graph");
    std::unordered_map<VertexSet, std::size_t, VertexSetHash> owner;
    owner.reserve(p.copies.size() * p.pattern.size());
    for (std::size_t i = 0; i < p.copies.size(); ++i) {
        const auto& c = p.copies[i];
        if (auto err = check_copy(p, c, g.n())) return violation(*err, i);
        for (const auto& e : p.pattern) {
            VertexSet img = image_edge(c, e);
            if (!g.contains(img)) return violation("copy uses a non-edge of the host", i, img);
            if (!owner.emplace(img, i).second) return violation("copies are not edge-disjoint", i, img);
        }
    }
    PackingVerdict v;
    v.kind = owner.size() == g.size() ? PackingVerdictKind::Decomposition : PackingVerdictKind::ValidPacking;
    return v;
}

PackingVerdict verify_design(const RGraph& g, const Packing& p, i64 lambda) {
    if (p.pattern.r() != g.r()) throw InvalidArgument("verify_design: pattern uniformity differs from the host");
    if (lambda <= 0) throw InvalidArgument("verify_design: lambda must be positive");
    if (p.host_n != g.n()) return violation("packing host size differs from the host graph");
    std::unordered_map<VertexSet, i64, VertexSetHash> count;
    std::set<std::vector<VertexSet>> distinct;
    for (std::size_t i = 0; i < p.copies.size(); ++i) {
        const auto& c = p.copies[i];
        if (auto err = check_copy(p, c, g.n())) return violation(*err, i);
        auto edges = image_edges(p.pattern, c);
        if (!distinct.insert(edges).second) return violation("two copies are the same subgraph", i);
        for (const auto& img : edges) {
            if (!g.contains(img)) return violation("copy uses a non-edge of the host", i, img);
            if (++count[img] > lambda) return violation("edge covered more than lambda times", i, img);
        }
    }
    for (const auto& e : g) {
        auto it = count.find(e);
        if (it == count.end() || it->second != lambda) return violation("edge covered fewer than lambda times", std::nullopt, e);
    }
    PackingVerdict v;
    v.kind = PackingVerdictKind::Decomposition;
    return v;
}

SeparationVerdict well_separation(const Packing& p) {
    SeparationVerdict out;
    const int r = p.pattern.r();
    std::unordered_map<VertexSet, std::size_t, VertexSetHash> big;
    std::unordered_map<VertexSet, i64, VertexSetHash> small;
    for (std::size_t i = 0; i < p.copies.size(); ++i) {
        VertexSet vs = image_vertices(p.copies[i]);
        bool clash = false;
        // Sharing more than r vertices is the same as sharing an (r+1)-set.
        for_each_subset(vs, r + 1, [&](const VertexSet& s) {
            if (clash) return;
            auto [it, fresh] = big.emplace(s, i);
            if (!fresh && it->second != i) {
                clash = true;
                out.ws1 = false;
                out.pair = std::make_pair(it->second, i);
                out.shared = s;
            }
        });
        if (clash) return out;
        for_each_subset(vs, r, [&](const VertexSet& s) { out.kappa = std::max(out.kappa, ++small[s]); });
    }
    return out;
}

Packing k_random_packing(const Packing& cliques, const RGraph& f, std::uint64_t seed) {
    const int fv = cliques.pattern.n();
    const int r = cliques.pattern.r();
    if (f.r() != r) throw InvalidArgument("k_random_packing: uniformity mismatch");
    if (f.n() != fv) throw InvalidArgument("k_random_packing: |V(F)| differs from the clique order");
    if (static_cast<i128>(cliques.pattern.size()) != binom128(fv, r))
        throw InvalidArgument("k_random_packing: input pattern is not a complete r-graph");
    Rng rng(seed);
    Packing out{f, cliques.host_n, {}};
    out.copies.reserve(cliques.copies.size());
    std::vector<int> perm(fv);
    for (const auto& c : cliques.copies) {
        for (int i = 0; i < fv; ++i) perm[i] = i;
        rng.shuffle(perm);
        Embedding e;
        e.role_map.resize(fv);
        for (int v = 0; v < fv; ++v) e.role_map[v] = c.role_map.at(perm[v]);
        out.copies.push_back(std::move(e));
    }
    return out;
}

}  // namespace fdesign
