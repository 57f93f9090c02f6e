#include <algorithm>
#include <bit>
#include <unordered_map>

#include "fdesign/errors.hpp"
#include "fdesign/packing.hpp"
#include "fdesign/rng.hpp"

namespace fdesign {

namespace {

using Bits = std::vector<std::uint64_t>;

// Residual r-graph with O(1) uniform edge sampling and per-(r-1)-set
// neighbourhood bitsets.
class Residual {
public:
    explicit Residual(const RGraph& g) : r_(g.r()), words_((static_cast<std::size_t>(g.n()) + 63) / 64) {
        edges_.reserve(g.size());
        for (const auto& e : g) {
            pos_.emplace(e, edges_.size());
            edges_.push_back(e);
            for (Vertex v : e) set_bit(without(e, v), v, true);
        }
    }

    std::size_t size() const { return edges_.size(); }
    const VertexSet& edge(std::size_t i) const { return edges_[i]; }
    bool contains(const VertexSet& e) const { return pos_.count(e) != 0; }

    void remove(const VertexSet& e) {
        auto it = pos_.find(e);
        if (it == pos_.end()) throw InternalError("nibble: removing a non-residual edge");
        std::size_t i = it->second;
        pos_.erase(it);
        if (i + 1 != edges_.size()) {
            edges_[i] = std::move(edges_.back());
            pos_[edges_[i]] = i;
        }
        edges_.pop_back();
        for (Vertex v : e) set_bit(without(e, v), v, false);
    }

    // Vertices w outside e such that every r-subset of e + w through w is residual.
    std::vector<Vertex> common_neighbours(const VertexSet& e) const {
        Bits acc;
        bool first = true;
        for (Vertex v : e) {
            auto it = nbhd_.find(without(e, v));
            if (it == nbhd_.end()) return {};
            if (first) {
                acc = it->second;
                first = false;
            } else {
                for (std::size_t w = 0; w < words_; ++w) acc[w] &= it->second[w];
            }
        }
        for (Vertex v : e) acc[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        std::vector<Vertex> out;
        for (std::size_t w = 0; w < words_; ++w)
            for (std::uint64_t x = acc[w]; x; x &= x - 1) out.push_back(static_cast<Vertex>(w * 64 + std::countr_zero(x)));
        return out;
    }

private:
    static VertexSet without(const VertexSet& e, Vertex v) {
        VertexSet s;
        s.reserve(e.size() - 1);
        for (Vertex u : e)
            if (u != v) s.push_back(u);
        return s;
    }

    void set_bit(const VertexSet& s, Vertex v, bool on) {
        auto& b = nbhd_[s];
        if (b.empty()) b.assign(words_, 0);
        if (on)
            b[v / 64] |= std::uint64_t{1} << (v % 64);
        else
            b[v / 64] &= ~(std::uint64_t{1} << (v % 64));
    }

    int r_;
    std::size_t words_;
    std::vector<VertexSet> edges_;
    std::unordered_map<VertexSet, std::size_t, VertexSetHash> pos_;
    std::unordered_map<VertexSet, Bits, VertexSetHash> nbhd_;
};

}  // namespace

NibbleResult greedy_nibble(const RGraph& g, const RGraph& f, std::uint64_t seed, const NibbleOptions& opts) {
    if (g.r() != f.r()) throw InvalidArgument("greedy_nibble: uniformity mismatch");
    if (f.empty()) throw InvalidArgument("greedy_nibble: F has no edges");
    const int r = g.r();
    const int fv = f.n();
    NibbleResult out{Packing{f, g.n(), {}}, RGraph(r, g.n()), 0};
    if (fv > g.n() || r < 1) {
        out.leftover = g;
        return out;
    }

    Rng rng(seed);
    Residual res(g);
    const i64 budget = std::max<i64>(1, opts.samples_per_copy_factor * g.n());
    std::unordered_map<VertexSet, i64, VertexSetHash> rsets;  // r-subsets of copy vertex sets
    std::unordered_map<VertexSet, char, VertexSetHash> bigsets;  // (r+1)-subsets
    std::vector<int> perm(fv);
    i64 since_commit = 0;

    while (res.size() > 0 && since_commit < budget) {
        if (opts.max_rounds > 0 && static_cast<i64>(out.packing.copies.size()) >= opts.max_rounds) break;
        ++since_commit;
        ++out.samples;
        const VertexSet e = res.edge(static_cast<std::size_t>(rng.below(res.size())));
        VertexSet cand = e;
        if (fv > r) {
            auto nb = res.common_neighbours(e);
            if (static_cast<int>(nb.size()) < fv - r) continue;
            for (int idx : rng.sample(static_cast<int>(nb.size()), fv - r)) cand.push_back(nb[idx]);
            std::sort(cand.begin(), cand.end());
            if (fv - r >= 2) {
                bool clique = true;
                for_each_subset(cand, r, [&](const VertexSet& s) { clique = clique && res.contains(s); });
                if (!clique) continue;
            }
        }
        if (opts.separation_kappa) {
            bool ok = true;
            for_each_subset(cand, r + 1, [&](const VertexSet& s) { ok = ok && !bigsets.count(s); });
            for_each_subset(cand, r, [&](const VertexSet& s) {
                auto it = rsets.find(s);
                ok = ok && (it == rsets.end() || it->second + 1 <= *opts.separation_kappa);
            });
            if (!ok) continue;
        }
        for (int i = 0; i < fv; ++i) perm[i] = i;
        rng.shuffle(perm);
        Embedding emb;
        emb.role_map.resize(fv);
        for (int v = 0; v < fv; ++v) emb.role_map[v] = cand[perm[v]];
        for (const auto& pe : f) res.remove(image_edge(emb, pe));
        if (opts.separation_kappa) {
            for_each_subset(cand, r + 1, [&](const VertexSet& s) { bigsets.emplace(s, 1); });
            for_each_subset(cand, r, [&](const VertexSet& s) { ++rsets[s]; });
        }
        out.packing.copies.push_back(std::move(emb));
        since_commit = 0;
    }
    for (std::size_t i = 0; i < res.size(); ++i) out.leftover.add_edge(res.edge(i));
    return out;
}

}  // namespace fdesign
