#include "fdesign/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "fdesign/errors.hpp"

namespace fdesign {

VertexSet make_set(std::vector<Vertex> vs) {
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
        throw InvalidArgument("vertex set has a repeated vertex");
    return vs;
}

bool is_subset(const VertexSet& small, const VertexSet& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

namespace {

void validate_edge(VertexSet& e, int r, int n) {
    std::sort(e.begin(), e.end());
    if (static_cast<int>(e.size()) != r)
        throw InvalidArgument("edge has " + std::to_string(e.size()) + " vertices, expected " + std::to_string(r));
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw InvalidArgument("edge has a repeated vertex");
    if (!e.empty() && (e.front() < 0 || e.back() >= n))
        throw InvalidArgument("edge vertex out of range [0," + std::to_string(n) + ")");
}

template <class G>
DegreeTable degree_table_impl(const G& g, int i) {
    DegreeTable out;
    if (i < 0 || i > g.r()) throw InvalidArgument("degree_table: set size out of range");
    if (g.n() <= 64) {
        // Pack subsets into bit masks while counting, then unpack once.
        std::unordered_map<std::uint64_t, i64> counts;
        g.for_each_edge([&](const VertexSet& e, i64 m) {
            for_each_subset(e, i, [&](const VertexSet& s) {
                std::uint64_t mask = 0;
                for (Vertex v : s) mask |= std::uint64_t{1} << v;
                counts[mask] += m;
            });
        });
        out.reserve(counts.size());
        for (const auto& [mask, c] : counts) {
            VertexSet s;
            for (std::uint64_t x = mask; x; x &= x - 1) s.push_back(std::countr_zero(x));
            out.emplace(std::move(s), c);
        }
        return out;
    }
    g.for_each_edge([&](const VertexSet& e, i64 m) {
        for_each_subset(e, i, [&](const VertexSet& s) { out[s] += m; });
    });
    return out;
}

}  // namespace

RGraph::RGraph(int r, int n) : r_(r), n_(n) {
    if (r < 0 || n < 0) throw InvalidArgument("RGraph: negative uniformity or vertex count");
}

RGraph::RGraph(int r, int n, const std::vector<VertexSet>& edges) : RGraph(r, n) {
    for (const auto& e : edges) add_edge(e);
}

bool RGraph::insert(VertexSet e) {
    validate_edge(e, r_, n_);
    return edges_.insert(std::move(e)).second;
}

void RGraph::add_edge(VertexSet e) {
    if (!insert(e)) throw InvalidArgument("duplicate edge");
}

void RGraph::resize(int n) {
    if (n < n_) throw InvalidArgument("RGraph::resize cannot shrink");
    n_ = n;
}

MultiRGraph::MultiRGraph(int r, int n) : r_(r), n_(n) {
    if (r < 0 || n < 0) throw InvalidArgument("MultiRGraph: negative uniformity or vertex count");
}

MultiRGraph::MultiRGraph(const RGraph& g) : MultiRGraph(g.r(), g.n()) {
    for (const auto& e : g) edges_.emplace(e, 1);
}

i64 MultiRGraph::total() const {
    i64 t = 0;
    for (const auto& [e, m] : edges_) t += m;
    return t;
}

i64 MultiRGraph::multiplicity(const VertexSet& e) const {
    auto it = edges_.find(e);
    return it == edges_.end() ? 0 : it->second;
}

void MultiRGraph::add(VertexSet e, i64 m) {
    validate_edge(e, r_, n_);
    if (m == 0) return;
    i64& slot = edges_[e];
    slot += m;
    if (slot < 0) throw InvalidArgument("negative edge multiplicity");
    if (slot == 0) edges_.erase(e);
}

void MultiRGraph::resize(int n) {
    if (n < n_) throw InvalidArgument("MultiRGraph::resize cannot shrink");
    n_ = n;
}

bool MultiRGraph::is_simple() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const auto& kv) { return kv.second == 1; });
}

RGraph MultiRGraph::support() const {
    RGraph g(r_, n_);
    for (const auto& [e, m] : edges_) g.insert(e);
    return g;
}

DegreeTable degree_table(const RGraph& g, int i) { return degree_table_impl(g, i); }
DegreeTable degree_table(const MultiRGraph& g, int i) { return degree_table_impl(g, i); }

VertexSet non_isolated(const RGraph& g) {
    std::vector<char> seen(g.n(), 0);
    for (const auto& e : g)
        for (Vertex v : e) seen[v] = 1;
    VertexSet out;
    for (int v = 0; v < g.n(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

RGraph relabel(const RGraph& g, const std::vector<Vertex>& map, int new_n) {
    RGraph out(g.r(), new_n);
    for (const auto& e : g) {
        VertexSet img;
        img.reserve(e.size());
        for (Vertex v : e) img.push_back(map.at(v));
        out.add_edge(std::move(img));
    }
    return out;
}

MultiRGraph relabel(const MultiRGraph& g, const std::vector<Vertex>& map, int new_n) {
    MultiRGraph out(g.r(), new_n);
    for (const auto& [e, m] : g) {
        VertexSet img;
        img.reserve(e.size());
        for (Vertex v : e) img.push_back(map.at(v));
        out.add(std::move(img), m);
    }
    return out;
}

RGraph union_of(const RGraph& a, const RGraph& b) {
    if (a.r() != b.r()) throw InvalidArgument("union_of: uniformity mismatch");
    RGraph out(a.r(), std::max(a.n(), b.n()));
    for (const auto& e : a) out.add_edge(e);
    for (const auto& e : b) out.add_edge(e);
    return out;
}

RGraph difference(const RGraph& a, const RGraph& b) {
    if (a.r() != b.r()) throw InvalidArgument("difference: uniformity mismatch");
    RGraph out(a.r(), a.n());
    for (const auto& e : a)
        if (!b.contains(e)) out.add_edge(e);
    return out;
}

}  // namespace fdesign
