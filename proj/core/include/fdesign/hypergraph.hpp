#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "fdesign/combinatorics.hpp"

namespace fdesign {

using Vertex = int;
// Always sorted ascending, no repeats.
using VertexSet = std::vector<Vertex>;

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const noexcept {
        std::size_t h = 0x9e3779b97f4a7c15ULL ^ s.size();
        for (Vertex v : s) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

VertexSet make_set(std::vector<Vertex> vs);
inline VertexSet make_set(std::initializer_list<Vertex> vs) { return make_set(std::vector<Vertex>(vs)); }
bool is_subset(const VertexSet& small, const VertexSet& big);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);

// Calls fn(subset) for every k-subset of s, in lexicographic order.
template <class Fn>
void for_each_subset(const VertexSet& s, int k, Fn&& fn) {
    const int m = static_cast<int>(s.size());
    if (k < 0 || k > m) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    VertexSet sub(k);
    do {
        for (int i = 0; i < k; ++i) sub[i] = s[idx[i]];
        fn(static_cast<const VertexSet&>(sub));
    } while (next_combination(idx, m));
}

class RGraph {
public:
    RGraph() = default;
    RGraph(int r, int n);
    RGraph(int r, int n, const std::vector<VertexSet>& edges);

    int r() const { return r_; }
    int n() const { return n_; }
    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    const std::set<VertexSet>& edges() const { return edges_; }
    auto begin() const { return edges_.begin(); }
    auto end() const { return edges_.end(); }

    bool contains(const VertexSet& e) const { return edges_.count(e) != 0; }
    // Sorts and validates e; returns false if already present.
    bool insert(VertexSet e);
    // Like insert but a duplicate is an error.
    void add_edge(VertexSet e);
    bool erase(const VertexSet& e) { return edges_.erase(e) != 0; }
    // Grows the vertex range; shrinking is not allowed.
    void resize(int n);

    template <class Fn>
    void for_each_edge(Fn&& fn) const {
        for (const auto& e : edges_) fn(e, i64{1});
    }

    bool operator==(const RGraph& o) const { return r_ == o.r_ && n_ == o.n_ && edges_ == o.edges_; }

private:
    int r_ = 0;
    int n_ = 0;
    std::set<VertexSet> edges_;
};

class MultiRGraph {
public:
    MultiRGraph() = default;
    MultiRGraph(int r, int n);
    explicit MultiRGraph(const RGraph& g);

    int r() const { return r_; }
    int n() const { return n_; }
    // Number of distinct edges.
    std::size_t size() const { return edges_.size(); }
    // Number of edges counted with multiplicity, i.e. |G|.
    i64 total() const;
    bool empty() const { return edges_.empty(); }
    const std::map<VertexSet, i64>& edges() const { return edges_; }
    auto begin() const { return edges_.begin(); }
    auto end() const { return edges_.end(); }

    i64 multiplicity(const VertexSet& e) const;
    // Adds m copies of e (m may be negative as long as the result stays >= 0).
    void add(VertexSet e, i64 m = 1);
    void resize(int n);
    bool is_simple() const;
    RGraph support() const;

    template <class Fn>
    void for_each_edge(Fn&& fn) const {
        for (const auto& [e, m] : edges_) fn(e, m);
    }

    bool operator==(const MultiRGraph& o) const { return r_ == o.r_ && n_ == o.n_ && edges_ == o.edges_; }

private:
    int r_ = 0;
    int n_ = 0;
    std::map<VertexSet, i64> edges_;
};

using DegreeTable = std::unordered_map<VertexSet, i64, VertexSetHash>;

// |G(S)| for every i-set S with a nonzero link (sets of size i only).
DegreeTable degree_table(const RGraph& g, int i);
DegreeTable degree_table(const MultiRGraph& g, int i);

// Vertices that lie in at least one edge.
VertexSet non_isolated(const RGraph& g);

// Graph whose edge set is the image of g under the vertex map (size g.n()).
// The map must be injective on every edge.
RGraph relabel(const RGraph& g, const std::vector<Vertex>& map, int new_n);
MultiRGraph relabel(const MultiRGraph& g, const std::vector<Vertex>& map, int new_n);

RGraph union_of(const RGraph& a, const RGraph& b);  // edge sets must be disjoint
RGraph difference(const RGraph& a, const RGraph& b);

}  // namespace fdesign
