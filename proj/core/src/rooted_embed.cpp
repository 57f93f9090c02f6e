#include "fdesign/rooted_embed.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_map>

#include "fdesign/errors.hpp"
#include "fdesign/rng.hpp"

namespace fdesign {

EdgeSet rooted_sets(const RGraph& t, const VertexSet& roots) {
    EdgeSet out;
    for (int i = 1; i <= t.r() - 1 && i <= static_cast<int>(roots.size()); ++i) {
        auto table = degree_table(t, i);
        for_each_subset(roots, i, [&](const VertexSet& s) {
            auto it = table.find(s);
            if (it != table.end() && it->second > 0) out.insert(s);
        });
    }
    return out;
}

namespace {

bool in_hull(const VertexSet& e, const VertexSet& roots, const EdgeSet& rooted) {
    VertexSet s = set_intersection(e, roots);
    return s.empty() || rooted.count(s) != 0;
}

VertexSet all_vertices(int n) {
    VertexSet v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

std::vector<VertexSet> hull(const RGraph& t, const VertexSet& roots) {
    EdgeSet rooted = rooted_sets(t, roots);
    std::vector<VertexSet> out;
    for_each_subset(all_vertices(t.n()), t.r(), [&](const VertexSet& e) {
        if (in_hull(e, roots, rooted)) out.push_back(e);
    });
    return out;
}

i64 rooted_degeneracy(const RGraph& t, const VertexSet& roots, const std::vector<Vertex>& order) {
    std::vector<int> rank(t.n(), -1);
    for (Vertex x : roots) rank.at(x) = 0;
    for (std::size_t i = 0; i < order.size(); ++i) rank.at(order[i]) = static_cast<int>(i) + 1;
    std::vector<i64> back(t.n(), 0);
    for (const auto& e : t) {
        Vertex last = e[0];
        for (Vertex v : e) {
            if (rank[v] < 0) throw InvalidArgument("rooted_degeneracy: order misses a vertex of an edge");
            if (rank[v] > rank[last]) last = v;
        }
        if (rank[last] > 0) ++back[last];
    }
    return back.empty() ? 0 : *std::max_element(back.begin(), back.end());
}

std::vector<Vertex> rooted_degeneracy_order(const RGraph& t, const VertexSet& roots) {
    const int n = t.n();
    std::vector<char> is_root(n, 0);
    for (Vertex x : roots) is_root.at(x) = 1;
    std::vector<VertexSet> edges(t.begin(), t.end());
    std::vector<std::vector<int>> inc(n);
    std::vector<i64> deg(n, 0);
    for (int i = 0; i < static_cast<int>(edges.size()); ++i)
        for (Vertex v : edges[i]) {
            inc[v].push_back(i);
            ++deg[v];
        }
    std::vector<char> alive(edges.size(), 1), removed(n, 0);
    std::set<std::pair<i64, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v)
        if (!is_root[v]) queue.emplace(deg[v], v);
    std::vector<Vertex> rev;
    while (!queue.empty()) {
        auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        removed[v] = 1;
        rev.push_back(v);
        for (int ei : inc[v]) {
            if (!alive[ei]) continue;
            alive[ei] = 0;
            for (Vertex u : edges[ei]) {
                if (u == v || is_root[u] || removed[u]) continue;
                queue.erase({deg[u], u});
                queue.emplace(--deg[u], u);
            }
        }
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

namespace {

struct Check {
    VertexSet rest;  // template (r-1)-set placed earlier
    bool is_edge = false;
};

struct PreparedPiece {
    std::vector<Vertex> order;
    std::vector<std::vector<Check>> checks;  // per position in order
};

PreparedPiece prepare(const RGraph& host, const RootedPiece& p, std::size_t idx) {
    const auto& t = p.t;
    const std::string where = "rooted_embed: piece " + std::to_string(idx) + ": ";
    if (t.r() != host.r()) throw InvalidArgument(where + "uniformity differs from the host");
    if (p.roots.size() != p.root_images.size()) throw InvalidArgument(where + "roots and root images differ in length");
    if (!std::is_sorted(p.roots.begin(), p.roots.end()) ||
        std::adjacent_find(p.roots.begin(), p.roots.end()) != p.roots.end())
        throw InvalidArgument(where + "roots must be sorted and distinct");
    std::set<Vertex> imgs;
    for (Vertex v : p.root_images) {
        if (v < 0 || v >= host.n()) throw InvalidArgument(where + "root image outside the host");
        if (!imgs.insert(v).second) throw InvalidArgument(where + "root labelling is not injective");
    }
    std::vector<char> is_root(t.n(), 0);
    for (Vertex x : p.roots) {
        if (x < 0 || x >= t.n()) throw InvalidArgument(where + "root outside the piece");
        is_root[x] = 1;
    }
    for (const auto& e : t)
        if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return is_root[v]; }))
            throw InvalidArgument(where + "T[X] is not empty");

    PreparedPiece out;
    out.order = p.order.empty() ? rooted_degeneracy_order(t, p.roots) : p.order;
    std::vector<char> seen(t.n(), 0);
    for (Vertex v : out.order) {
        if (v < 0 || v >= t.n() || is_root[v] || seen[v]) throw InvalidArgument(where + "bad placement order");
        seen[v] = 1;
    }
    if (out.order.size() + p.roots.size() != static_cast<std::size_t>(t.n()))
        throw InvalidArgument(where + "placement order misses vertices");

    EdgeSet rooted = rooted_sets(t, p.roots);
    VertexSet placed = p.roots;
    for (Vertex u : out.order) {
        std::vector<Check> cs;
        for_each_subset(placed, t.r() - 1, [&](const VertexSet& rest) {
            VertexSet s = set_intersection(rest, p.roots);
            if (!s.empty() && !rooted.count(s)) return;
            VertexSet e = rest;
            e.insert(std::upper_bound(e.begin(), e.end(), u), u);
            cs.push_back({rest, t.contains(e)});
        });
        out.checks.push_back(std::move(cs));
        placed.insert(std::upper_bound(placed.begin(), placed.end(), u), u);
    }
    return out;
}

}  // namespace

RootedEmbedResult rooted_embed(const RGraph& host, const std::vector<RootedPiece>& pieces, std::uint64_t seed,
                               const RootedEmbedOptions& opts) {
    RootedEmbedResult res;
    res.image = RGraph(host.r(), host.n());
    if (pieces.empty()) return res;
    EdgeSet host_edges(host.begin(), host.end());
    EdgeSet used_hull;
    Rng rng(seed);
    const int n = host.n();
    std::vector<Vertex> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<char> used(n, 0);

    for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
        const auto& p = pieces[pi];
        PreparedPiece prep = prepare(host, p, pi);
        if (p.t.n() > n) throw EmbeddingFailure("rooted_embed: piece has more vertices than the host", pi);
        bool done = false;
        std::vector<Vertex> phi;
        std::vector<VertexSet> hull_images;
        for (int attempt = 0; attempt <= opts.retries && !done; ++attempt) {
            phi.assign(p.t.n(), -1);
            hull_images.clear();
            std::vector<Vertex> touched;
            for (std::size_t i = 0; i < p.roots.size(); ++i) {
                phi[p.roots[i]] = p.root_images[i];
                used[p.root_images[i]] = 1;
                touched.push_back(p.root_images[i]);
            }
            bool stuck = false;
            for (std::size_t pos = 0; pos < prep.order.size() && !stuck; ++pos) {
                const auto& cs = prep.checks[pos];
                std::vector<VertexSet> imgs(cs.size());
                Vertex chosen = -1;
                for (int i = 0; i < n && chosen < 0; ++i) {
                    std::swap(pool[i], pool[i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)))]);
                    Vertex c = pool[i];
                    if (used[c]) continue;
                    bool ok = true;
                    for (std::size_t j = 0; j < cs.size() && ok; ++j) {
                        auto& img = imgs[j];
                        img.clear();
                        for (Vertex v : cs[j].rest) img.push_back(phi[v]);
                        img.push_back(c);
                        std::sort(img.begin(), img.end());
                        if (cs[j].is_edge && !host_edges.count(img)) ok = false;
                        else if (used_hull.count(img) || opts.forbidden.count(img)) ok = false;
                    }
                    if (ok) chosen = c;
                }
                if (chosen < 0) {
                    stuck = true;
                    break;
                }
                phi[prep.order[pos]] = chosen;
                used[chosen] = 1;
                touched.push_back(chosen);
                for (auto& img : imgs) hull_images.push_back(std::move(img));
            }
            for (Vertex v : touched) used[v] = 0;
            done = !stuck;
        }
        if (!done) throw EmbeddingFailure("rooted_embed: no feasible placement for piece " + std::to_string(pi), pi);
        for (auto& img : hull_images) used_hull.insert(std::move(img));
        Embedding emb;
        emb.role_map = phi;
        for (const auto& e : p.t) res.image.add_edge(image_edge(emb, e));
        res.embeddings.push_back(std::move(emb));
    }
    if (host.r() >= 1)
        for (const auto& [s, d] : degree_table(res.image, host.r() - 1)) res.max_degree = std::max(res.max_degree, d);
    return res;
}

RootedEmbedVerdict verify_rooted_embedding(const RGraph& host, const std::vector<RootedPiece>& pieces,
                                           const std::vector<Embedding>& embeddings) {
    RootedEmbedVerdict v;
    auto fail = [&](std::string d, std::size_t i) {
        v.ok = false;
        v.detail = std::move(d);
        v.piece = i;
        return v;
    };
    if (pieces.size() != embeddings.size()) return fail("piece and embedding counts differ", 0);
    std::unordered_map<VertexSet, std::size_t, VertexSetHash> owner;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& p = pieces[i];
        const auto& phi = embeddings[i].role_map;
        if (static_cast<int>(phi.size()) != p.t.n()) return fail("role map size differs from |V(T)|", i);
        std::set<Vertex> img;
        for (Vertex x : phi) {
            if (x < 0 || x >= host.n()) return fail("image outside the host", i);
            if (!img.insert(x).second) return fail("embedding is not injective", i);
        }
        for (std::size_t j = 0; j < p.roots.size(); ++j)
            if (phi[p.roots[j]] != p.root_images[j]) return fail("embedding does not extend the root labelling", i);
        for (const auto& e : p.t)
            if (!host.contains(image_edge(embeddings[i], e))) return fail("edge image is not a host edge", i);
        for (const auto& e : hull(p.t, p.roots)) {
            auto [it, fresh] = owner.emplace(image_edge(embeddings[i], e), i);
            if (!fresh && it->second != i) return fail("hulls of two pieces share an r-set", i);
        }
    }
    return v;
}

}  // namespace fdesign
