#include "fdesign/extension.hpp"

#include <algorithm>
#include <numeric>

#include "fdesign/divisibility.hpp"
#include "fdesign/errors.hpp"

namespace fdesign {

namespace {

VertexSet range_set(int n) {
    VertexSet v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

void check_edge_of(const RGraph& g, const VertexSet& e, const char* what) {
    if (!g.contains(e)) throw InvalidArgument(std::string(what) + ": distinguished set is not an edge");
}

}  // namespace

NablaResult nabla(const MultiRGraph& h, const RGraph& f, const VertexSet& e0, const std::vector<std::vector<Vertex>>* psi) {
    if (h.r() != f.r()) throw InvalidArgument("nabla: uniformity mismatch");
    check_edge_of(f, e0, "nabla");
    const int r = f.r();
    const VertexSet others = set_difference(range_set(f.n()), e0);
    const int z = static_cast<int>(others.size());

    NablaResult out;
    for (const auto& [e, m] : h)
        for (i64 c = 0; c < m; ++c) out.instances.push_back(e);
    const std::size_t count = out.instances.size();
    if (psi && psi->size() != count) throw InvalidArgument("nabla: one orientation per edge instance is required");
    const int n = h.n() + static_cast<int>(count) * z;
    out.tilde = MultiRGraph(r, n);
    out.core = RGraph(r, n);
    out.decomposition = Packing{f, n, {}};

    for (std::size_t i = 0; i < count; ++i) {
        const VertexSet& e = out.instances[i];
        std::vector<Vertex> orient = e;
        if (psi) {
            orient = (*psi)[i];
            VertexSet chk = orient;
            std::sort(chk.begin(), chk.end());
            if (chk != e) throw InvalidArgument("nabla: orientation is not a bijection onto its edge");
        }
        Embedding emb;
        emb.role_map.assign(f.n(), -1);
        for (int j = 0; j < r; ++j) emb.role_map[e0[j]] = orient[j];
        for (int j = 0; j < z; ++j) {
            Vertex v = h.n() + static_cast<int>(i) * z + j;
            emb.role_map[others[j]] = v;
            out.fresh.push_back({i, others[j], v});
        }
        for (const auto& fe : f) {
            VertexSet img = image_edge(emb, fe);
            out.tilde.add(img);
            if (fe != e0) out.core.add_edge(img);
        }
        out.decomposition.copies.push_back(std::move(emb));
    }
    return out;
}

bool symmetric_extender_check(const RGraph& fstar, const VertexSet& estar) {
    check_edge_of(fstar, estar, "symmetric_extender_check");
    bool ok = true;
    for_each_subset(range_set(fstar.n()), fstar.r(), [&](const VertexSet& e) {
        if (ok && !set_intersection(e, estar).empty() && !fstar.contains(e)) ok = false;
    });
    return ok;
}

bool in_admissible_set(int r, i64 k, i64 m) {
    if (k < 0 || m < 0) return false;
    for (int i = 0; i <= r - 1; ++i) {
        i128 num = k - i < 0 ? 0 : static_cast<i128>(m) * binom128(k - i, r - 1 - i);
        if (num % (r - i) != 0) return false;
    }
    return true;
}

MultiRGraph canonical_multigraph(const RGraph& fstar, const VertexSet& estar, int k, i64 m) {
    const int r = fstar.r();
    if (!in_admissible_set(r, k, m)) throw InvalidArgument("canonical_multigraph: (k, m) is not admissible");
    if (!symmetric_extender_check(fstar, estar)) throw InvalidArgument("canonical_multigraph: not a symmetric extender");
    const VertexSet vp = set_difference(range_set(fstar.n()), estar);
    const int n = k + static_cast<int>(vp.size());
    MultiRGraph out(r, n);
    for_each_subset(range_set(n), r, [&](const VertexSet& e) {
        int a = static_cast<int>(std::count_if(e.begin(), e.end(), [&](Vertex v) { return v < k; }));
        i64 mult = 0;
        if (a == r) {
            mult = 0;
        } else if (a > 0) {
            i128 num = static_cast<i128>(m) * binom128(k - a, r - 1 - a);
            mult = static_cast<i64>(num / (r - a));
        } else {
            VertexSet orig;
            for (Vertex v : e) orig.push_back(vp[v - k]);
            if (fstar.contains(orig)) mult = static_cast<i64>(static_cast<i128>(m) * binom128(k, r - 1) / r);
        }
        if (mult > 0) out.add(e, mult);
    });
    return out;
}

ColouringVerdict verify_strong_colouring(const RGraph& h, const std::vector<int>& colour, int k) {
    ColouringVerdict v;
    const int r = h.r();
    if (static_cast<int>(colour.size()) < h.n()) throw InvalidArgument("verify_strong_colouring: colouring is not total");
    for (int c : colour)
        if (c < 0 || c >= k) throw InvalidArgument("verify_strong_colouring: colour outside [k]");
    std::vector<std::map<VertexSet, i64>> level(r);
    for (const auto& e : h) {
        VertexSet ce;
        for (Vertex x : e) ce.push_back(colour[x]);
        std::sort(ce.begin(), ce.end());
        if (std::adjacent_find(ce.begin(), ce.end()) != ce.end()) {
            v.strong = false;
            v.bad_edge = e;
            v.detail = "an edge repeats a colour";
            return v;
        }
        for (int i = 0; i < r; ++i) for_each_subset(ce, i, [&](const VertexSet& s) { ++level[i][s]; });
    }
    const VertexSet colours = range_set(k);
    if (r - 1 > k) {
        v.detail = "fewer colours than r - 1";
        return v;
    }
    std::optional<i64> common;
    v.regular = true;
    for_each_subset(colours, r - 1, [&](const VertexSet& s) {
        auto it = level[r - 1].find(s);
        i64 c = it == level[r - 1].end() ? 0 : it->second;
        v.counts[s] = c;
        if (!common) common = c;
        else if (*common != c) v.regular = false;
    });
    if (!v.regular) {
        v.detail = "colour classes of size r-1 have different counts";
        return v;
    }
    v.m = common.value_or(0);
    v.lower_counts_ok = true;
    for (int i = 0; i < r - 1 && v.lower_counts_ok; ++i) {
        i128 num = static_cast<i128>(v.m) * binom128(k - i, r - 1 - i);
        if (num % (r - i) != 0) {
            v.lower_counts_ok = false;
            break;
        }
        const i64 expect = static_cast<i64>(num / (r - i));
        for_each_subset(colours, i, [&](const VertexSet& s) {
            auto it = level[i].find(s);
            i64 c = it == level[i].end() ? 0 : it->second;
            if (c != expect) v.lower_counts_ok = false;
        });
    }
    if (!v.lower_counts_ok) v.detail = "smaller colour sets disagree with the double-counting formula";
    return v;
}

StrongColouring find_strong_colouring_r2(const RGraph& h, const RGraph& f) {
    if (h.r() != 2 || f.r() != 2) throw Unsupported("find_strong_colouring_r2: only r = 2 is implemented");
    auto wr = is_weakly_regular(f);
    if (!wr.regular) throw InvalidArgument("find_strong_colouring_r2: F is not weakly regular");
    auto dv = is_divisible(h, f);
    if (!dv.divisible) throw InvalidArgument("find_strong_colouring_r2: H is not F-divisible");

    const i64 s1 = wr.s[1];
    const VertexSet support = non_isolated(f);
    const int fp = static_cast<int>(support.size());
    const int hn = h.n();
    const i64 mp = hn + 1;
    std::vector<i64> hpp(hn, 0);
    for (const auto& e : h)
        for (Vertex x : e) ++hpp[x];
    for (auto& d : hpp) d /= s1;

    int k = fp;
    while (k < hn) k += fp;
    std::vector<i64> need;
    i64 t = 0;
    for (;;) {
        need.assign(k, mp);
        i64 total = 0;
        for (int i = 0; i < k; ++i) {
            if (i < hn) need[i] -= hpp[i];
            total += need[i];
        }
        if (total % fp != 0) throw InternalError("find_strong_colouring_r2: residual multigraph is not divisible");
        t = total / fp;
        if (*std::max_element(need.begin(), need.end()) <= t) break;
        k += fp;
    }

    StrongColouring out;
    out.t = t;
    out.k = k;
    out.m = s1 * mp;
    const int n = hn + static_cast<int>(t) * f.n();
    out.graph = RGraph(2, n);
    for (const auto& e : h) out.graph.add_edge(e);
    out.colour.assign(n, 0);
    for (int i = 0; i < hn; ++i) out.colour[i] = i;

    // Greedy: each round takes the f' colours with the most remaining demand.
    std::vector<int> idx(k);
    for (i64 j = 0; j < t; ++j) {
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return need[a] > need[b]; });
        VertexSet chosen(idx.begin(), idx.begin() + fp);
        std::sort(chosen.begin(), chosen.end());
        for (int c : chosen) {
            if (need[c] <= 0) throw InternalError("find_strong_colouring_r2: greedy decomposition failed");
            --need[c];
        }
        const int base = hn + static_cast<int>(j) * f.n();
        for (const auto& e : f) out.graph.add_edge({base + e[0], base + e[1]});
        for (int p = 0; p < fp; ++p) out.colour[base + support[p]] = chosen[p];
    }
    auto verdict = verify_strong_colouring(out.graph, out.colour, k);
    if (!verdict.strong || !verdict.regular || verdict.m != out.m)
        throw InternalError("find_strong_colouring_r2: constructed colouring fails verification");
    return out;
}

IdentificationVerdict verify_identification(const MultiRGraph& h, const MultiRGraph& hp, const std::vector<Vertex>& partition) {
    IdentificationVerdict v;
    if (h.r() != hp.r()) throw InvalidArgument("verify_identification: uniformity mismatch");
    if (static_cast<int>(partition.size()) < h.n()) throw InvalidArgument("verify_identification: partition is not total");
    for (int x = 0; x < h.n(); ++x)
        if (partition[x] < 0 || partition[x] >= hp.n()) throw InvalidArgument("verify_identification: class outside V(H')");
    MultiRGraph image(hp.r(), hp.n());
    for (const auto& [e, m] : h) {
        VertexSet img;
        for (Vertex x : e) img.push_back(partition[x]);
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end()) {
            v.ok = v.i1 = false;
            v.detail = "a class meets an edge twice";
            v.witness = e;
            return v;
        }
        image.add(img, m);
    }
    if (!(image == hp)) {
        v.ok = v.i2 = false;
        v.detail = "identified multiplicities differ from H'";
        for (const auto& [e, m] : hp)
            if (image.multiplicity(e) != m) {
                v.witness = e;
                return v;
            }
        for (const auto& [e, m] : image)
            if (hp.multiplicity(e) != m) {
                v.witness = e;
                return v;
            }
    }
    return v;
}

std::vector<Vertex> nabla_identification_partition(const NablaResult& nab, int h_n, const std::vector<int>& colour,
                                                   int k, const RGraph& fstar, const VertexSet& estar) {
    const VertexSet vp = set_difference(range_set(fstar.n()), estar);
    std::vector<Vertex> part(nab.core.n(), -1);
    if (static_cast<int>(colour.size()) < h_n) throw InvalidArgument("nabla_identification_partition: colouring is not total");
    for (int x = 0; x < h_n; ++x) part[x] = colour[x];
    for (const auto& z : nab.fresh) {
        auto it = std::lower_bound(vp.begin(), vp.end(), z.role);
        if (it == vp.end() || *it != z.role) throw InvalidArgument("nabla_identification_partition: role outside V(F*) \\ e*");
        part[z.vertex] = k + static_cast<Vertex>(it - vp.begin());
    }
    for (Vertex p : part)
        if (p < 0) throw InvalidArgument("nabla_identification_partition: uncovered vertex");
    return part;
}

}  // namespace fdesign
