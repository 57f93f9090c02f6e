#include "fdesign/balancer.hpp"

#include <algorithm>
#include <memory>
#include <string>
#include <unordered_map>

#include "fdesign/errors.hpp"

namespace fdesign {

namespace {

std::string show(const VertexSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

void check_tuple(const AdapterTuple& x) {
    if (x.empty() || x.size() % 2 != 0) throw InvalidArgument("adapter tuple must have 2k entries");
    VertexSet s = x;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InvalidArgument("adapter tuple entries must be distinct");
}

// sum_w (-1)^|w| 1_{corner_w + Y}, times c.
void add_corner_sum(SetFunction& phi, const AdapterTuple& x, const VertexSet& y, i64 c) {
    for (const auto& [s, sign] : corners(x)) phi.add(set_union(s, y), sign * c);
}

VertexSet first_outside(const VertexSet& avoid, int count, int from = 0) {
    VertexSet y;
    for (Vertex v = from; static_cast<int>(y.size()) < count; ++v)
        if (!std::binary_search(avoid.begin(), avoid.end(), v)) y.push_back(v);
    return y;
}

DivVector lower(const DivVector& b, std::size_t k) { return DivVector(b.begin(), b.begin() + static_cast<long>(k)); }

struct Context {
    const std::vector<Vertex>& u;
    std::unordered_map<Vertex, int> pos;
    i64 b;
    i64 h;
};

// v' = (v_l, x^0.., v_j, x^1..) with j the smallest index in [l-2k+1, l-1]
// not used by v. Indices are 1-based as positions in U.
AdapterTuple extend(const Context& c, const AdapterTuple& v, int ell) {
    const int k = static_cast<int>(v.size()) / 2 + 1;
    std::vector<char> used(2 * k + 1, 0);
    for (Vertex x : v) {
        int p = c.pos.at(x) + 1;
        if (p >= ell - 2 * k + 1) used[p - (ell - 2 * k + 1)] = 1;
    }
    int j = -1;
    for (int t = ell - 2 * k + 1; t < ell; ++t)
        if (!used[t - (ell - 2 * k + 1)]) {
            j = t;
            break;
        }
    if (j < 1) throw InternalError("balancer: no free index for the shifted tuple");
    AdapterTuple out;
    out.reserve(2 * k);
    out.push_back(c.u[ell - 1]);
    for (int i = 0; i < k - 1; ++i) out.push_back(v[i]);
    out.push_back(c.u[j - 1]);
    for (int i = k - 1; i < 2 * k - 2; ++i) out.push_back(v[i]);
    return out;
}

void build(const Context& c, int k, int len, std::map<AdapterTuple, i64>& out) {
    if (k == 1) {
        if (c.b <= 1) return;
        for (int j = 0; j + 1 < len; ++j) out[{c.u[j], c.u[j + 1]}] += c.b - 1;
        return;
    }
    for (int ell = 2 * k; ell <= len; ++ell) {
        std::map<AdapterTuple, i64> sub;
        build(c, k - 1, ell - 1, sub);
        for (const auto& [v, m] : sub) out[extend(c, v, ell)] += m;
    }
}

using Residues = std::map<VertexSet, i64>;

void apply(const Context& c, Residues& res, const AdapterTuple& x, i64 m) {
    for (const auto& [s, sign] : corners(x)) {
        i64& v = res[s];
        v = mod(v + sign * mod(m * c.h, c.b), c.b);
        if (v == 0) res.erase(s);
    }
}

std::map<AdapterTuple, i64> select(const Context& c, int k, int len, Residues res) {
    std::map<AdapterTuple, i64> chosen;
    if (k == 1) {
        for (int j = 0; j + 1 < len; ++j) {
            auto it = res.find({c.u[j]});
            const i64 cur = it == res.end() ? 0 : it->second;
            if (cur % c.h != 0) throw InternalError("balance: vertex residue not divisible by h");
            const i64 m = mod(-cur / c.h, c.b / c.h);
            if (m == 0) continue;
            AdapterTuple x{c.u[j], c.u[j + 1]};
            chosen[x] += m;
            apply(c, res, x, m);
        }
    } else {
        for (int ell = len; ell >= 2 * k; --ell) {
            const Vertex vl = c.u[ell - 1];
            Residues rho;
            for (const auto& [s, val] : res)
                if (std::binary_search(s.begin(), s.end(), vl)) rho[set_difference(s, {vl})] = val;
            auto sub = select(c, k - 1, ell - 1, std::move(rho));
            for (const auto& [v, m] : sub) {
                AdapterTuple x = extend(c, v, ell);
                chosen[x] += m;
                apply(c, res, x, m);
            }
            for (const auto& [s, val] : res)
                if (std::binary_search(s.begin(), s.end(), vl))
                    throw InternalError("balance: residue left on " + show(s) + " after shifting");
        }
    }
    if (!res.empty()) throw InternalError("balance: residue left on " + show(res.begin()->first) + " inside the final set");
    return chosen;
}

Context make_context(const std::vector<Vertex>& u, i64 b, i64 h) {
    Context c{u, {}, b, h};
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!c.pos.emplace(u[i], static_cast<int>(i)).second) throw InvalidArgument("balancer: U has a repeated vertex");
    return c;
}

}  // namespace

std::vector<std::pair<VertexSet, int>> corners(const AdapterTuple& x) {
    const int k = static_cast<int>(x.size()) / 2;
    std::vector<std::pair<VertexSet, int>> out;
    out.reserve(std::size_t{1} << k);
    for (int z = 0; z < (1 << k); ++z) {
        VertexSet s(k);
        for (int i = 0; i < k; ++i) s[i] = x[i + k * ((z >> i) & 1)];
        std::sort(s.begin(), s.end());
        out.emplace_back(std::move(s), __builtin_popcount(static_cast<unsigned>(z)) % 2 == 0 ? 1 : -1);
    }
    return out;
}

bool adapter_check(const SetFunction& tau, const AdapterTuple& x, const DivVector& b, i64 h) {
    check_tuple(x);
    const std::size_t k = x.size() / 2;
    if (b.size() != k + 1) throw InvalidArgument("adapter_check: need b_0..b_k");
    if (static_cast<int>(k) >= tau.r()) throw InvalidArgument("adapter_check: need k < r");
    const i64 bk = b[k];
    if (h <= 0 || bk % h != 0) throw InvalidArgument("adapter_check: h_k must divide b_k");
    if (tau.divisibility_violation(lower(b, k))) return false;
    auto table = tau.extension_table(static_cast<int>(k));
    std::map<VertexSet, i64> expect;
    for (const auto& [s, sign] : corners(x)) expect[s] = mod(sign * h, bk);
    for (const auto& [s, e] : expect) {
        auto it = table.find(s);
        if (mod(it == table.end() ? 0 : it->second, bk) != e) return false;
    }
    for (const auto& [s, v] : table)
        if (!expect.count(s) && mod(v, bk) != 0) return false;
    return true;
}

SetFunction synthetic_adapter(const AdapterTuple& x, int r, int n, i64 h, i64 bk, bool padded) {
    check_tuple(x);
    const int k = static_cast<int>(x.size()) / 2;
    if (k >= r) throw InvalidArgument("synthetic_adapter: need k < r");
    VertexSet xs = x;
    std::sort(xs.begin(), xs.end());
    VertexSet y = first_outside(xs, r - k);
    int top = std::max(xs.back(), y.empty() ? 0 : y.back());
    SetFunction tau(r, std::max(n, top + 1));
    add_corner_sum(tau, x, y, h);
    if (padded && bk != 0) {
        VertexSet y2 = first_outside(set_union(xs, y), r - k, y.empty() ? 0 : y.back() + 1);
        if (y2 == y) y2 = first_outside(set_union(xs, y), r - k);
        if (!y2.empty()) tau.resize(std::max(tau.n(), y2.back() + 1));
        add_corner_sum(tau, x, y2, bk);
    }
    return tau;
}

AdapterSource synthetic_source(int r, int n, i64 h, i64 bk, bool padded) {
    return [=](const AdapterTuple& x) { return synthetic_adapter(x, r, n, h, bk, padded); };
}

namespace {

template <class G>
AdapterSource make_shifter_source(G graph, int k, int first_fresh) {
    auto counter = std::make_shared<int>(0);
    const int inner = graph.n() - 2 * k;
    return [graph = std::move(graph), k, first_fresh, inner, counter](const AdapterTuple& x) {
        if (static_cast<int>(x.size()) != 2 * k) throw InvalidArgument("shifter_source: tuple has the wrong length");
        const int base = first_fresh + (*counter)++ * inner;
        std::vector<Vertex> map(graph.n());
        for (int v = 0; v < graph.n(); ++v) map[v] = v < 2 * k ? x[v] : base + v - 2 * k;
        int n = base + inner;
        for (Vertex v : x) n = std::max(n, v + 1);
        return indicator(relabel(graph, map, n));
    };
}

}  // namespace

AdapterSource shifter_source(const Shifter& t, int first_fresh) { return make_shifter_source(t.graph, t.k, first_fresh); }

AdapterSource shifter_source(const Multishifter& t, int first_fresh) {
    return make_shifter_source(t.graph, t.k, first_fresh);
}

i64 Balancer::size() const {
    i64 s = 0;
    for (const auto& [x, m] : tuples) s += m;
    return s;
}

i64 balancer_delta(const std::map<AdapterTuple, i64>& tuples, int k) {
    std::map<VertexSet, i64> deg;
    i64 best = 0;
    for (const auto& [x, m] : tuples) {
        if (static_cast<int>(x.size()) != 2 * k) throw InvalidArgument("balancer_delta: tuple has the wrong length");
        for (const auto& [s, sign] : corners(x)) best = std::max(best, deg[s] += m);
    }
    return best;
}

Balancer balancer(const std::vector<Vertex>& u, int k, const DivVector& b, int r) {
    if (k < 1 || k >= r) throw InvalidArgument("balancer: need 1 <= k < r");
    if (static_cast<int>(b.size()) != k + 1) throw InvalidArgument("balancer: need b_0..b_k");
    for (i64 x : b)
        if (x <= 0) throw InvalidArgument("balancer: moduli must be positive");
    for (int s = 0; s <= k; ++s)
        if (static_cast<i128>(binom(r - s, k - s)) * b[s] % b[k] != 0)
            throw InvalidArgument("balancer: C(r-s, k-s) b_s is not divisible by b_k for s = " + std::to_string(s));
    Balancer out;
    out.k = k;
    out.r = r;
    out.b = b;
    out.u = u;
    Context c = make_context(u, b[k], 1);
    build(c, k, static_cast<int>(u.size()), out.tuples);
    out.delta = balancer_delta(out.tuples, k);
    out.delta_bound = (i64{1} << k) * factorial(k) * factorial(k) * b[k];
    if (out.delta > out.delta_bound) throw InternalError("balancer: degree bound violated");
    return out;
}

std::map<AdapterTuple, i64> select_adapters(const SetFunction& phi, const Balancer& omega, i64 h) {
    const int k = omega.k;
    const i64 bk = omega.b[k];
    if (phi.r() != omega.r) throw InvalidArgument("balance: uniformity mismatch");
    if (h <= 0 || bk % h != 0) throw InvalidArgument("balance: h_k must divide b_k");
    DivVector pre = lower(omega.b, k);
    pre.push_back(h);
    if (auto v = phi.divisibility_violation(pre))
        throw InvalidArgument("balance: phi" + show(v->set) + " = " + std::to_string(v->value) + " is not divisible by " +
                              std::to_string(v->modulus));
    Context c = make_context(omega.u, bk, h);
    Residues res;
    for (const auto& [s, val] : phi.extension_table(k)) {
        const i64 m = mod(val, bk);
        if (m == 0) continue;
        for (Vertex v : s)
            if (!c.pos.count(v)) throw InvalidArgument("balance: nonzero residue on " + show(s) + " outside U");
        res[s] = m;
    }
    auto chosen = select(c, k, static_cast<int>(omega.u.size()), std::move(res));
    for (const auto& [x, m] : chosen) {
        auto it = omega.tuples.find(x);
        if (it == omega.tuples.end() || it->second < m) throw InternalError("balance: selection is not a sub-multiset of the balancer");
    }
    return chosen;
}

BalanceResult balance(const SetFunction& phi, const Balancer& omega, i64 h, const AdapterSource& source) {
    BalanceResult out;
    out.chosen = select_adapters(phi, omega, h);
    out.phi = phi;
    for (const auto& [x, m] : out.chosen) {
        SetFunction tau = source(x);
        if (!adapter_check(tau, x, omega.b, h))
            throw InvalidArgument("balance: adapter source returned a non-adapter for " + show(x));
        out.phi += tau * m;
    }
    if (auto v = out.phi.divisibility_violation(omega.b))
        throw InternalError("balance: result is not divisible at " + show(v->set));
    return out;
}

AutoDivResult check_auto_div(const SetFunction& phi, const DivVector& b, const VertexSet& k_set) {
    const int k = static_cast<int>(b.size()) - 1;
    const int r = phi.r();
    if (k < 1 || k >= r) throw InvalidArgument("check_auto_div: need 1 <= k < r");
    if (static_cast<int>(k_set.size()) != 2 * k - 1) throw InvalidArgument("check_auto_div: |K| must be 2k - 1");
    if (!std::is_sorted(k_set.begin(), k_set.end())) throw InvalidArgument("check_auto_div: K must be sorted");
    for (i64 x : b)
        if (x <= 0) throw InvalidArgument("check_auto_div: moduli must be positive");
    for (int i = 0; i <= k; ++i)
        if (static_cast<i128>(binom(r - i, k - i)) * b[i] % b[k] != 0)
            throw InvalidArgument("check_auto_div: C(r-i, k-i) b_i is not divisible by b_k for i = " + std::to_string(i));
    if (auto v = phi.divisibility_violation(lower(b, k)))
        throw InvalidArgument("check_auto_div: phi is not divisible at " + show(v->set));
    const auto table = phi.extension_table(k);
    for (const auto& [s, val] : table)
        if (mod(val, b[k]) != 0 && !is_subset(s, k_set))
            throw InvalidArgument("check_auto_div: nonzero residue on " + show(s) + " outside K");

    AutoDivResult out;
    out.divisible = phi.is_divisible(b);
    auto value = [&](const VertexSet& s) {
        auto it = table.find(s);
        return it == table.end() ? i64{0} : it->second;
    };
    std::vector<VertexSet> ksets;
    for_each_subset(k_set, k, [&](const VertexSet& s) { ksets.push_back(s); });
    std::map<VertexSet, i64> inner;
    bool sums_ok = true;
    for (int i = 0; i < k; ++i)
        for_each_subset(k_set, i, [&](const VertexSet& t2) {
            i64 sum = 0;
            for (const auto& t1 : ksets)
                if (is_subset(t2, t1)) sum += value(t1);
            inner[t2] = sum;
            if (mod(sum, b[k]) != 0) sums_ok = false;
        });
    bool exact = true;
    for (const auto& t : ksets) {
        const VertexSet rest = set_difference(k_set, t);
        i64 total = 0;
        for (const auto& [t2, sum] : inner)
            if (is_subset(t2, rest)) total += (t2.size() % 2 == 0 ? 1 : -1) * sum;
        if (total != value(t)) exact = false;
    }
    out.certificate = sums_ok && exact;
    if (out.certificate != out.divisible) throw InternalError("check_auto_div: certificate and direct check disagree");
    return out;
}

SetFunction random_balanceable(int r, int n, const std::vector<Vertex>& u, const DivVector& b, i64 h, Rng& rng,
                               int terms) {
    const int k = static_cast<int>(b.size()) - 1;
    SetFunction phi(r, n);
    i64 all = h;
    for (i64 x : b) all = lcm(all, x);
    const int un = static_cast<int>(u.size());
    for (int t = 0; t < terms; ++t) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(k + 2)));
        const i64 c = static_cast<i64>(rng.below(7)) - 3;
        if (c == 0) continue;
        if (j == k + 1) {
            if (n < r) continue;
            auto pick = rng.sample(n, r);
            phi.add(VertexSet(pick.begin(), pick.end()), c * all);
            continue;
        }
        // level j term: 2j tuple and (r - j)-set from U
        if (un < r + j) continue;
        i64 coeff = h;
        for (int i = j; i < k; ++i) coeff = lcm(coeff, b[i]);
        auto pick = rng.sample(un, r + j);
        AdapterTuple x;
        for (int i = 0; i < 2 * j; ++i) x.push_back(u[pick[i]]);
        VertexSet y;
        for (int i = 2 * j; i < r + j; ++i) y.push_back(u[pick[i]]);
        std::sort(y.begin(), y.end());
        add_corner_sum(phi, x, y, c * coeff);
    }
    return phi;
}

}  // namespace fdesign
