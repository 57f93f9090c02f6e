#include "fdesign/partite.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "fdesign/errors.hpp"

namespace fdesign {

bool is_crossing(const VertexSet& s, int q) {
    std::set<int> parts;
    for (Vertex v : s)
        if (!parts.insert(partite_part(q, v)).second) return false;
    return true;
}

CauchyScheme::CauchyScheme(int q, int f, int r) : q_(q), f_(f), r_(r) {
    if (!prime_power(q)) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    if (f < 2 || r < 1 || r > f - 1) throw InvalidArgument("need 1 <= r <= f-1");
    if (2 * f > q) throw InvalidArgument("need 2f <= q");
    field_ = Field::of_order(q);
    std::vector<FieldElem> xs, ys;
    for (int i = 0; i < f - r + 1; ++i) xs.push_back(field_.elem(i));
    for (int j = 0; j < f; ++j) ys.push_back(field_.elem(f + j));
    a_ = cauchy(field_, xs, ys);

    std::vector<int> top(f - r), left(f - r), right(r);
    for (int i = 0; i < f - r; ++i) top[i] = left[i] = i;
    for (int j = 0; j < r; ++j) right[j] = f - r + j;
    Matrix b = a_.submatrix(top, left);
    Matrix c = a_.submatrix(top, right);
    Matrix binv = inverse(b);  // square Cauchy, never singular
    solve_free_ = Matrix(field_, f - r, r);
    for (int i = 0; i < f - r; ++i)
        for (int j = 0; j < r; ++j) {
            int acc = 0;
            for (int t = 0; t < f - r; ++t) acc = field_.add(acc, field_.mul(binv.raw(i, t), c.raw(t, j)));
            solve_free_.set_raw(i, j, field_.neg(acc));
        }
}

std::vector<int> CauchyScheme::coordinates(const VertexSet& clique) const {
    if (static_cast<int>(clique.size()) != f_) throw InvalidArgument("clique must have f vertices");
    std::vector<int> x(f_, -1);
    for (Vertex v : clique) {
        int part = partite_part(q_, v);
        if (part < 0 || part >= f_ || x[part] != -1) throw InvalidArgument("clique is not a crossing f-set");
        x[part] = partite_elem(q_, v);
    }
    return x;
}

ResolvableDecomposition CauchyScheme::enumerate() const {
    ResolvableDecomposition d{q_, f_, r_, std::vector<std::vector<VertexSet>>(q_)};
    const Field& F = field_;
    const int last = f_ - r_;  // row index of a_hat
    std::vector<int> free(r_, 0);
    std::vector<int> x(f_);
    for (;;) {
        for (int j = 0; j < r_; ++j) x[f_ - r_ + j] = free[j];
        for (int i = 0; i < f_ - r_; ++i) {
            int acc = 0;
            for (int j = 0; j < r_; ++j) acc = F.add(acc, F.mul(solve_free_.raw(i, j), free[j]));
            x[i] = acc;
        }
        int star = 0;
        for (int j = 0; j < f_; ++j) star = F.add(star, F.mul(a_.raw(last, j), x[j]));
        VertexSet clique(f_);
        for (int i = 0; i < f_; ++i) clique[i] = partite_vertex(q_, i, x[i]);
        d.classes[star].push_back(std::move(clique));
        int pos = r_ - 1;
        while (pos >= 0 && ++free[pos] == q_) free[pos--] = 0;
        if (pos < 0) break;
    }
    for (auto& c : d.classes) std::sort(c.begin(), c.end());
    return d;
}

bool CauchyScheme::in_null_space(const VertexSet& clique) const {
    auto x = coordinates(clique);
    for (int i = 0; i < f_ - r_; ++i) {
        int acc = 0;
        for (int j = 0; j < f_; ++j) acc = field_.add(acc, field_.mul(a_.raw(i, j), x[j]));
        if (acc != 0) return false;
    }
    return true;
}

int CauchyScheme::class_of(const VertexSet& clique) const {
    auto x = coordinates(clique);
    int star = 0;
    for (int j = 0; j < f_; ++j) star = field_.add(star, field_.mul(a_.raw(f_ - r_, j), x[j]));
    return star;
}

VertexSet CauchyScheme::clique_through(const VertexSet& e) const {
    if (static_cast<int>(e.size()) != r_ || !is_crossing(e, q_)) throw InvalidArgument("clique_through: need a crossing r-set");
    std::vector<int> fixed_cols, other_cols;
    std::vector<int> x(f_, -1);
    for (Vertex v : e) {
        int part = partite_part(q_, v);
        if (part >= f_) throw InvalidArgument("clique_through: vertex outside the host");
        x[part] = partite_elem(q_, v);
    }
    for (int j = 0; j < f_; ++j) (x[j] >= 0 ? fixed_cols : other_cols).push_back(j);
    std::vector<int> rows(f_ - r_);
    for (int i = 0; i < f_ - r_; ++i) rows[i] = i;
    Matrix lhs = a_.submatrix(rows, other_cols);
    std::vector<FieldElem> rhs;
    for (int i = 0; i < f_ - r_; ++i) {
        int acc = 0;
        for (int j : fixed_cols) acc = field_.add(acc, field_.mul(a_.raw(i, j), x[j]));
        rhs.emplace_back(field_, field_.neg(acc));
    }
    auto sol = solve_square(lhs, rhs);
    for (std::size_t t = 0; t < other_cols.size(); ++t) x[other_cols[t]] = sol[t].index();
    VertexSet clique(f_);
    for (int i = 0; i < f_; ++i) clique[i] = partite_vertex(q_, i, x[i]);
    return clique;
}

ResolvableDecomposition resolvable_decomposition(int q, int f, int r) {
    CauchyScheme scheme(q, f, r);
    auto d = scheme.enumerate();
    i64 total = 0;
    i64 per_class = 1;
    for (int i = 0; i < r - 1; ++i) per_class *= q;
    for (const auto& c : d.classes) {
        if (static_cast<i64>(c.size()) != per_class) throw InternalError("class size differs from q^(r-1)");
        total += static_cast<i64>(c.size());
    }
    if (total != per_class * q) throw InternalError("|Y| differs from q^r");
    return d;
}

namespace {

// The lexicographically first crossing s-set (over parts 0..f-1 of size q)
// that `covered` does not contain.
VertexSet first_missing_crossing(int q, int f, int s, const std::unordered_map<VertexSet, int, VertexSetHash>& covered) {
    VertexSet parts(f);
    for (int i = 0; i < f; ++i) parts[i] = i;
    VertexSet result;
    bool done = false;
    for_each_subset(parts, s, [&](const VertexSet& ps) {
        if (done) return;
        std::vector<int> x(s, 0);
        for (;;) {
            VertexSet e(s);
            for (int t = 0; t < s; ++t) e[t] = partite_vertex(q, ps[t], x[t]);
            if (!covered.count(e) && (!done || e < result)) {
                result = e;
                done = true;
                return;
            }
            int pos = s - 1;
            while (pos >= 0 && ++x[pos] == q) x[pos--] = 0;
            if (pos < 0) break;
        }
    });
    return result;
}

}  // namespace

ResolvableVerdict verify_resolvable(const ResolvableDecomposition& d) {
    ResolvableVerdict v;
    auto fail = [&](std::string msg, VertexSet w, int c) {
        v.ok = false;
        v.violation = std::move(msg);
        v.witness = std::move(w);
        v.clazz = c;
        return v;
    };
    if (d.q < 1 || d.f < 2 || d.r < 1 || d.r > d.f - 1) return fail("invalid parameters", {}, -1);

    std::unordered_map<VertexSet, int, VertexSetHash> global;
    std::set<VertexSet> cliques;
    for (int c = 0; c < static_cast<int>(d.classes.size()); ++c) {
        std::unordered_map<VertexSet, int, VertexSetHash> local;
        for (const auto& q : d.classes[c]) {
            if (static_cast<int>(q.size()) != d.f || !std::is_sorted(q.begin(), q.end()))
                return fail("clique is not a sorted f-set", q, c);
            for (Vertex x : q)
                if (x < 0 || x >= d.q * d.f) return fail("clique vertex outside the host", q, c);
            if (!is_crossing(q, d.q)) return fail("clique is not crossing", q, c);
            if (!cliques.insert(q).second) return fail("clique appears twice (classes not disjoint)", q, c);
            bool bad = false;
            VertexSet witness;
            for_each_subset(q, d.r, [&](const VertexSet& e) {
                if (++global[e] > 1 && !bad) {
                    bad = true;
                    witness = e;
                }
            });
            if (bad) return fail("crossing r-set covered more than once", witness, c);
            for_each_subset(q, d.r - 1, [&](const VertexSet& e) {
                if (++local[e] > 1 && !bad) {
                    bad = true;
                    witness = e;
                }
            });
            if (bad) return fail("crossing (r-1)-set covered more than once in one class", witness, c);
        }
        i128 expect_local = binom128(d.f, d.r - 1);
        for (int i = 0; i < d.r - 1; ++i) expect_local *= d.q;
        if (static_cast<i128>(local.size()) != expect_local)
            return fail("crossing (r-1)-set not covered by this class", first_missing_crossing(d.q, d.f, d.r - 1, local), c);
    }
    i128 expect = binom128(d.f, d.r);
    for (int i = 0; i < d.r; ++i) expect *= d.q;
    if (static_cast<i128>(global.size()) != expect)
        return fail("crossing r-set not covered", first_missing_crossing(d.q, d.f, d.r, global), -1);
    return v;
}

}  // namespace fdesign
