#include "fdesign/gf.hpp"

#include <map>
#include <mutex>
#include <string>

#include "fdesign/errors.hpp"

namespace fdesign {

namespace detail {

struct FieldData {
    int p = 0;
    int k = 0;
    int q = 0;
    std::vector<int> poly;
    std::vector<int> exp;  // length 2(q-1) to avoid a modulo in mul
    std::vector<int> log;
    std::vector<std::uint16_t> add_table;  // q*q, only for small q

    int add_slow(int a, int b) const {
        int out = 0, scale = 1;
        for (int i = 0; i < k; ++i) {
            int d = (a % p + b % p) % p;
            out += d * scale;
            scale *= p;
            a /= p;
            b /= p;
        }
        return out;
    }

    int neg(int a) const {
        int out = 0, scale = 1;
        for (int i = 0; i < k; ++i) {
            out += ((p - a % p) % p) * scale;
            scale *= p;
            a /= p;
        }
        return out;
    }

    int add(int a, int b) const {
        if (!add_table.empty()) return add_table[static_cast<std::size_t>(a) * q + b];
        return add_slow(a, b);
    }

    int mul(int a, int b) const {
        if (a == 0 || b == 0) return 0;
        return exp[log[a] + log[b]];
    }
};

}  // namespace detail

namespace {

std::vector<int> digits(int v, int p, int k) {
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) {
        c[i] = v % p;
        v /= p;
    }
    return c;
}

// Product of two elements given as indices, reduced modulo the monic poly.
int mul_slow(int a, int b, int p, const std::vector<int>& poly) {
    const int k = static_cast<int>(poly.size()) - 1;
    auto ca = digits(a, p, k), cb = digits(b, p, k);
    std::vector<int> prod(2 * k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
    for (int d = 2 * k - 1; d >= k; --d) {
        int c = prod[d];
        if (c == 0) continue;
        for (int i = 0; i <= k; ++i) prod[d - k + i] = ((prod[d - k + i] - c * poly[i]) % p + p) % p;
    }
    int out = 0, scale = 1;
    for (int i = 0; i < k; ++i) {
        out += prod[i] * scale;
        scale *= p;
    }
    return out;
}

// Remainder of a modulo a monic m over GF(p); both low to high.
std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& m, int p) {
    const int dm = static_cast<int>(m.size()) - 1;
    for (int d = static_cast<int>(a.size()) - 1; d >= dm; --d) {
        int c = a[d];
        if (c == 0) continue;
        for (int i = 0; i <= dm; ++i) a[d - dm + i] = ((a[d - dm + i] - c * m[i]) % p + p) % p;
    }
    a.resize(std::min<std::size_t>(a.size(), static_cast<std::size_t>(dm)));
    return a;
}

void check_poly(int p, int k, const std::vector<int>& poly) {
    if (static_cast<int>(poly.size()) != k + 1) throw InvalidArgument("field polynomial must have degree k");
    if (poly.back() != 1) throw InvalidArgument("field polynomial must be monic");
    for (int c : poly)
        if (c < 0 || c >= p) throw InvalidArgument("field polynomial coefficient out of range");
}

std::shared_ptr<const detail::FieldData> build(int p, int k, const std::vector<int>& poly) {
    if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) throw InvalidArgument("field extension degree must be at least 1");
    check_poly(p, k, poly);
    i64 q64 = 1;
    for (int i = 0; i < k; ++i) {
        q64 *= p;
        if (q64 > (1 << 20)) throw ResourceLimit("field order too large", static_cast<long double>(q64));
    }
    if (!is_irreducible(p, poly)) throw InvalidArgument("field polynomial is reducible");

    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->k = k;
    d->q = static_cast<int>(q64);
    d->poly = poly;
    const int q = d->q;
    d->log.assign(q, -1);
    d->exp.assign(2 * (q - 1), 0);
    bool found = false;
    for (int g = 1; g < q && !found; ++g) {
        int x = 1, order = 0;
        do {
            x = mul_slow(x, g, p, poly);
            ++order;
        } while (x != 1 && x != 0 && order < q);
        if (x != 1 || order != q - 1) continue;
        found = true;
        x = 1;
        for (int i = 0; i < q - 1; ++i) {
            d->exp[i] = d->exp[i + q - 1] = x;
            d->log[x] = i;
            x = mul_slow(x, g, p, poly);
        }
    }
    if (!found) throw InternalError("no primitive element found for an irreducible polynomial");
    if (q <= 1024) {
        d->add_table.resize(static_cast<std::size_t>(q) * q);
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) d->add_table[static_cast<std::size_t>(a) * q + b] = static_cast<std::uint16_t>(d->add_slow(a, b));
    }
    return d;
}

std::mutex cache_mutex;
std::map<std::pair<int, int>, std::vector<int>> irreducible_cache;
std::map<std::vector<int>, std::shared_ptr<const detail::FieldData>> field_cache;

}  // namespace

bool is_irreducible(int p, const std::vector<int>& poly) {
    const int k = static_cast<int>(poly.size()) - 1;
    if (k < 1) return false;
    if (poly.back() == 0) return false;
    if (k == 1) return true;
    for (int d = 1; d <= k / 2; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int t = 0; t < count; ++t) {
            std::vector<int> m = digits(t, p, d);
            m.push_back(1);
            auto rem = poly_rem(poly, m, p);
            bool zero = true;
            for (int c : rem) zero = zero && c == 0;
            if (zero) return false;
        }
    }
    return true;
}

std::vector<int> smallest_irreducible(int p, int k) {
    if (!is_prime(p)) throw InvalidArgument("smallest_irreducible: p is not prime");
    if (k < 1) throw InvalidArgument("smallest_irreducible: degree must be at least 1");
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = irreducible_cache.find({p, k});
        if (it != irreducible_cache.end()) return it->second;
    }
    i64 count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    if (count > (1 << 20)) throw ResourceLimit("field order too large", static_cast<long double>(count));
    for (int t = 0; t < count; ++t) {
        auto c = digits(t, p, k);
        c.push_back(1);
        if (is_irreducible(p, c)) {
            std::lock_guard<std::mutex> lock(cache_mutex);
            irreducible_cache[{p, k}] = c;
            return c;
        }
    }
    throw InternalError("no irreducible polynomial found");
}

Field Field::make(int p, int k) { return make(p, k, smallest_irreducible(p, k)); }

Field Field::make(int p, int k, const std::vector<int>& poly) {
    std::vector<int> key{p, k};
    key.insert(key.end(), poly.begin(), poly.end());
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = field_cache.find(key);
        if (it != field_cache.end()) return Field(it->second);
    }
    auto d = build(p, k, poly);
    std::lock_guard<std::mutex> lock(cache_mutex);
    field_cache.emplace(key, d);
    return Field(d);
}

Field Field::of_order(i64 q) {
    auto pp = prime_power(q);
    if (!pp) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    return make(pp->p, pp->k);
}

int Field::p() const { return d_->p; }
int Field::k() const { return d_->k; }
int Field::q() const { return d_->q; }
const std::vector<int>& Field::poly() const { return d_->poly; }

FieldElem Field::elem(int index) const { return FieldElem(*this, index); }
FieldElem Field::zero() const { return elem(0); }
FieldElem Field::one() const { return elem(1); }

FieldElem Field::from_coeffs(const std::vector<int>& c) const {
    if (static_cast<int>(c.size()) > k()) throw InvalidArgument("too many coefficients for this field");
    int v = 0, scale = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 0 || c[i] >= p()) throw InvalidArgument("coefficient out of range");
        v += c[i] * scale;
        scale *= p();
    }
    return elem(v);
}

std::vector<FieldElem> Field::elements() const {
    std::vector<FieldElem> out;
    out.reserve(q());
    for (int i = 0; i < q(); ++i) out.push_back(elem(i));
    return out;
}

int Field::add(int a, int b) const { return d_->add(a, b); }
int Field::sub(int a, int b) const { return d_->add(a, d_->neg(b)); }
int Field::neg(int a) const { return d_->neg(a); }
int Field::mul(int a, int b) const { return d_->mul(a, b); }
int Field::inv(int a) const {
    if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(q()) + ")");
    return d_->exp[(q() - 1 - d_->log[a]) % (q() - 1)];
}

bool Field::operator==(const Field& o) const {
    if (d_ == o.d_) return true;
    if (!d_ || !o.d_) return false;
    return d_->p == o.d_->p && d_->poly == o.d_->poly;
}

FieldElem::FieldElem(Field f, int index) : f_(std::move(f)), v_(index) {
    if (!f_.valid()) throw InvalidArgument("element of an uninitialised field");
    if (index < 0 || index >= f_.q()) throw InvalidArgument("field element index out of range");
}

std::vector<int> FieldElem::coeffs() const { return digits(v_, f_.p(), f_.k()); }

void FieldElem::same_field(const FieldElem& o) const {
    if (f_ != o.f_) throw InvalidArgument("field elements from different fields");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    same_field(o);
    return FieldElem(f_, f_.add(v_, o.v_));
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
    same_field(o);
    return FieldElem(f_, f_.sub(v_, o.v_));
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
    same_field(o);
    return FieldElem(f_, f_.mul(v_, o.v_));
}
FieldElem FieldElem::operator/(const FieldElem& o) const {
    same_field(o);
    return FieldElem(f_, f_.mul(v_, f_.inv(o.v_)));
}
FieldElem FieldElem::operator-() const { return FieldElem(f_, f_.neg(v_)); }
FieldElem FieldElem::inv() const { return FieldElem(f_, f_.inv(v_)); }

std::ostream& operator<<(std::ostream& os, const FieldElem& e) {
    os << '[';
    auto c = e.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    return os << ']';
}

}  // namespace fdesign
