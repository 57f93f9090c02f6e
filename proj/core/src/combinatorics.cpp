#include "fdesign/combinatorics.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "fdesign/errors.hpp"

namespace fdesign {

i128 binom128(i64 n, i64 k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    i128 result = 1;
    const i128 cap = (static_cast<i128>(1) << 120);
    for (i64 i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result > cap) throw ResourceLimit("binomial coefficient too large", static_cast<long double>(result));
    }
    return result;
}

i64 binom(i64 n, i64 k) {
    i128 v = binom128(n, k);
    if (v > std::numeric_limits<i64>::max())
        throw ResourceLimit("binomial coefficient exceeds 64 bits", static_cast<long double>(v));
    return static_cast<i64>(v);
}

i64 factorial(int n) {
    if (n < 0) throw InvalidArgument("factorial of a negative number");
    if (n > 20) throw ResourceLimit("factorial exceeds 64 bits", 0);
    i64 f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

i64 gcd_all(const std::vector<i64>& xs) {
    i64 g = 0;
    for (i64 x : xs) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

i64 lcm(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    x = old_s;
    y = old_t;
    return old_r;
}

std::vector<i64> bezout(const std::vector<i64>& xs) {
    std::vector<i64> coef(xs.size(), 0);
    i64 g = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == 0) continue;
        i64 a, b;
        i64 ng = ext_gcd(g, xs[i], a, b);
        for (std::size_t j = 0; j < i; ++j) coef[j] *= a;
        coef[i] = b;
        g = ng;
    }
    return coef;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::optional<PrimePower> prime_power(i64 q) {
    if (q < 2) return std::nullopt;
    i64 p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) p = q;
    int k = 0;
    i64 m = q;
    while (m % p == 0) { m /= p; ++k; }
    if (m != 1) return std::nullopt;
    return PrimePower{static_cast<int>(p), k};
}

std::optional<i64> smallest_prime_power_in(i64 lo, i64 hi) {
    for (i64 q = std::max<i64>(lo, 2); q <= hi; ++q)
        if (prime_power(q)) return q;
    return std::nullopt;
}

bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
}

}  // namespace fdesign
