#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace fdesign {

using i64 = std::int64_t;
__extension__ using i128 = __int128;

// Exact binomial coefficient; throws ResourceLimit on int64 overflow.
i64 binom(i64 n, i64 k);
i128 binom128(i64 n, i64 k);
i64 factorial(int n);

i64 gcd_all(const std::vector<i64>& xs);
i64 lcm(i64 a, i64 b);

// Non-negative residue of a modulo m (m > 0).
inline i64 mod(i64 a, i64 m) {
    i64 x = a % m;
    return x < 0 ? x + m : x;
}

// Extended gcd: returns g = gcd(a, b) >= 0 and sets x, y with a*x + b*y = g.
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y);

// Coefficients c with sum c_i * xs_i = gcd_all(xs).
std::vector<i64> bezout(const std::vector<i64>& xs);

bool is_prime(i64 n);

struct PrimePower {
    int p = 0;
    int k = 0;
};
std::optional<PrimePower> prime_power(i64 q);

// Smallest prime power in [lo, hi], if any.
std::optional<i64> smallest_prime_power_in(i64 lo, i64 hi);

// All k-subsets of {0..n-1} in lexicographic order are visited by advancing
// `idx` with next_combination; returns false after the last one.
bool next_combination(std::vector<int>& idx, int n);

}  // namespace fdesign
