#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "fdesign/rng.hpp"
#include "fdesign/set_function.hpp"
#include "fdesign/shifter.hpp"

namespace fdesign {

// (x_1..x_2k) = (x^0_1..x^0_k, x^1_1..x^1_k).
using AdapterTuple = std::vector<Vertex>;

// The 2^k corner k-sets {x_i^{z_i}} of a tuple with their signs (-1)^{sum z}.
std::vector<std::pair<VertexSet, int>> corners(const AdapterTuple& x);

// tau is (b_0..b_{k-1})-divisible and on k-sets tau = (-1)^{sum z} h_k at the
// corners and 0 elsewhere, modulo b_k. b holds b_0..b_k.
bool adapter_check(const SetFunction& tau, const AdapterTuple& x, const DivVector& b, i64 h);

// h * sum_w (-1)^|w| 1_{corner_w + Y} for an (r-k)-set Y avoiding x: exactly
// zero below level k. With padded set, b_k * (the same sum for another Y) is
// added, which is still an adapter but a different function.
SetFunction synthetic_adapter(const AdapterTuple& x, int r, int n, i64 h, i64 bk = 0, bool padded = false);

using AdapterSource = std::function<SetFunction(const AdapterTuple&)>;

AdapterSource synthetic_source(int r, int n, i64 h, i64 bk, bool padded);

// Copies the shifter template onto each tuple: root i goes to x_i, every other
// vertex to a fresh vertex numbered from first_fresh upwards.
AdapterSource shifter_source(const Shifter& t, int first_fresh);
AdapterSource shifter_source(const Multishifter& t, int first_fresh);

struct Balancer {
    int k = 0;
    int r = 0;
    DivVector b;                             // b_0..b_k
    std::vector<Vertex> u;                   // U in its order v_1..v_n
    std::map<AdapterTuple, i64> tuples;      // multiset
    i64 delta = 0;
    i64 delta_bound = 0;                     // 2^k (k!)^2 b_k
    i64 size() const;
};

// Requires C(r-s, k-s) b_s = 0 mod b_k for every s <= k.
Balancer balancer(const std::vector<Vertex>& u, int k, const DivVector& b, int r);

i64 balancer_delta(const std::map<AdapterTuple, i64>& tuples, int k);

// Chooses Omega' from the k-set residues of phi alone. phi must be
// (b_0..b_{k-1}, h)-divisible with every k-set of nonzero residue inside U.
std::map<AdapterTuple, i64> select_adapters(const SetFunction& phi, const Balancer& omega, i64 h);

struct BalanceResult {
    std::map<AdapterTuple, i64> chosen;
    SetFunction phi;  // phi + tau_{Omega'}
};

BalanceResult balance(const SetFunction& phi, const Balancer& omega, i64 h, const AdapterSource& source);

struct AutoDivResult {
    bool divisible = false;
    // phi(T) recovered exactly by inclusion-exclusion over subsets of K, with
    // every inner sum divisible by b_k.
    bool certificate = false;
};

// b holds b_0..b_k, k = b.size() - 1, |K| = 2k - 1.
AutoDivResult check_auto_div(const SetFunction& phi, const DivVector& b, const VertexSet& k_set);

// Random (b_0..b_{k-1}, h)-divisible function with nonzero k-set residues only
// inside U: signed sums of adapters at every level on tuples from U plus
// arbitrary multiples of lcm(b, h).
SetFunction random_balanceable(int r, int n, const std::vector<Vertex>& u, const DivVector& b, i64 h, Rng& rng,
                               int terms = 6);

}  // namespace fdesign
