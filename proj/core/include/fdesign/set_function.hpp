#pragma once

#include <map>
#include <optional>
#include <vector>

#include "fdesign/divisibility.hpp"
#include "fdesign/hypergraph.hpp"

namespace fdesign {

// phi: r-subsets of {0..n-1} -> Z, stored sparsely. On smaller sets phi is
// extended by summing over r-supersets.
class SetFunction {
public:
    SetFunction() = default;
    SetFunction(int r, int n);

    int r() const { return r_; }
    int n() const { return n_; }
    const std::map<VertexSet, i64>& values() const { return values_; }
    bool is_zero() const { return values_.empty(); }

    // Any |S| <= r.
    i64 operator()(const VertexSet& s) const;
    void set(VertexSet e, i64 v);
    void add(VertexSet e, i64 v);
    void resize(int n);

    SetFunction& operator+=(const SetFunction& o);
    SetFunction operator+(const SetFunction& o) const;
    SetFunction operator*(i64 c) const;
    bool operator==(const SetFunction& o) const { return r_ == o.r_ && n_ == o.n_ && values_ == o.values_; }

    // phi(S) for every i-set S meeting the support (entries may be 0).
    DegreeTable extension_table(int i) const;

    // Lexicographically first S (by size, then by content) with |S| < b.size()
    // and b_|S| not dividing phi(S).
    struct Violation {
        VertexSet set;
        i64 value = 0;
        i64 modulus = 1;
    };
    std::optional<Violation> divisibility_violation(const DivVector& b) const;
    bool is_divisible(const DivVector& b) const { return !divisibility_violation(b); }

private:
    void check_set(const VertexSet& e) const;
    int r_ = 0;
    int n_ = 0;
    std::map<VertexSet, i64> values_;
};

SetFunction indicator(const RGraph& g);
SetFunction indicator(const MultiRGraph& g);

}  // namespace fdesign
