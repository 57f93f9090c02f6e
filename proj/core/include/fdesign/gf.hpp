#pragma once

#include <memory>
#include <ostream>
#include <vector>

#include "fdesign/combinatorics.hpp"

namespace fdesign {

namespace detail {
struct FieldData;
}

class FieldElem;

// GF(p^k) defined by a monic irreducible polynomial (coefficients low to high,
// length k+1). Elements are indexed by sum c_i p^i over their coefficient
// vectors; that index order is the canonical enumeration order.
class Field {
public:
    Field() = default;
    // Uses the smallest monic irreducible polynomial of degree k.
    static Field make(int p, int k);
    static Field make(int p, int k, const std::vector<int>& poly);
    static Field of_order(i64 q);

    int p() const;
    int k() const;
    int q() const;
    const std::vector<int>& poly() const;

    FieldElem elem(int index) const;
    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_coeffs(const std::vector<int>& c) const;
    std::vector<FieldElem> elements() const;

    // Arithmetic on element indices.
    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const;
    int inv(int a) const;

    bool valid() const { return static_cast<bool>(d_); }
    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
    std::shared_ptr<const detail::FieldData> d_;
};

class FieldElem {
public:
    FieldElem() = default;
    FieldElem(Field f, int index);

    const Field& field() const { return f_; }
    int index() const { return v_; }
    std::vector<int> coeffs() const;
    bool is_zero() const { return v_ == 0; }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem inv() const;
    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

    bool operator==(const FieldElem& o) const { return v_ == o.v_ && f_ == o.f_; }
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

private:
    void same_field(const FieldElem& o) const;
    Field f_;
    int v_ = 0;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& e);

bool is_irreducible(int p, const std::vector<int>& poly);
// Smallest (by coefficient index) monic irreducible of degree k over GF(p).
std::vector<int> smallest_irreducible(int p, int k);

}  // namespace fdesign
