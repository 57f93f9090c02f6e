#pragma once

#include <vector>

#include "fdesign/gf.hpp"

namespace fdesign {

// Dense matrix over a finite field, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, int rows, int cols);

    const Field& field() const { return f_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    FieldElem at(int i, int j) const { return FieldElem(f_, a_[idx(i, j)]); }
    void set(int i, int j, const FieldElem& x);
    // Raw element indices.
    int raw(int i, int j) const { return a_[idx(i, j)]; }
    void set_raw(int i, int j, int v) { a_[idx(i, j)] = v; }

    Matrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
    std::vector<FieldElem> apply(const std::vector<FieldElem>& x) const;

    static Matrix identity(const Field& f, int n);
    bool operator==(const Matrix& o) const { return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * cols_ + j; }
    Field f_;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> a_;
};

FieldElem determinant(const Matrix& m);
int rank(const Matrix& m);
// Unique x with A x = b; throws SingularMatrix when A is singular.
std::vector<FieldElem> solve_square(const Matrix& a, const std::vector<FieldElem>& b);
Matrix inverse(const Matrix& a);

// a_ij = (x_i - y_j)^{-1}; all of xs and ys must be pairwise distinct.
Matrix cauchy(const Field& f, const std::vector<FieldElem>& xs, const std::vector<FieldElem>& ys);
// Closed-form determinant of the square Cauchy matrix.
FieldElem cauchy_det(const Field& f, const std::vector<FieldElem>& xs, const std::vector<FieldElem>& ys);

}  // namespace fdesign
