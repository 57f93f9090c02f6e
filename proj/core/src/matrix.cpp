#include "fdesign/matrix.hpp"

#include <set>

#include "fdesign/errors.hpp"

namespace fdesign {

Matrix::Matrix(Field f, int rows, int cols) : f_(std::move(f)), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw InvalidArgument("matrix dimensions must be non-negative");
    a_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

void Matrix::set(int i, int j, const FieldElem& x) {
    if (x.field() != f_) throw InvalidArgument("matrix entry from a different field");
    a_[idx(i, j)] = x.index();
}

Matrix Matrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
    Matrix out(f_, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out.set_raw(static_cast<int>(i), static_cast<int>(j), raw(rows[i], cols[j]));
    return out;
}

std::vector<FieldElem> Matrix::apply(const std::vector<FieldElem>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw InvalidArgument("matrix-vector size mismatch");
    std::vector<FieldElem> out;
    out.reserve(rows_);
    for (int i = 0; i < rows_; ++i) {
        int acc = 0;
        for (int j = 0; j < cols_; ++j) acc = f_.add(acc, f_.mul(raw(i, j), x[j].index()));
        out.emplace_back(f_, acc);
    }
    return out;
}

Matrix Matrix::identity(const Field& f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.set_raw(i, i, 1);
    return m;
}

namespace {

// Gaussian elimination on an augmented copy. Returns the rank of the left
// block and leaves it in reduced row echelon form; `det` receives the
// determinant when the left block is square.
int eliminate(Matrix& m, int left_cols, int* det) {
    const Field& f = m.field();
    int row = 0;
    int d = 1;
    for (int col = 0; col < left_cols && row < m.rows(); ++col) {
        int piv = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m.raw(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) {
            d = 0;
            continue;
        }
        if (piv != row) {
            for (int j = 0; j < m.cols(); ++j) {
                int t = m.raw(row, j);
                m.set_raw(row, j, m.raw(piv, j));
                m.set_raw(piv, j, t);
            }
            d = f.neg(d);
        }
        int pv = m.raw(row, col);
        d = f.mul(d, pv);
        int pinv = f.inv(pv);
        for (int j = 0; j < m.cols(); ++j) m.set_raw(row, j, f.mul(m.raw(row, j), pinv));
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m.raw(i, col) == 0) continue;
            int factor = m.raw(i, col);
            for (int j = 0; j < m.cols(); ++j) m.set_raw(i, j, f.sub(m.raw(i, j), f.mul(factor, m.raw(row, j))));
        }
        ++row;
    }
    if (row < left_cols) d = 0;
    if (det) *det = d;
    return row;
}

}  // namespace

FieldElem determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
    if (m.rows() == 0) return m.field().one();
    Matrix w = m;
    int d = 0;
    eliminate(w, w.cols(), &d);
    return FieldElem(m.field(), d);
}

int rank(const Matrix& m) {
    Matrix w = m;
    return eliminate(w, w.cols(), nullptr);
}

std::vector<FieldElem> solve_square(const Matrix& a, const std::vector<FieldElem>& b) {
    if (a.rows() != a.cols()) throw InvalidArgument("solve_square: matrix is not square");
    if (static_cast<int>(b.size()) != a.rows()) throw InvalidArgument("solve_square: right-hand side size mismatch");
    const int n = a.rows();
    Matrix w(a.field(), n, n + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w.set_raw(i, j, a.raw(i, j));
        if (b[i].field() != a.field()) throw InvalidArgument("solve_square: right-hand side from another field");
        w.set_raw(i, n, b[i].index());
    }
    if (eliminate(w, n, nullptr) < n) throw SingularMatrix("solve_square: matrix is singular");
    std::vector<FieldElem> x;
    x.reserve(n);
    for (int i = 0; i < n; ++i) x.emplace_back(a.field(), w.raw(i, n));
    return x;
}

Matrix inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw InvalidArgument("inverse: matrix is not square");
    const int n = a.rows();
    Matrix w(a.field(), n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w.set_raw(i, j, a.raw(i, j));
        w.set_raw(i, n + i, 1);
    }
    if (eliminate(w, n, nullptr) < n) throw SingularMatrix("inverse: matrix is singular");
    Matrix out(a.field(), n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.set_raw(i, j, w.raw(i, n + j));
    return out;
}

namespace {

void check_cauchy_data(const Field& f, const std::vector<FieldElem>& xs, const std::vector<FieldElem>& ys) {
    std::set<int> seen;
    for (const auto* v : {&xs, &ys})
        for (const auto& e : *v) {
            if (e.field() != f) throw InvalidArgument("cauchy: element from a different field");
            if (!seen.insert(e.index()).second) throw InvalidArgument("cauchy: generator elements must be pairwise distinct");
        }
}

}  // namespace

Matrix cauchy(const Field& f, const std::vector<FieldElem>& xs, const std::vector<FieldElem>& ys) {
    check_cauchy_data(f, xs, ys);
    Matrix m(f, static_cast<int>(xs.size()), static_cast<int>(ys.size()));
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) m.set(static_cast<int>(i), static_cast<int>(j), (xs[i] - ys[j]).inv());
    return m;
}

FieldElem cauchy_det(const Field& f, const std::vector<FieldElem>& xs, const std::vector<FieldElem>& ys) {
    check_cauchy_data(f, xs, ys);
    if (xs.size() != ys.size()) throw InvalidArgument("cauchy_det: data is not square");
    const std::size_t n = xs.size();
    FieldElem num = f.one(), den = f.one();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) num *= (xs[j] - xs[i]) * (ys[i] - ys[j]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) den *= xs[i] - ys[j];
    return num / den;
}

}  // namespace fdesign
