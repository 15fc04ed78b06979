#ifndef SEGRE_MATRIX_HPP
#define SEGRE_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "segre/error.hpp"
#include "segre/rational.hpp"

namespace segre {

// Dense exact matrix, row-major. All eliminations pick the first nonzero
// pivot in column order, so ranks, pivot columns and kernel bases are
// deterministic functions of the entries.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        e_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw shape_error("matrix: ragged initializer");
            for (const auto& x : r) e_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    Rational& at(std::size_t r, std::size_t c) {
        if (r >= rows_ || c >= cols_) throw shape_error("matrix: index out of range");
        return e_[r * cols_ + c];
    }
    const Rational& at(std::size_t r, std::size_t c) const {
        return const_cast<Matrix*>(this)->at(r, c);
    }

    bool is_zero() const {
        for (const auto& x : e_) if (!x.is_zero()) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw shape_error("matrix: product shape mismatch");
        Matrix p(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& ark = a(r, k);
                if (ark.is_zero()) continue;
                for (std::size_t c = 0; c < b.cols_; ++c) p(r, c) += ark * b(k, c);
            }
        return p;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw shape_error("matrix: sum shape mismatch");
        Matrix s = a;
        for (std::size_t i = 0; i < s.e_.size(); ++i) s.e_[i] += b.e_[i];
        return s;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw shape_error("matrix: difference shape mismatch");
        Matrix s = a;
        for (std::size_t i = 0; i < s.e_.size(); ++i) s.e_[i] -= b.e_[i];
        return s;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        for (std::size_t r = 0; r < m.rows_; ++r) {
            os << (r ? "\n[" : "[");
            for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m(r, c);
            os << "]";
        }
        return os;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> e_;
};

inline std::vector<Rational> operator*(const Matrix& m, const std::vector<Rational>& v) {
    if (m.cols() != v.size()) throw shape_error("matrix: vector length mismatch");
    std::vector<Rational> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m(r, c).is_zero()) out[r] += m(r, c) * v[c];
    return out;
}

// Reduced row echelon form. Pivot in each column is the first nonzero
// entry below the current pivot row; optionally reports pivot columns.
inline Matrix rref(Matrix m, std::vector<std::size_t>* pivot_cols = nullptr) {
    if (pivot_cols) pivot_cols->clear();
    std::size_t pr = 0;
    for (std::size_t c = 0; c < m.cols() && pr < m.rows(); ++c) {
        std::size_t sel = pr;
        while (sel < m.rows() && m(sel, c).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != pr)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pr, k), m(sel, k));
        const Rational inv = Rational(1) / m(pr, c);
        for (std::size_t k = c; k < m.cols(); ++k) m(pr, k) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == pr || m(r, c).is_zero()) continue;
            const Rational f = m(r, c);
            for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= f * m(pr, k);
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++pr;
    }
    return m;
}

// Exact rank via forward elimination (no normalization needed).
inline std::size_t rank(Matrix m) {
    std::size_t pr = 0;
    for (std::size_t c = 0; c < m.cols() && pr < m.rows(); ++c) {
        std::size_t sel = pr;
        while (sel < m.rows() && m(sel, c).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != pr)
            for (std::size_t k = c; k < m.cols(); ++k) std::swap(m(pr, k), m(sel, k));
        const Rational& p = m(pr, c);
        for (std::size_t r = pr + 1; r < m.rows(); ++r) {
            if (m(r, c).is_zero()) continue;
            const Rational f = m(r, c) / p;
            m(r, c) = Rational(0);
            for (std::size_t k = c + 1; k < m.cols(); ++k) m(r, k) -= f * m(pr, k);
        }
        ++pr;
    }
    return pr;
}

// Kernel basis from the reduced echelon parameterization: one vector per
// free column (ascending), free variable set to 1, then the whole vector
// scaled so its first nonzero coordinate is positive. Size = cols - rank.
inline std::vector<std::vector<Rational>> kernel_basis(const Matrix& m) {
    std::vector<std::size_t> piv;
    Matrix r = rref(m, &piv);
    std::vector<bool> is_piv(m.cols(), false);
    for (std::size_t c : piv) is_piv[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        std::vector<Rational> v(m.cols());
        v[f] = Rational(1);
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
        for (const auto& x : v) {
            if (x.is_zero()) continue;
            if (x.sign() < 0)
                for (auto& y : v) y = -y;
            break;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Exact determinant by Gaussian elimination with row swaps.
inline Rational det(Matrix m) {
    if (m.rows() != m.cols()) throw shape_error("det: matrix not square");
    Rational d(1);
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && m(sel, c).is_zero()) ++sel;
        if (sel == n) return Rational(0);
        if (sel != c) {
            for (std::size_t k = c; k < n; ++k) std::swap(m(c, k), m(sel, k));
            d = -d;
        }
        d *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c).is_zero()) continue;
            const Rational f = m(r, c) / m(c, c);
            for (std::size_t k = c + 1; k < n; ++k) m(r, k) -= f * m(c, k);
        }
    }
    return d;
}

// Determinant and adjugate of a 3x3 by cofactors; m * adj = det * I holds
// entry-exactly for every input, including singular ones.
inline std::pair<Rational, Matrix> det3_adjugate(const Matrix& m) {
    if (m.rows() != 3 || m.cols() != 3) throw shape_error("det3_adjugate: need 3x3");
    auto cof = [&m](std::size_t r, std::size_t c) {
        const std::size_t r1 = (r + 1) % 3, r2 = (r + 2) % 3;
        const std::size_t c1 = (c + 1) % 3, c2 = (c + 2) % 3;
        return m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1);
    };
    Matrix adj(3, 3);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) adj(c, r) = cof(r, c);
    const Rational d = m(0, 0) * cof(0, 0) + m(0, 1) * cof(0, 1) + m(0, 2) * cof(0, 2);
    return {d, adj};
}

// Left inverse of a full-column-rank matrix: L with L * e = I. Obtained by
// row-reducing [e | I]; throws if the columns are dependent.
inline Matrix left_inverse(const Matrix& e) {
    const std::size_t d = e.rows(), r = e.cols();
    Matrix aug(d, r + d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < r; ++j) aug(i, j) = e(i, j);
        aug(i, r + i) = Rational(1);
    }
    std::vector<std::size_t> piv;
    Matrix red = rref(aug, &piv);
    std::size_t lead = 0;
    for (std::size_t c : piv)
        if (c < r) ++lead;
    if (lead != r) throw contract_error("left_inverse: columns are dependent");
    Matrix l(r, d);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < d; ++j) l(i, j) = red(i, r + j);
    return l;
}

} // namespace segre

#endif
