#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "errors.hpp"

namespace supchan {

using complexd = std::complex<double>;

// Dense complex matrix, row-major.  Everything in this library lives in
// dimension <= 9 or so; no attempt is made to be clever about storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
    }

    static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<complexd>> rows) {
        int r = static_cast<int>(rows.size());
        int c = r ? static_cast<int>(rows.begin()->size()) : 0;
        ComplexMatrix m(r, c);
        int i = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != c)
                throw DimensionMismatch("ragged initializer");
            int j = 0;
            for (const auto& v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    // Column vector (ket).
    static ComplexMatrix column(std::initializer_list<complexd> entries) {
        ComplexMatrix m(static_cast<int>(entries.size()), 1);
        int i = 0;
        for (const auto& v : entries) m(i++, 0) = v;
        return m;
    }

    static ComplexMatrix basis_ket(int dim, int k) {
        ComplexMatrix m(dim, 1);
        m(k, 0) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    complexd& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const complexd& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    ComplexMatrix dagger() const {
        ComplexMatrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    complexd trace() const {
        if (!is_square()) throw NotSquare("trace of non-square matrix");
        complexd t = 0.0;
        for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_shape(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_shape(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }

    ComplexMatrix& operator*=(complexd s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

private:
    void check_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch("matrix shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<complexd> a_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(complexd s, ComplexMatrix a) { return a *= s; }
inline ComplexMatrix operator*(ComplexMatrix a, complexd s) { return a *= s; }

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            complexd aik = a(i, k);
            if (aik == complexd(0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            complexd aij = a(i, j);
            if (aij == complexd(0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

inline double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix shape mismatch");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

inline bool all_finite(const ComplexMatrix& a) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    return true;
}

inline double hermiticity_gap(const ComplexMatrix& a) {
    if (!a.is_square()) throw NotSquare("hermiticity check on non-square matrix");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

inline bool is_hermitian(const ComplexMatrix& a, double tol = 1e-10) {
    return hermiticity_gap(a) <= tol;
}

// u v^dagger for column vectors.
inline ComplexMatrix outer(const ComplexMatrix& u, const ComplexMatrix& v) {
    if (u.cols() != 1 || v.cols() != 1) throw DimensionMismatch("outer expects column vectors");
    return u * v.dagger();
}

// <u|v> for column vectors.
inline complexd inner(const ComplexMatrix& u, const ComplexMatrix& v) {
    if (u.cols() != 1 || v.cols() != 1 || u.rows() != v.rows())
        throw DimensionMismatch("inner expects equal-length column vectors");
    complexd s = 0.0;
    for (int i = 0; i < u.rows(); ++i) s += std::conj(u(i, 0)) * v(i, 0);
    return s;
}

inline double vec_norm(const ComplexMatrix& u) { return std::sqrt(std::abs(inner(u, u))); }

// Orthogonal companion of a qubit ket (a,b) -> (conj(b), -conj(a)).
inline ComplexMatrix perp(const ComplexMatrix& v) {
    if (v.rows() != 2 || v.cols() != 1) throw DimensionMismatch("perp expects a qubit ket");
    return ComplexMatrix::column({std::conj(v(1, 0)), -std::conj(v(0, 0))});
}

}  // namespace supchan
