#pragma once

#include <vector>

#include "padl/ring.hpp"

namespace padl {

// Dense matrices over a ring context.  Row-major.

template <class Ring>
struct Matrix {
    using Elem = typename Ring::Elem;
    size_t rows = 0, cols = 0;
    std::vector<Elem> data;

    Matrix() = default;
    Matrix(const Ring& R, size_t r, size_t c) : rows(r), cols(c), data(r * c, R.zero()) {}

    Elem& at(size_t i, size_t j) { return data[i * cols + j]; }
    const Elem& at(size_t i, size_t j) const { return data[i * cols + j]; }

    static Matrix identity(const Ring& R, size_t n) {
        Matrix m(R, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = R.one();
        return m;
    }
};

template <class Ring>
Matrix<Ring> mat_add(const Ring& R, const Matrix<Ring>& a, const Matrix<Ring>& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw MathDomainError("mat_add: shape mismatch");
    Matrix<Ring> r(R, a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i] + b.data[i];
    return r;
}

template <class Ring>
Matrix<Ring> mat_sub(const Ring& R, const Matrix<Ring>& a, const Matrix<Ring>& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw MathDomainError("mat_sub: shape mismatch");
    Matrix<Ring> r(R, a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i] - b.data[i];
    return r;
}

template <class Ring>
Matrix<Ring> mat_scale(const Ring& R, const Matrix<Ring>& a,
                       const typename Ring::Elem& s) {
    Matrix<Ring> r(R, a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i] * s;
    return r;
}

template <class Ring>
Matrix<Ring> mat_mul(const Ring& R, const Matrix<Ring>& a, const Matrix<Ring>& b) {
    if (a.cols != b.rows) throw MathDomainError("mat_mul: shape mismatch");
    Matrix<Ring> r(R, a.rows, b.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t k = 0; k < a.cols; ++k) {
            const auto& aik = a.at(i, k);
            if (Ring::is_zero(aik)) continue;
            for (size_t j = 0; j < b.cols; ++j)
                r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
        }
    return r;
}

template <class Ring>
std::vector<typename Ring::Elem> mat_apply(const Ring& R, const Matrix<Ring>& a,
                                           const std::vector<typename Ring::Elem>& v) {
    if (a.cols != v.size()) throw MathDomainError("mat_apply: shape mismatch");
    std::vector<typename Ring::Elem> r(a.rows, R.zero());
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j)
            if (!Ring::is_zero(a.at(i, j))) r[i] = r[i] + a.at(i, j) * v[j];
    return r;
}

template <class Ring>
Matrix<Ring> mat_transpose(const Ring& R, const Matrix<Ring>& a) {
    Matrix<Ring> r(R, a.cols, a.rows);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
    return r;
}

template <class Ring>
Matrix<Ring> mat_pow(const Ring& R, Matrix<Ring> a, long e) {
    if (a.rows != a.cols) throw MathDomainError("mat_pow: not square");
    if (e < 0) throw MathDomainError("mat_pow: negative exponent");
    auto r = Matrix<Ring>::identity(R, a.rows);
    while (e > 0) {
        if (e & 1) r = mat_mul(R, r, a);
        a = mat_mul(R, a, a);
        e >>= 1;
    }
    return r;
}

// Row echelon form by Gaussian elimination, choosing at each step the pivot of
// best (lowest) pivot_quality to keep p-adic precision loss minimal.  Returns
// the echelonized matrix; records pivot columns, and optionally accumulates
// the row operations into `transform` (must start as identity of size rows).
template <class Ring>
Matrix<Ring> echelonize(const Ring& R, Matrix<Ring> m, std::vector<size_t>& pivot_cols,
                        Matrix<Ring>* transform = nullptr) {
    pivot_cols.clear();
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        // best pivot in this column at or below `row`
        size_t best = m.rows;
        long best_q = 0;
        for (size_t i = row; i < m.rows; ++i) {
            if (!Ring::is_invertible(m.at(i, col))) continue;
            long q = Ring::pivot_quality(m.at(i, col));
            if (best == m.rows || q < best_q) { best = i; best_q = q; }
        }
        if (best == m.rows) continue;
        if (best != row) {
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(row, j), m.at(best, j));
            if (transform)
                for (size_t j = 0; j < transform->cols; ++j)
                    std::swap(transform->at(row, j), transform->at(best, j));
        }
        auto pinv = Ring::inv(m.at(row, col));
        for (size_t j = 0; j < m.cols; ++j) m.at(row, j) = m.at(row, j) * pinv;
        if (transform)
            for (size_t j = 0; j < transform->cols; ++j)
                transform->at(row, j) = transform->at(row, j) * pinv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == row || Ring::is_zero(m.at(i, col))) continue;
            auto f = m.at(i, col);
            for (size_t j = 0; j < m.cols; ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(row, j);
            if (transform)
                for (size_t j = 0; j < transform->cols; ++j)
                    transform->at(i, j) = transform->at(i, j) - f * transform->at(row, j);
        }
        pivot_cols.push_back(col);
        ++row;
    }
    return m;
}

template <class Ring>
size_t mat_rank(const Ring& R, const Matrix<Ring>& m) {
    std::vector<size_t> piv;
    echelonize(R, m, piv);
    return piv.size();
}

// Basis of the right kernel, as columns of the returned matrix.
template <class Ring>
Matrix<Ring> mat_kernel(const Ring& R, const Matrix<Ring>& m) {
    std::vector<size_t> piv;
    auto e = echelonize(R, m, piv);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t c : piv) is_pivot[c] = true;
    size_t nfree = m.cols - piv.size();
    Matrix<Ring> ker(R, m.cols, nfree);
    size_t kcol = 0;
    for (size_t fc = 0; fc < m.cols; ++fc) {
        if (is_pivot[fc]) continue;
        ker.at(fc, kcol) = R.one();
        for (size_t r = 0; r < piv.size(); ++r)
            ker.at(piv[r], kcol) = R.zero() - e.at(r, fc);
        ++kcol;
    }
    return ker;
}

template <class Ring>
Matrix<Ring> mat_inverse(const Ring& R, const Matrix<Ring>& m) {
    if (m.rows != m.cols) throw MathDomainError("mat_inverse: not square");
    auto t = Matrix<Ring>::identity(R, m.rows);
    std::vector<size_t> piv;
    auto e = echelonize(R, m, piv, &t);
    if (piv.size() != m.rows) throw MathDomainError("mat_inverse: singular matrix");
    return t;
}

// Solve m x = b; throws if inconsistent.  b may have several columns.
template <class Ring>
Matrix<Ring> mat_solve(const Ring& R, const Matrix<Ring>& m, const Matrix<Ring>& b) {
    if (m.rows != b.rows) throw MathDomainError("mat_solve: shape mismatch");
    auto t = Matrix<Ring>::identity(R, m.rows);
    std::vector<size_t> piv;
    auto e = echelonize(R, m, piv, &t);
    auto tb = mat_mul(R, t, b);
    // rows beyond the pivot count must vanish
    for (size_t i = piv.size(); i < m.rows; ++i)
        for (size_t j = 0; j < b.cols; ++j)
            if (!Ring::is_zero(tb.at(i, j)))
                throw MathDomainError("mat_solve: inconsistent system");
    Matrix<Ring> x(R, m.cols, b.cols);
    for (size_t r = 0; r < piv.size(); ++r)
        for (size_t j = 0; j < b.cols; ++j) x.at(piv[r], j) = tb.at(r, j);
    return x;
}

// Characteristic polynomial (monic, coefficient of X^k at index k) by the
// Faddeev–LeVerrier recursion.  Divides by 1..n, so over p-adic scalars some
// precision is spent when p ≤ n.
template <class Ring>
std::vector<typename Ring::Elem> mat_charpoly(const Ring& R, const Matrix<Ring>& a) {
    if (a.rows != a.cols) throw MathDomainError("mat_charpoly: not square");
    size_t n = a.rows;
    std::vector<typename Ring::Elem> c(n + 1, R.zero());
    c[n] = R.one();
    auto m = Matrix<Ring>(R, n, n); // M_0 = 0
    for (size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        m = mat_mul(R, a, m);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = m.at(i, i) + c[n - k + 1];
        auto am = mat_mul(R, a, m);
        auto tr = R.zero();
        for (size_t i = 0; i < n; ++i) tr = tr + am.at(i, i);
        c[n - k] = R.zero() - tr * Ring::inv(R.from_rat(Rat(static_cast<long>(k))));
    }
    return c;
}

} // namespace padl
