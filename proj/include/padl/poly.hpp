#pragma once

#include <vector>

#include "padl/ring.hpp"

namespace padl {

// Dense polynomial / truncated power-series helpers over a ring context.
// A polynomial is a coefficient vector, index = degree.

template <class Ring>
using PolyVec = std::vector<typename Ring::Elem>;

template <class Ring>
PolyVec<Ring> poly_add(const Ring& R, const PolyVec<Ring>& a, const PolyVec<Ring>& b) {
    PolyVec<Ring> r(std::max(a.size(), b.size()), R.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

template <class Ring>
PolyVec<Ring> poly_scale(const Ring&, const PolyVec<Ring>& a,
                         const typename Ring::Elem& s) {
    PolyVec<Ring> r = a;
    for (auto& x : r) x = x * s;
    return r;
}

template <class Ring>
PolyVec<Ring> poly_mul(const Ring& R, const PolyVec<Ring>& a, const PolyVec<Ring>& b,
                       long trunc = -1) {
    if (a.empty() || b.empty()) return {};
    size_t n = a.size() + b.size() - 1;
    if (trunc >= 0) n = std::min<size_t>(n, trunc);
    PolyVec<Ring> r(n, R.zero());
    // note: precision-zero coefficients still participate so the product
    // carries honest absolute precision
    for (size_t i = 0; i < a.size() && i < n; ++i)
        for (size_t j = 0; j < b.size() && i + j < n; ++j)
            r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

template <class Ring>
PolyVec<Ring> poly_pow(const Ring& R, const PolyVec<Ring>& a, long e, long trunc = -1) {
    PolyVec<Ring> r{R.one()};
    PolyVec<Ring> base = a;
    if (e < 0) throw MathDomainError("poly_pow: negative exponent");
    long k = e;
    while (k > 0) {
        if (k & 1) r = poly_mul(R, r, base, trunc);
        base = poly_mul(R, base, base, trunc);
        k >>= 1;
    }
    return r;
}

// Multiplicative inverse of a series with invertible constant term, to the
// given truncation length.
template <class Ring>
PolyVec<Ring> series_inv(const Ring& R, const PolyVec<Ring>& a, long trunc) {
    if (a.empty() || !Ring::is_invertible(a[0]))
        throw MathDomainError("series_inv: constant term not invertible");
    PolyVec<Ring> b(trunc, R.zero());
    auto a0i = Ring::inv(a[0]);
    b[0] = a0i;
    for (long k = 1; k < trunc; ++k) {
        auto s = R.zero();
        for (long i = 1; i <= k && i < (long)a.size(); ++i)
            s = s + a[i] * b[k - i];
        b[k] = R.zero() - a0i * s;
    }
    return b;
}

template <class Ring>
typename Ring::Elem poly_eval(const Ring& R, const PolyVec<Ring>& a,
                              const typename Ring::Elem& x) {
    auto r = R.zero();
    for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
    return r;
}

// Substitute z -> z + c (recentering).
template <class Ring>
PolyVec<Ring> poly_shift_var(const Ring& R, const PolyVec<Ring>& a,
                             const typename Ring::Elem& c) {
    PolyVec<Ring> r(a.size(), R.zero());
    // Horner on (z + c)
    for (size_t i = a.size(); i-- > 0;) {
        // r = r * (z + c) + a[i]
        PolyVec<Ring> nr(a.size(), R.zero());
        for (size_t j = 0; j + 1 < a.size(); ++j) nr[j + 1] = r[j];
        for (size_t j = 0; j < a.size(); ++j) nr[j] = nr[j] + r[j] * c;
        nr[0] = nr[0] + a[i];
        r = std::move(nr);
    }
    return r;
}

template <class Ring>
long poly_degree(const Ring&, const PolyVec<Ring>& a) {
    for (size_t i = a.size(); i-- > 0;)
        if (!Ring::is_zero(a[i])) return (long)i;
    return -1;
}

template <class Ring>
PolyVec<Ring> poly_trim(const Ring& R, PolyVec<Ring> a) {
    long d = poly_degree(R, a);
    a.resize(d + 1, R.zero());
    return a;
}

} // namespace padl
