#pragma once

#include "padl/disk.hpp"

namespace padl {

// Lightweight ring contexts so the representation-theoretic code can run over
// exact rationals, p-adic scalars, or the truncated disk ring with one
// template parameter.

struct RatRing {
    using Elem = Rat;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_rat(const Rat& x) const { return x; }
    static bool is_zero(const Elem& e) { return e == 0; }
    static bool is_invertible(const Elem& e) { return e != 0; }
    static Elem inv(const Elem& e) {
        if (e == 0) throw MathDomainError("division by zero");
        return Rat(1) / e;
    }
    static bool eq(const Elem& a, const Elem& b) { return a == b; }
    // lower is better; rationals are all equally good pivots
    static long pivot_quality(const Elem&) { return 0; }
    static std::string str(const Elem& e) { return e.str(); }
};

struct QpRing {
    long p;
    long N;
    using Elem = PAdicScalar;
    Elem zero() const { return PAdicScalar::zero(p, N); }
    Elem one() const { return PAdicScalar::from_int(p, 1, N); }
    Elem from_rat(const Rat& x) const { return PAdicScalar::from_rat(p, x, N); }
    static bool is_zero(const Elem& e) { return e.is_zero(); }
    static bool is_invertible(const Elem& e) { return !e.is_zero(); }
    static Elem inv(const Elem& e) { return e.inv(); }
    static bool eq(const Elem& a, const Elem& b) { return a.eq(b); }
    static long pivot_quality(const Elem& e) { return e.valuation(); }
    static std::string str(const Elem& e) { return e.str(); }
};

struct DiskRingCtx {
    DiskRing R;
    using Elem = DiskElem;
    Elem zero() const { return DiskElem::zero(R); }
    Elem one() const { return DiskElem::one(R); }
    Elem from_rat(const Rat& x) const { return DiskElem::from_rat(R, x); }
    static bool is_zero(const Elem& e) { return e.is_zero(); }
    static bool is_invertible(const Elem& e) { return e.is_invertible(); }
    static Elem inv(const Elem& e) { return e.inv(); }
    static bool eq(const Elem& a, const Elem& b) { return a.eq(b); }
    static long pivot_quality(const Elem& e) { return e.coeff(0).valuation(); }
    static std::string str(const Elem& e) { return e.str(); }
};

template <class Ring>
typename Ring::Elem ring_pow(const Ring& R, const typename Ring::Elem& x, long e) {
    typename Ring::Elem base = e < 0 ? Ring::inv(x) : x;
    long k = e < 0 ? -e : e;
    auto r = R.one();
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

} // namespace padl
