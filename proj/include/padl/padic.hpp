#pragma once

#include <string>

#include "padl/rational.hpp"

namespace padl {

// Element of Q_p known to finite absolute precision: value = unit * p^v with
// unit coprime to p, known mod p^abs (abs = v + N, N relative digits), or a
// "zero" that is indistinguishable from 0 at precision O(p^abs).
//
// Precision is tracked pessimistically: results never claim more digits than
// the inputs support.  Only odd p is supported.
class PAdicScalar {
public:
    PAdicScalar() : p_(3), zero_(true), v_(0), u_(0), abs_(0) {}

    static PAdicScalar zero(long p, long abs_prec);
    // value = n, known mod p^abs_prec
    static PAdicScalar from_int(long p, const Int& n, long abs_prec);
    // value = x (p must not divide the denominator's... any rational is fine),
    // known mod p^abs_prec
    static PAdicScalar from_rat(long p, const Rat& x, long abs_prec);
    // exact unit*p^v with v+N digits
    static PAdicScalar make(long p, long v, const Int& unit, long rel_prec);

    long prime() const { return p_; }
    bool is_zero() const { return zero_; }
    // lower bound on the valuation; exact if nonzero
    long val_lower_bound() const { return zero_ ? abs_ : v_; }
    long valuation() const;
    long abs_precision() const { return zero_ ? abs_ : v_ + static_cast<long>(N()); }
    long rel_precision() const { return zero_ ? 0 : N(); }
    const Int& unit() const { return u_; }

    bool is_unit() const { return !zero_ && v_ == 0; }

    PAdicScalar operator-() const;
    PAdicScalar operator+(const PAdicScalar& o) const;
    PAdicScalar operator-(const PAdicScalar& o) const;
    PAdicScalar operator*(const PAdicScalar& o) const;
    PAdicScalar operator/(const PAdicScalar& o) const;
    PAdicScalar inv() const;
    PAdicScalar pow(long e) const;

    // scale by p^k (exact)
    PAdicScalar shift(long k) const;
    // forget digits beyond absolute precision a
    PAdicScalar truncate_abs(long a) const;

    // equality at the joint precision
    bool eq(const PAdicScalar& o) const;

    // rational representative u*p^v (0 for zero)
    Rat lift_rat() const;
    // integer representative in [0, p^abs); requires v >= 0
    Int lift_int() const;

    std::string str() const;

private:
    long N() const { return abs_ - v_; }
    void canonicalize();

    long p_;
    bool zero_;
    long v_;   // valuation when nonzero
    Int u_;    // unit in [1, p^N), coprime to p, when nonzero
    long abs_; // absolute precision (known mod p^abs_)
};

// Teichmueller lift of the unit u mod p^prec.
Int teichmuller(long p, const Int& u, long prec);

// log of x with |x-1|_p < 1 (p odd).  Result has the same absolute precision.
PAdicScalar padic_log(const PAdicScalar& x);

// Extended binomial coefficient x(x-1)...(x-r+1)/r!.
PAdicScalar ext_binomial(const PAdicScalar& x, long r);

} // namespace padl
