#pragma once

#include <vector>

#include "padl/padic.hpp"

namespace padl {

// Truncated disk ring (Z/p^N)[[w]]/(w^M): coefficients are p-adic scalars,
// each carrying its own absolute precision (<= N).
struct DiskRing {
    long p;
    long N; // p-adic digits
    long M; // powers of w kept

    bool operator==(const DiskRing&) const = default;
};

class DiskElem {
public:
    DiskElem() = default;
    DiskElem(const DiskRing& ring, std::vector<PAdicScalar> coeffs);

    static DiskElem zero(const DiskRing& ring);
    static DiskElem one(const DiskRing& ring);
    static DiskElem w(const DiskRing& ring);
    static DiskElem constant(const DiskRing& ring, const PAdicScalar& c);
    static DiskElem from_rat(const DiskRing& ring, const Rat& x);

    const DiskRing& ring() const { return ring_; }
    const PAdicScalar& coeff(long j) const { return c_[j]; }
    const std::vector<PAdicScalar>& coeffs() const { return c_; }

    DiskElem operator-() const;
    DiskElem operator+(const DiskElem& o) const;
    DiskElem operator-(const DiskElem& o) const;
    DiskElem operator*(const DiskElem& o) const;
    DiskElem operator*(const PAdicScalar& s) const;
    DiskElem inv() const;          // requires invertible constant term
    DiskElem operator/(const DiskElem& o) const { return *this * o.inv(); }
    DiskElem pow(long e) const;

    bool is_zero() const;          // zero at the stored precision
    bool is_invertible() const;    // constant term a p-adic unit... (nonzero)
    bool eq(const DiskElem& o) const { return (*this - o).is_zero(); }

    // forget p-adic digits of every coefficient beyond absolute precision a
    DiskElem truncate_abs(long a) const;

    // substitute a p-adic value for w (|value|_p < 1 expected by callers)
    PAdicScalar specialize(const PAdicScalar& wval) const;

    std::string str() const;

private:
    DiskRing ring_{};
    std::vector<PAdicScalar> c_;
};

// (1+w)^L as an element of the disk ring, via the binomial series
// sum_j ext_binomial(L, j) w^j  (exact in the truncation, no p-loss for L in Z_p).
DiskElem one_plus_w_pow(const DiskRing& ring, const PAdicScalar& L);

// log(1+w) in the disk ring.
DiskElem log_one_plus_w(const DiskRing& ring, long prec_hint = 0);

// Falling-factorial binomial x(x-1)...(x-r+1)/r! over the disk ring.
DiskElem ext_binomial(const DiskElem& x, long r);

} // namespace padl
