#pragma once

#include "padl/disk.hpp"

namespace padl {

// Classical weight: a pair of integers (lambda1, lambda2).
struct WeightPoint {
    long l1 = 0;
    long l2 = 0;

    long n() const { return l1 - l2; }  // n(lambda)
    long w() const { return l1 + l2; }  // w(lambda)
    bool dominant() const { return l1 >= l2; }

    bool operator==(const WeightPoint&) const = default;
};

// One-parameter analytic weight disk inside the ell-stratum (lambda2 = ell
// fixed), centered at a classical weight, over (Z/p^N)[[w]]/(w^M).
//
// The family character is
//   kappa(diag(x, y)) = y^ell * x^(center.l1) * (1+w)^(log<x> / log(1+p)),
// so specializing w -> (1+p)^(k - center.l1) - 1 recovers the classical
// weight (k, ell) on principal units.
struct WeightDisk {
    long p = 3;
    long ell = 0;
    WeightPoint center{0, 0};
    long N = 20;
    long M = 8;

    DiskRing ring() const { return DiskRing{p, N, M}; }
    long gamma() const { return 1 + p; }

    // the w-value of the classical point lambda1 = l1 (same stratum)
    PAdicScalar classical_w_value(long l1) const;
};

// kappa(diag(x,y)) = x^l1 y^l2 (exact rational version).
Rat eval_character(const WeightPoint& lambda, const Rat& x, const Rat& y);
PAdicScalar eval_character(const WeightPoint& lambda, const PAdicScalar& x,
                           const PAdicScalar& y);

// Family character; x must be a unit (its Teichmueller part is removed by
// <x> = x/omega(x)), y any invertible scalar.
DiskElem eval_character(const WeightDisk& disk, const PAdicScalar& x,
                        const PAdicScalar& y);

// <x> = x / omega(x) for a unit x.
PAdicScalar principal_part(const PAdicScalar& x);

// binom(kappa, r) = ext_binomial(log(kappa(t(gamma)))/log(gamma), r) with
// t(u) = diag(u, u^-1); computed through the log path (not short-circuited),
// so classical compatibility binom(n(lambda), r) is a theorem to test, not an
// implementation artifact.
PAdicScalar binom_kappa(const WeightPoint& lambda, long r, long p, long prec);
DiskElem binom_kappa(const WeightDisk& disk, long r);

} // namespace padl
