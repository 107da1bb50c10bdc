#pragma once

#include <vector>

#include "padl/rational.hpp"

namespace padl {

// Local zeta integrals at p for refined spherical data: Whittaker values on
// the torus, the closed forms of the two unfolded integrals I_1 and I_2,
// their difference (the value of the local integral at s = 1), and the
// p-adic multiplier e_p.  Everything is exact rational arithmetic; the
// convergence of the defining sums is certified separately by truncated
// oracles in the tests.

struct LocalParams {
    long q;          // residue cardinality
    Rat alpha, beta; // Hecke parameters (roots of x^2 - a_q x + q*omega)
    Rat vol = 1;     // normalization of vol(O^x)
};

inline void check_local_params(const LocalParams& P) {
    if (P.q <= 1) throw ConfigError("local params: q must exceed 1");
    if (P.alpha == 0 || P.beta == 0)
        throw MathDomainError("local params: alpha*beta must be nonzero");
}

// |x| < 1 in the archimedean absolute value
inline bool arch_lt_one(const Rat& x) {
    return abs(numerator(x)) < abs(denominator(x));
}

inline void check_convergent(const LocalParams& P) {
    check_local_params(P);
    // both geometric series need |alpha/(beta q)| < 1 (and q > 1)
    if (!arch_lt_one(P.alpha / (P.beta * P.q)))
        throw MathDomainError("local zeta: |alpha/beta| >= q, sums diverge");
}

// W^o(diag(pi^m, 1)) = q^{-m} sum_{l=0}^{m} alpha^l beta^{m-l}, 0 for m < 0
inline Rat whittaker_spherical(long m, const LocalParams& P) {
    check_local_params(P);
    if (m < 0) return 0;
    Rat s = 0, al = 1; // al = alpha^l, bm = beta^{m-l}
    Rat bm = 1;
    for (long l = 0; l < m; ++l) bm *= P.beta;
    for (long l = 0; l <= m; ++l) {
        s += al * bm;
        al *= P.alpha;
        if (l < m) bm /= P.beta;
    }
    return s / Rat(ipow(P.q, m));
}

// the refined vector: q^{-m} alpha^m for m >= 0, 0 below
inline Rat whittaker_refined(long m, const LocalParams& P) {
    check_local_params(P);
    if (m < 0) return 0;
    Rat am = 1;
    for (long l = 0; l < m; ++l) am *= P.alpha;
    return am / Rat(ipow(P.q, m));
}

// closed forms of the unfolded integrals
inline Rat i1_closed(const LocalParams& P) {
    check_convergent(P);
    Rat qi = Rat(1) / P.q;
    return P.vol * P.alpha * qi / ((1 - P.alpha / P.beta * qi) * (1 - qi));
}

inline Rat i2_closed(const LocalParams& P) {
    check_convergent(P);
    Rat qi = Rat(1) / P.q;
    return P.vol * P.beta * qi / ((1 - P.alpha / P.beta * qi) * (1 - qi));
}

// value of the local integral at s = 1 (with the Fourier-transform and
// volume normalization set to 1)
inline Rat psi_at_one(const LocalParams& P) {
    check_convergent(P);
    Rat qi = Rat(1) / P.q;
    return P.vol * (P.alpha - P.beta) * qi / ((1 - P.alpha / P.beta * qi) * (1 - qi));
}

// p-adic multiplier: prod_v (1 - beta_v alpha_v^{-1} q_v^{-1})(alpha_v - beta_v) q_v^{-1}
inline Rat ep_multiplier(const std::vector<LocalParams>& places) {
    Rat r = 1;
    for (auto& P : places) {
        check_local_params(P);
        r *= (1 - P.beta / (P.alpha * P.q)) * (P.alpha - P.beta) / P.q;
    }
    return r;
}

// Truncated unfolded sums: the integrals as torus sums over n <= nmax, with
// the central character value omega(pi) = alpha*beta/q.  These are the
// oracles for the closed forms.
inline Rat i1_truncated(const LocalParams& P, long nmax) {
    check_local_params(P);
    Rat omega = P.alpha * P.beta / P.q;
    Rat s = 0, wn = 1; // wn = omega^{-n}
    for (long n = 1; n <= nmax; ++n) {
        wn = wn / omega;
        s += wn * whittaker_refined(n, P) * whittaker_spherical(n - 1, P);
    }
    return omega * P.vol * s;
}

inline Rat i2_truncated(const LocalParams& P, long nmax) {
    check_local_params(P);
    Rat omega = P.alpha * P.beta / P.q;
    Rat s = 0, wn = 1;
    for (long n = 0; n <= nmax; ++n) {
        s += wn * whittaker_refined(n, P) * whittaker_spherical(n, P);
        wn = wn / omega;
    }
    return P.beta / P.q * P.vol * s;
}

} // namespace padl
