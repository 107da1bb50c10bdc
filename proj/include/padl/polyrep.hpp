#pragma once

#include "padl/linalg.hpp"
#include "padl/poly.hpp"
#include "padl/weightspace.hpp"

namespace padl {

// Finite-dimensional weight modules: polynomials of degree <= n in one
// variable with a twisted right GL2-action, and their duals.  Templated over
// the coefficient ring.

template <class Ring>
struct GL2 {
    using Elem = typename Ring::Elem;
    Elem a, b, c, d;

    Elem det() const { return a * d - b * c; }
    // adjugate: det * inverse
    GL2 adjugate(const Ring& R) const {
        return GL2{d, R.zero() - b, R.zero() - c, a};
    }

    static GL2 identity(const Ring& R) {
        return GL2{R.one(), R.zero(), R.zero(), R.one()};
    }
    static GL2 from_ints(const Ring& R, long a, long b, long c, long d) {
        return GL2{R.from_rat(Rat(a)), R.from_rat(Rat(b)), R.from_rat(Rat(c)),
                   R.from_rat(Rat(d))};
    }
    GL2 operator*(const GL2& o) const {
        return GL2{a * o.a + b * o.c, a * o.b + b * o.d,
                   c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

template <class Ring>
struct PolyVector {
    WeightPoint weight;
    std::vector<typename Ring::Elem> coeffs; // coefficient of z^r, r in [0, n]
};

template <class Ring>
struct DualVector {
    WeightPoint weight;
    std::vector<typename Ring::Elem> coeffs; // coordinate on ell_r
};

template <class Ring>
PolyVector<Ring> poly_vector_zero(const Ring& R, WeightPoint lam) {
    return {lam, std::vector<typename Ring::Elem>(lam.n() + 1, R.zero())};
}

template <class Ring>
DualVector<Ring> dual_vector_zero(const Ring& R, WeightPoint lam) {
    return {lam, std::vector<typename Ring::Elem>(lam.n() + 1, R.zero())};
}

// P|_alpha(z) = det(alpha)^{lambda2} (cz+d)^n P((az+b)/(cz+d)), expanded as a
// polynomial of degree <= n.
template <class Ring>
PolyVector<Ring> act_right_poly(const Ring& R, const PolyVector<Ring>& P,
                                const GL2<Ring>& alpha) {
    long n = P.weight.n();
    if ((long)P.coeffs.size() != n + 1)
        throw ContractViolation("act_right_poly: coefficient length != n+1");
    auto det = alpha.det();
    if (!Ring::is_invertible(det))
        throw MathDomainError("act_right_poly: non-invertible determinant");
    PolyVec<Ring> num{alpha.b, alpha.a}; // az + b
    PolyVec<Ring> den{alpha.d, alpha.c}; // cz + d
    PolyVec<Ring> acc(1, R.zero());
    // sum_r P_r (az+b)^r (cz+d)^{n-r}
    for (long r = 0; r <= n; ++r) {
        if (Ring::is_zero(P.coeffs[r])) continue;
        auto term = poly_mul(R, poly_pow(R, num, r), poly_pow(R, den, n - r));
        acc = poly_add(R, acc, poly_scale(R, term, P.coeffs[r]));
    }
    auto scale = ring_pow(R, det, P.weight.l2);
    acc = poly_scale(R, acc, scale);
    acc.resize(n + 1, R.zero());
    return {P.weight, std::move(acc)};
}

// Matrix of the right action on the z^r basis: column r holds P|alpha for
// P = z^r.
template <class Ring>
Matrix<Ring> right_action_matrix(const Ring& R, WeightPoint lam, const GL2<Ring>& alpha) {
    long n = lam.n();
    Matrix<Ring> m(R, n + 1, n + 1);
    for (long r = 0; r <= n; ++r) {
        auto P = poly_vector_zero(R, lam);
        P.coeffs[r] = R.one();
        auto Q = act_right_poly(R, P, alpha);
        for (long i = 0; i <= n; ++i) m.at(i, r) = Q.coeffs[i];
    }
    return m;
}

// (alpha . ell)(P) = ell(P|_alpha): the transpose of the right-action matrix.
template <class Ring>
DualVector<Ring> act_left_dual(const Ring& R, const GL2<Ring>& alpha,
                               const DualVector<Ring>& ell) {
    long n = ell.weight.n();
    if ((long)ell.coeffs.size() != n + 1)
        throw ContractViolation("act_left_dual: coefficient length != n+1");
    auto m = right_action_matrix(R, ell.weight, alpha);
    auto out = mat_apply(R, mat_transpose(R, m), ell.coeffs);
    return {ell.weight, std::move(out)};
}

// Left module structure on polynomials: alpha . P = P|_{alpha'} with alpha'
// the adjugate.
template <class Ring>
PolyVector<Ring> act_left_poly(const Ring& R, const GL2<Ring>& alpha,
                               const PolyVector<Ring>& P) {
    return act_right_poly(R, P, alpha.adjugate(R));
}

// ell_r  |->  (-1)^r binom(n, r) z^{n - r}
template <class Ring>
PolyVector<Ring> theta_map(const Ring& R, const DualVector<Ring>& ell) {
    long n = ell.weight.n();
    auto out = poly_vector_zero(R, ell.weight);
    for (long r = 0; r <= n; ++r) {
        Rat s = Rat(binomial_int(n, r)) * (r % 2 ? -1 : 1);
        out.coeffs[n - r] = out.coeffs[n - r] + ell.coeffs[r] * R.from_rat(s);
    }
    return out;
}

// Canonical contraction of a dual against a polynomial.
template <class Ring>
typename Ring::Elem contract(const Ring& R, const DualVector<Ring>& ell,
                             const PolyVector<Ring>& P) {
    if (!(ell.weight == P.weight))
        throw MathDomainError("contract: weight mismatch");
    auto s = R.zero();
    for (size_t r = 0; r < ell.coeffs.size(); ++r)
        s = s + ell.coeffs[r] * P.coeffs[r];
    return s;
}

// <l1, l2> = sum_r (-1)^r binom(n, r) a_r b_{n-r}; equals contract(l1, theta(l2)).
template <class Ring>
typename Ring::Elem pair_dual(const Ring& R, const DualVector<Ring>& l1,
                              const DualVector<Ring>& l2) {
    if (!(l1.weight == l2.weight))
        throw MathDomainError("pair_dual: weight mismatch");
    long n = l1.weight.n();
    auto s = R.zero();
    for (long r = 0; r <= n; ++r) {
        Rat c = Rat(binomial_int(n, r)) * (r % 2 ? -1 : 1);
        s = s + R.from_rat(c) * l1.coeffs[r] * l2.coeffs[n - r];
    }
    return s;
}

} // namespace padl
