#pragma once

#include "padl/linalg.hpp"
#include "padl/poly.hpp"
#include "padl/rational.hpp"

namespace padl {

// Slope-<=nu decomposition of a compact-like operator: Newton polygons,
// slope factorization of the characteristic polynomial by Hensel lifting,
// and the induced projector onto the small-slope summand.  Works over the
// p-adic base ring and over truncated disk rings (where the coefficient
// valuation is read off at the disk center).

// Valuation of a coefficient for Newton-polygon purposes.  pivot_quality is
// exactly the p-adic valuation for QpRing and the center valuation for the
// disk ring.
template <class Ring>
long np_val(const Ring&, const typename Ring::Elem& e) {
    return Ring::pivot_quality(e);
}

// Size of a convergence error: a lower bound for the valuation that also
// accounts for coefficients that are only zero at limited absolute
// precision.  For the disk ring every w-slice is inspected.
template <class Ring>
long err_val(const Ring&, const typename Ring::Elem& e) {
    return e.val_lower_bound();
}
inline long err_val(const DiskRingCtx& R, const DiskElem& e) {
    long v = 1 << 20;
    for (long r = 0; r < R.R.M; ++r) v = std::min(v, e.coeff(r).val_lower_bound());
    return v;
}

struct NewtonSegment {
    Rat slope;  // valuation of the roots on this segment
    long mult;  // number of roots
};

// Newton polygon of a polynomial with invertible leading coefficient,
// reported as root valuations in weakly increasing order.
template <class Ring>
std::vector<NewtonSegment> newton_polygon(const Ring& R, const PolyVec<Ring>& f) {
    long n = poly_degree(R, f);
    if (n < 0) throw MathDomainError("newton_polygon: zero polynomial");
    if (!Ring::is_invertible(f[n]) || np_val(R, f[n]) != 0)
        throw MathDomainError("newton_polygon: leading coefficient not a unit");
    // lower convex hull of (i, v(f_i)) over nonzero coefficients
    std::vector<std::pair<long, long>> pts;
    for (long i = 0; i <= n; ++i)
        if (!Ring::is_zero(f[i])) pts.push_back({i, np_val(R, f[i])});
    std::vector<std::pair<long, long>> hull;
    for (auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // drop b if it lies on or above segment a--pt
            if ((b.second - a.second) * (pt.first - a.first) >=
                (pt.second - a.second) * (b.first - a.first))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    // segment from (i1,v1) to (i2,v2): roots of valuation (v1-v2)/(i2-i1);
    // hull is traversed by increasing degree, so root valuations come out
    // weakly decreasing -- reverse at the end.
    std::vector<NewtonSegment> segs;
    for (size_t s = 0; s + 1 < hull.size(); ++s) {
        long di = hull[s + 1].first - hull[s].first;
        long dv = hull[s].second - hull[s + 1].second;
        segs.push_back({Rat(dv) / Rat(di), di});
    }
    std::reverse(segs.begin(), segs.end());
    // merge equal slopes
    std::vector<NewtonSegment> out;
    for (auto& s : segs) {
        if (!out.empty() && out.back().slope == s.slope) out.back().mult += s.mult;
        else out.push_back(s);
    }
    return out;
}

// Polynomial division with invertible divisor leading coefficient.
template <class Ring>
std::pair<PolyVec<Ring>, PolyVec<Ring>> poly_divmod(const Ring& R, PolyVec<Ring> a,
                                                    const PolyVec<Ring>& b) {
    long db = poly_degree(R, b);
    if (db < 0) throw MathDomainError("poly_divmod: division by zero");
    if (!Ring::is_invertible(b[db]))
        throw MathDomainError("poly_divmod: leading coefficient not invertible");
    auto lci = Ring::inv(b[db]);
    long da = poly_degree(R, a);
    if (da < db) return {{}, poly_trim(R, a)};
    PolyVec<Ring> q(da - db + 1, R.zero());
    for (long i = da; i >= db; --i) {
        if (Ring::is_zero(a[i])) continue;
        auto c = a[i] * lci;
        q[i - db] = c;
        for (long j = 0; j <= db; ++j) a[i - db + j] = a[i - db + j] - c * b[j];
        a[i] = R.zero();
    }
    return {poly_trim(R, q), poly_trim(R, a)};
}

// Bezout cofactors u*a + v*b = 1 for polynomials coprime at working
// precision (extended Euclid; the gcd must come out invertible).
template <class Ring>
std::pair<PolyVec<Ring>, PolyVec<Ring>> poly_bezout(const Ring& R, const PolyVec<Ring>& a,
                                                    const PolyVec<Ring>& b) {
    PolyVec<Ring> r0 = poly_trim(R, a), r1 = poly_trim(R, b);
    PolyVec<Ring> u0{R.one()}, u1{}, v0{}, v1{R.one()};
    while (poly_degree(R, r1) > 0) {
        auto [q, r2] = poly_divmod(R, r0, r1);
        auto u2 = poly_add(R, u0, poly_scale(R, poly_mul(R, q, u1), R.zero() - R.one()));
        auto v2 = poly_add(R, v0, poly_scale(R, poly_mul(R, q, v1), R.zero() - R.one()));
        r0 = std::move(r1); r1 = poly_trim(R, r2);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (poly_degree(R, r1) != 0 || !Ring::is_invertible(r1[0]))
        throw PrecisionExhausted("poly_bezout: factors not separable at this precision");
    auto s = Ring::inv(r1[0]);
    return {poly_scale(R, u1, s), poly_scale(R, v1, s)};
}

template <class Ring>
struct SlopeFactorization {
    PolyVec<Ring> Q;  // slope-<=nu factor (root valuations <= nu)
    PolyVec<Ring> S;  // complementary factor (root valuations > nu)
};

// Split f = Q*S along the Newton-polygon vertex separating slopes <= nu
// from slopes > nu.  The initial factors are the two halves of the polygon;
// quadratic Hensel iteration lifts them until the product recomposes at
// working precision.
template <class Ring>
SlopeFactorization<Ring> slope_factor(const Ring& R, const PolyVec<Ring>& f_in, const Rat& nu) {
    auto f = poly_trim(R, f_in);
    long n = poly_degree(R, f);
    auto segs = newton_polygon(R, f);
    long t = 0;  // degree of the slope-<=nu factor
    for (auto& s : segs) {
        if (s.slope == nu)
            throw MathDomainError("slope_factor: Newton slope equals nu (not slope-adapted)");
        if (s.slope < nu) t += s.mult;
    }
    if (t == n) return {f, {R.one()}};
    if (t == 0) return {{R.one()}, f};
    // the small-slope roots sit on the hull segments adjacent to degree n;
    // the vertex is at degree n - t
    if (Ring::is_zero(f[n - t]))
        throw ContractViolation("slope_factor: expected Newton vertex coefficient vanishes");
    auto piv = f[n - t];
    if (!Ring::is_invertible(piv))
        throw PrecisionExhausted("slope_factor: vertex coefficient not invertible at precision");
    // Q = upper hull half made monic (constant term carries the small-slope
    // valuations); S = lower half rescaled so lc(S) = lc(f) stays a unit and
    // Q*S has the leading coefficient of f.  Both halves are then integral.
    auto lci = Ring::inv(f[n]);
    auto sscale = f[n] * Ring::inv(piv);
    PolyVec<Ring> Q(t + 1, R.zero()), S(n - t + 1, R.zero());
    for (long i = 0; i <= t; ++i) Q[i] = f[n - t + i] * lci;
    for (long i = 0; i <= n - t; ++i) S[i] = f[i] * sscale;
    // Hensel: e = f - Q*S; with u*Q + v*S = 1, the update Q += (v*e mod Q),
    // S += u*e + ((v*e) div Q)*S reduced to degree <= n-t, squares the error.
    // Iterate until the error valuation stops improving; precision loss in
    // the Bezout cofactors eventually throws, at which point the best
    // factors so far are the answer.
    long best_err = -1, delta = 0;
    int stall = 0;
    for (int it = 0; it < 64 && stall < 2; ++it) {
        try {
            auto e = poly_add(R, f, poly_scale(R, poly_mul(R, Q, S), R.zero() - R.one()));
            long ev = 1 << 20;
            for (auto& x : e) ev = std::min(ev, err_val(R, x));
            if (best_err >= 0 && ev <= best_err) { ++stall; continue; }
            best_err = ev;
            if (poly_degree(R, e) < 0) break;
            auto [u, v] = poly_bezout(R, Q, S);
            for (auto& x : u) delta = std::min(delta, err_val(R, x));
            for (auto& x : v) delta = std::min(delta, err_val(R, x));
            auto ve = poly_mul(R, v, e);
            auto [q1, dq] = poly_divmod(R, ve, Q);
            auto ds = poly_add(R, poly_mul(R, u, e), poly_mul(R, q1, S));
            auto Q2 = poly_add(R, Q, dq);
            auto S2 = poly_add(R, S, ds);
            // degree overflow means the split is not converging
            if (poly_degree(R, Q2) != t || poly_degree(R, S2) > n - t)
                throw PrecisionExhausted("slope_factor: Hensel iteration does not converge");
            Q = std::move(Q2); S = std::move(S2);
        } catch (const PrecisionExhausted&) {
            if (best_err < 0) throw;
            break;
        }
    }
    // report only the digits actually pinned down: the factors are
    // determined to the precision of the recomposition error minus the
    // denominator depth of the Bezout cofactors (the conditioning of the
    // split); truncate both factors accordingly
    auto e = poly_add(R, f, poly_scale(R, poly_mul(R, Q, S), R.zero() - R.one()));
    long ev = 1 << 20;
    for (auto& x : e) ev = std::min(ev, err_val(R, x));
    if (ev < (1 << 20)) {
        long keep = ev + delta;
        if (keep < 1)
            throw PrecisionExhausted("slope_factor: no certified digits at this precision");
        for (auto& x : Q) x = x.truncate_abs(keep);
        for (auto& x : S) x = x.truncate_abs(keep);
    }
    return {Q, S};
}

// Projector onto the slope-<=nu summand of U: with charpoly = Q*S and
// u*Q + v*S = 1, the matrix (v*S)(U) is the identity on ker Q(U) and kills
// ker S(U); no matrix inversion is needed.
template <class Ring>
Matrix<Ring> slope_projector(const Ring& R, const Matrix<Ring>& U, const Rat& nu) {
    auto cp = mat_charpoly(R, U);
    auto fac = slope_factor(R, cp, nu);
    long t = poly_degree(R, fac.Q);
    long n = U.rows;
    if (t == n) return Matrix<Ring>::identity(R, n);
    if (t == 0) return Matrix<Ring>(R, n, n);
    auto [u, v] = poly_bezout(R, fac.Q, fac.S);
    auto vs = poly_mul(R, v, fac.S);
    // evaluate vs(U) by Horner
    Matrix<Ring> P(R, n, n);
    for (size_t i = poly_trim(R, vs).size(); i-- > 0;) {
        P = mat_mul(R, P, U);
        for (long d = 0; d < n; ++d) P.at(d, d) = P.at(d, d) + vs[i];
    }
    return P;
}

} // namespace padl
