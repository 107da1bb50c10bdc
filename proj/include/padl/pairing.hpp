#pragma once

#include "padl/dist.hpp"
#include "padl/family.hpp"
#include "padl/modsym.hpp"

namespace padl {

// Twisted Poincare pairing: the classical realization on polynomial-dual
// symbols (theta composed with the Atkin-Lehner involution under the
// intersection sum), and its lift to distribution-valued symbols over a
// weight or a weight disk through the interpolating power series T.

// ---------------------------------------------------------------------------
// Weight adapters: everything the T-series needs from a weight is the
// binomial coefficient binom(kappa, r), the torus character on principal
// units kappa(t(u)), its value at -1, and the stratum exponent ell.

struct ClassicalKappa {
    QpRing R;
    WeightPoint lam;

    using Ring = QpRing;
    const QpRing& ring() const { return R; }
    QpRing base() const { return R; }
    long ell() const { return lam.l2; }
    PAdicScalar from_base(const PAdicScalar& s) const { return s; }
    PAdicScalar binom(long r) const { return binom_kappa(lam, r, R.p, R.N); }
    // kappa(t(u)) = u^{n(lambda)} on units
    PAdicScalar t_of(const PAdicScalar& u) const {
        return ring_pow(R, u, lam.n());
    }
    PAdicScalar t_minus_one() const {
        return R.from_rat(Rat(lam.n() % 2 ? -1 : 1));
    }
};

struct FamilyKappa {
    DiskRingCtx D;
    WeightDisk wd;

    using Ring = DiskRingCtx;
    const DiskRingCtx& ring() const { return D; }
    QpRing base() const { return QpRing{wd.p, wd.N}; }
    long ell() const { return wd.ell; }
    DiskElem from_base(const PAdicScalar& s) const {
        return DiskElem::constant(D.R, s);
    }
    DiskElem binom(long r) const { return binom_kappa(wd, r); }
    // kappa(t(u)) for a principal unit u, through the disk character
    DiskElem t_of(const PAdicScalar& u) const {
        return eval_character(wd, u, u.inv());
    }
    DiskElem t_minus_one() const {
        return DiskElem::from_rat(D.R, Rat(wd.center.n() % 2 ? -1 : 1));
    }
};

// ---------------------------------------------------------------------------
// The local integrand and the interpolating series.

// Expansion of kappa(t(1 + c*u)) in powers of u to length J: the character
// on principal units is u |-> u^{s(kappa)}, so the series is
// sum_r binom(kappa, r) c^r u^r.  Requires val(c) >= 1.
template <class K>
PolyVec<typename K::Ring> kappa_t_series(const K& kap, const typename K::Ring::Elem& c,
                                         long J) {
    const auto& R = kap.ring();
    PolyVec<typename K::Ring> out(J, R.zero());
    auto cp = R.one();
    for (long r = 0; r < J; ++r) {
        out[r] = kap.binom(r) * cp;
        if (r + 1 < J) cp = cp * c;
    }
    return out;
}

// psi_{kappa,r} at center e: the function
//   kappa(t(1+qez)) * q^ell * z^r (z-e)^r / (1+qez)^r
// expanded around e to length J (a single-disk analytic function).  q must
// be divisible by p so 1+qez stays a principal unit.
template <class K>
AnalyticFunction<typename K::Ring> psi_function(const K& kap, long r, long e, long q,
                                                long J) {
    using Ring = typename K::Ring;
    const auto& R = kap.ring();
    QpRing B = kap.base();
    if (q % B.p != 0)
        throw ConfigError("psi_function: twist parameter must be divisible by p");
    // in u = z - e:  z = e + u,  1+qez = a0 (1 + (qe/a0) u),  a0 = 1 + q e^2
    auto a0 = B.from_rat(Rat(1) + Rat(q) * e * e);
    auto c = kap.from_base(B.from_rat(Rat(q) * e) * a0.inv());
    // kappa(t(1+qez)) = kappa(t(a0)) * sum binom(kappa, j) c^j u^j
    auto series = kappa_t_series(kap, c, J);
    series = poly_scale(R, series, kap.t_of(a0));
    // (1+qez)^{-r} = a0^{-r} sum binom(-r, j) c^j u^j
    PolyVec<Ring> invpow(J, R.zero());
    auto cp = R.one();
    for (long j = 0; j < J; ++j) {
        invpow[j] = kap.from_base(B.from_rat(ext_binomial_rat(Rat(-r), j))) * cp;
        if (j + 1 < J) cp = cp * c;
    }
    invpow = poly_scale(R, invpow, kap.from_base(ring_pow(B, a0.inv(), r)));
    // z^r (z-e)^r = (e+u)^r u^r
    PolyVec<Ring> epu{kap.from_base(B.from_rat(Rat(e))), R.one()};
    auto zr = poly_pow(R, epu, r, J);
    auto f = poly_mul(R, poly_mul(R, series, invpow, J), zr, J);
    // shift by u^r and apply q^ell
    PolyVec<Ring> out(J, R.zero());
    for (long j = 0; j + r < J; ++j) out[j + r] = f[j];
    out = poly_scale(R, out, kap.from_base(ring_pow(B, B.from_rat(Rat(q)), kap.ell())));
    AnalyticFunction<Ring> af;
    af.disks[e] = std::move(out);
    return af;
}

// The part of psi_{kappa,r} fed to the distribution: psi without its
// (z-e)^r factor, expanded globally in z (it is analytic on all of X):
//   q^ell * kappa(t(1+qez)) * z^r / (1+qez)^r.
// The remaining (z-e)^r stays outside as the series variable of T; this is
// the reading forced by the classical expansion around e.
template <class K>
PolyVec<typename K::Ring> t_integrand(const K& kap, long r, long e, long q, long J) {
    using Ring = typename K::Ring;
    const auto& R = kap.ring();
    QpRing B = kap.base();
    if (q % B.p != 0)
        throw ConfigError("t_integrand: twist parameter must be divisible by p");
    auto c = kap.from_base(B.from_rat(Rat(q) * e)); // 1+qez = 1 + c z
    auto series = kappa_t_series(kap, c, J);
    PolyVec<Ring> invpow(J, R.zero());
    auto cp = R.one();
    for (long j = 0; j < J; ++j) {
        invpow[j] = kap.from_base(B.from_rat(ext_binomial_rat(Rat(-r), j))) * cp;
        if (j + 1 < J) cp = cp * c;
    }
    auto f = poly_mul(R, series, invpow, J);
    PolyVec<Ring> out(J, R.zero());
    for (long j = 0; j + r < J; ++j) out[j + r] = f[j];
    return poly_scale(R, out,
                      kap.from_base(ring_pow(B, B.from_rat(Rat(q)), kap.ell())));
}

// Interpolating power series around a center e: coefficient r is
//   kappa(t(-1)) * q^r * binom(kappa, r) * mu(t_integrand(r, e)).
template <class Ring>
struct TSeries {
    long e = 0;                              // center
    std::vector<typename Ring::Elem> coeffs; // coefficient of (z-e)^r
    long ell = 0;                            // stratum
};

template <class K>
TSeries<typename K::Ring> build_t_series(const K& kap,
                                         const Moments<typename K::Ring>& mu, long e,
                                         long q) {
    using Ring = typename K::Ring;
    const auto& R = kap.ring();
    QpRing B = kap.base();
    long J = mu.size();
    TSeries<Ring> T{e, std::vector<typename Ring::Elem>(J, R.zero()), kap.ell()};
    auto sgn = kap.t_minus_one();
    auto qp = B.one();
    for (long r = 0; r < J; ++r) {
        auto f = t_integrand(kap, r, e, q, J);
        T.coeffs[r] =
            sgn * kap.from_base(qp) * kap.binom(r) * eval_moments_poly(R, mu, f);
        if (r + 1 < J) qp = qp * B.from_rat(Rat(q));
    }
    return T;
}

// Recenter a truncated (z-e)-series to a plain z-series.
template <class Ring>
PolyVec<Ring> t_series_global(const Ring& R, const TSeries<Ring>& T) {
    PolyVec<Ring> out(T.coeffs.size(), R.zero());
    for (size_t j = 0; j < T.coeffs.size(); ++j)
        for (size_t k = 0; k <= j; ++k) {
            // (z-e)^j contributes binom(j,k)(-e)^{j-k} z^k
            Rat me = 1;
            for (size_t t = k; t < j; ++t) me *= -Rat(T.e);
            out[k] = out[k] +
                     T.coeffs[j] * R.from_rat(Rat(binomial_int((long)j, (long)k)) * me);
        }
    return out;
}

// Patch per-center expansions into one locally analytic function: every pair
// of centers must agree after recentering (the density argument at finite
// truncation becomes an equality test).
template <class Ring>
AnalyticFunction<Ring> patch_t_series(const Ring& R,
                                      const std::vector<TSeries<Ring>>& pieces) {
    if (pieces.empty()) throw ConfigError("patch_t_series: no expansions");
    AnalyticFunction<Ring> out;
    auto ref = t_series_global(R, pieces[0]);
    for (auto& T : pieces) {
        auto g = t_series_global(R, T);
        for (size_t k = 0; k < g.size(); ++k)
            if (!Ring::eq(g[k], ref[k]))
                throw MathDomainError("patch_t_series: expansions do not glue");
        out.disks[T.e] = T.coeffs;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cup-product evaluation P against the fundamental class.  The Farey
// tessellation triangulates the curve by the translates g_x (0, 1, oo), one
// ideal triangle per tau-orbit of cosets.  Subdividing each triangle at the
// edge midpoints and the center makes every vertex typed (cusp < midpoint <
// center), which gives the globally consistent simplex ordering the
// Alexander-Whitney cup product needs; the extension of a symbol to the
// subdivided complex has gauge freedom that cancels from the total, leaving
// the per-triangle formula
//   -1/2 <f(AB), b(AB)> - 1/2 <f(BC), b(BC)> + 1/2 <f(CA), b(CA)> - <f(BC), b(AB)>
// with A, B, C = g 0, g 1, g oo, f the front cochain and b the back one.
// Requires p odd (the subdivision halves edges); tau-fixed triangles (order-3
// elliptic points) carry weight 1/3.

struct FareyTriangle {
    Mat2i g;  // vertices g 0, g 1, g oo
    Rat wt;   // 1, or 1/3 at an order-3 elliptic point
};

template <class CS>
std::vector<FareyTriangle> farey_triangles(const SymbolSpace<CS>& sp) {
    std::vector<FareyTriangle> out;
    std::vector<char> seen(sp.ncosets(), 0);
    for (long x = 0; x < sp.ncosets(); ++x) {
        if (seen[x]) continue;
        long y = x, n = 0;
        do {
            seen[y] = 1;
            y = sp.manin().tau_perm[y];
            ++n;
        } while (y != x);
        out.push_back({sp.manin().gens[x], Rat(n, 3)});
    }
    return out;
}

// Classical twisted Poincare pairing [phi, psi] = P(<phi, theta W psi>) on
// polynomial-dual symbols.
template <class Ring>
typename Ring::Elem twisted_pairing_classical(const SymbolSpace<DualCoeffs<Ring>>& sp,
                                              const std::vector<typename Ring::Elem>& phi,
                                              const std::vector<typename Ring::Elem>& psi) {
    const Ring& R = sp.coeffs().ring();
    long lvl = sp.manin().level;
    auto lam = sp.coeffs().weight();
    auto w = sp.apply_companions(psi, {Mat2i{0, -1, lvl, 0}});
    auto half = R.from_rat(Rat(1, 2));
    auto dv = [&](std::vector<typename Ring::Elem> v) {
        return DualVector<Ring>{lam, std::move(v)};
    };
    auto acc = R.zero();
    for (auto& T : farey_triangles(sp)) {
        Cusp A = apply_cusp(T.g, Cusp{0, 1}), B = apply_cusp(T.g, Cusp{1, 1}),
             C = apply_cusp(T.g, Cusp{1, 0});
        auto fAB = dv(sp.eval_cusp_path(phi, A, B));
        auto fBC = dv(sp.eval_cusp_path(phi, B, C));
        auto fCA = dv(sp.eval_cusp_path(phi, C, A));
        auto bAB = dv(sp.eval_cusp_path(w, A, B));
        auto bBC = dv(sp.eval_cusp_path(w, B, C));
        auto bCA = dv(sp.eval_cusp_path(w, C, A));
        auto tri = half * (pair_dual(R, fCA, bCA) - pair_dual(R, fAB, bAB) -
                           pair_dual(R, fBC, bBC)) -
                   pair_dual(R, fBC, bAB);
        acc = acc + tri * R.from_rat(T.wt);
    }
    return acc;
}

// Twisted pairing for distribution-valued symbols (over a weight or a weight
// disk): [Phi, Psi] = P(<Phi, T_Psi>_can).  The Atkin-Lehner action cannot be
// applied to distribution coefficients directly (its companion is not of
// Iwahori shape), so W is absorbed into the T-series: the distribution is Psi
// evaluated on the W-transformed path, and the module action of W becomes the
// kappa/q factors of the series coefficients.
template <class CS, class K>
typename CS::Ring::Elem twisted_pairing(const SymbolSpace<CS>& sp, const K& kap,
                                        const std::vector<typename CS::Ring::Elem>& Phi,
                                        const std::vector<typename CS::Ring::Elem>& Psi) {
    using Ring = typename CS::Ring;
    const Ring& R = sp.coeffs().ring();
    long lvl = sp.manin().level;
    Mat2i alinv{0, 1, -lvl, 0}; // proportional to the inverse Atkin-Lehner element
    auto half = R.from_rat(Rat(1, 2));
    // <front, (theta W Psi)(path)> = <front moments, T-series of Psi on the
    // W-transformed path> (coefficientwise identity checked in the tests)
    auto back = [&](const Cusp& from, const Cusp& to) {
        auto mu = Moments<Ring>{sp.eval_cusp_path(Psi, apply_cusp(alinv, from),
                                                  apply_cusp(alinv, to))};
        return build_t_series(kap, mu, 0, lvl).coeffs;
    };
    auto E = [&](const std::vector<typename Ring::Elem>& f,
                 const std::vector<typename Ring::Elem>& t) {
        return eval_moments_poly(R, Moments<Ring>{f}, t);
    };
    auto acc = R.zero();
    for (auto& T : farey_triangles(sp)) {
        Cusp A = apply_cusp(T.g, Cusp{0, 1}), B = apply_cusp(T.g, Cusp{1, 1}),
             C = apply_cusp(T.g, Cusp{1, 0});
        auto fAB = sp.eval_cusp_path(Phi, A, B);
        auto fBC = sp.eval_cusp_path(Phi, B, C);
        auto fCA = sp.eval_cusp_path(Phi, C, A);
        auto bAB = back(A, B), bBC = back(B, C), bCA = back(C, A);
        auto tri = half * (E(fCA, bCA) - E(fAB, bAB) - E(fBC, bBC)) - E(fBC, bAB);
        acc = acc + tri * R.from_rat(T.wt);
    }
    return acc;
}

} // namespace padl
