#include "padl/dist.hpp"

namespace padl {

void require_iwahori(const GL2<QpRing>& g, long p) {
    if (g.c.val_lower_bound() < 1)
        throw MathDomainError("moment action: lower-left entry not divisible by p");
    if (g.d.is_zero() || g.d.valuation() != 0)
        throw MathDomainError("moment action: lower-right entry not a unit");
    if (g.det().is_zero())
        throw MathDomainError("moment action: determinant ~ 0 at this precision");
    (void)p;
}

// z-expansion of (az+b)^j (cz+d)^e, e of either sign, truncated at length J
static PolyVec<QpRing> mobius_power(const QpRing& R, const GL2<QpRing>& g, long j,
                                    long e, long J) {
    PolyVec<QpRing> num{g.b, g.a}, den{g.d, g.c};
    auto r = poly_pow(R, num, j, J);
    if (e >= 0)
        r = poly_mul(R, r, poly_pow(R, den, e, J), J);
    else
        r = poly_mul(R, r, poly_pow(R, series_inv(R, den, J), -e, J), J);
    r.resize(J, R.zero());
    return r;
}

Matrix<QpRing> weight_action_matrix(const QpRing& R, WeightPoint lam,
                                    const GL2<QpRing>& g, long m_mom) {
    require_iwahori(g, R.p);
    auto detl2 = ring_pow(R, g.det(), lam.l2);
    Matrix<QpRing> A(R, m_mom, m_mom);
    for (long j = 0; j < m_mom; ++j) {
        auto col = mobius_power(R, g, j, lam.n() - j, m_mom);
        for (long k = 0; k < m_mom; ++k) A.at(j, k) = col[k] * detl2;
    }
    return A;
}

Matrix<DiskRingCtx> weight_action_matrix(const DiskRingCtx& D, const WeightDisk& wd,
                                         const GL2<QpRing>& g, long m_mom) {
    QpRing R{wd.p, wd.N};
    require_iwahori(g, wd.p);
    long J = m_mom;

    // exponent series e(z) = log<cz+d> / log(1+p)
    auto lg = padic_log(R.from_rat(Rat(1 + wd.p)));
    PolyVec<QpRing> es(J, R.zero());
    es[0] = padic_log(principal_part(g.d)) / lg;
    auto cd = g.c / g.d;
    auto cdp = cd;
    for (long m = 1; m < J; ++m) {
        Rat sign = (m % 2) ? 1 : -1;
        es[m] = cdp * R.from_rat(sign / Rat(m)) / lg;
        cdp = cdp * cd;
    }

    // (1+w)^{e(z)}: w^r coefficient is the falling-factorial binomial
    // B_r(z) = e(e-1)...(e-r+1)/r! as a series in z
    std::vector<PolyVec<QpRing>> B(wd.M);
    B[0] = PolyVec<QpRing>(J, R.zero());
    B[0][0] = R.one();
    for (long r = 1; r < wd.M; ++r) {
        auto f = es;
        f[0] = f[0] - R.from_rat(Rat(r - 1));
        B[r] = poly_mul(R, B[r - 1], f, J);
        B[r].resize(J, R.zero());
        auto rinv = R.from_rat(Rat(1) / Rat(r));
        for (auto& x : B[r]) x = x * rinv;
    }

    auto detl = ring_pow(R, g.det(), wd.ell);
    Matrix<DiskRingCtx> A(D, m_mom, m_mom);
    for (long j = 0; j < m_mom; ++j) {
        // kappa(t_g(z)) * Mobius^j
        //   = det^ell (az+b)^j (cz+d)^{l1c - ell - j} * (1+w)^{e(z)}
        auto Q = mobius_power(R, g, j, wd.center.l1 - wd.ell - j, J);
        for (auto& x : Q) x = x * detl;
        for (long k = 0; k < J; ++k) {
            std::vector<PAdicScalar> wc(wd.M, PAdicScalar::zero(wd.p, wd.N));
            for (long r = 0; r < wd.M; ++r) {
                auto acc = R.zero();
                for (long m = 0; m <= k; ++m) acc = acc + Q[m] * B[r][k - m];
                wc[r] = acc;
            }
            A.at(j, k) = DiskElem(D.R, std::move(wc));
        }
    }
    return A;
}

Moments<QpRing> refilter(const QpRing& R, Moments<QpRing> mu) {
    for (long j = 0; j < mu.size(); ++j)
        mu.mu[j] = mu.mu[j].truncate_abs(std::max(R.N - j, 1L));
    return mu;
}

Moments<DiskRingCtx> refilter(const DiskRingCtx& D, Moments<DiskRingCtx> mu) {
    for (long j = 0; j < mu.size(); ++j)
        mu.mu[j] = mu.mu[j].truncate_abs(std::max(D.R.N - j, 1L));
    return mu;
}

} // namespace padl
