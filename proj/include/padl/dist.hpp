#pragma once

#include <map>

#include "padl/polyrep.hpp"

namespace padl {

// Truncated distributions on Z_p represented by moment vectors
// mu_j = mu(z^j), j < M_mom, with the standard decreasing precision
// filtration mu_j known mod p^{max(N-j, 1)}.

template <class Ring>
struct Moments {
    std::vector<typename Ring::Elem> mu;

    long size() const { return (long)mu.size(); }
};

// Iwahori-shaped matrix: lower-left entry divisible by p, lower-right a unit,
// nonzero determinant.  Throws otherwise.
void require_iwahori(const GL2<QpRing>& g, long p);

// Matrix A of the weight-lambda action on moments, truncated at M_mom:
// column j holds the z-expansion of
//   det(g)^{lambda2} (az+b)^j (cz+d)^{n(lambda)-j},
// i.e. (mu|g)_j = sum_k A(j,k) mu_k.  Negative powers of cz+d are expanded as
// series (d is a unit).
Matrix<QpRing> weight_action_matrix(const QpRing& R, WeightPoint lam,
                                    const GL2<QpRing>& g, long m_mom);

// Family version: the torus factor kappa(diag(cz+d, det/(cz+d))) is evaluated
// through the disk character, giving a disk-ring-valued moment transform.
Matrix<DiskRingCtx> weight_action_matrix(const DiskRingCtx& D, const WeightDisk& wd,
                                         const GL2<QpRing>& g, long m_mom);

// Reimpose the moment filtration.
Moments<QpRing> refilter(const QpRing& R, Moments<QpRing> mu);
Moments<DiskRingCtx> refilter(const DiskRingCtx& D, Moments<DiskRingCtx> mu);

template <class Ring>
Moments<Ring> act_moments(const Ring& R, const Matrix<Ring>& action,
                          const Moments<Ring>& mu) {
    if ((long)action.cols != mu.size())
        throw MathDomainError("act_moments: truncation mismatch");
    return refilter(R, Moments<Ring>{mat_apply(R, action, mu.mu)});
}

// rho_lambda: the functional P -> mu(P) on polynomials of degree <= n(lambda),
// i.e. the dual vector sum_r mu_r ell_r.
template <class Ring>
DualVector<Ring> specialize_rho(const Ring&, const Moments<Ring>& mu, WeightPoint lam) {
    if (mu.size() <= lam.n())
        throw PrecisionExhausted("specialize_rho: not enough moments");
    DualVector<Ring> out{lam, {}};
    out.coeffs.assign(mu.mu.begin(), mu.mu.begin() + lam.n() + 1);
    return out;
}

// Locally analytic function at radius index s: one power-series expansion in
// (z - e) per residue disk e + p^s Z_p.  s = 0 means a single global series.
template <class Ring>
struct AnalyticFunction {
    long s = 0;
    std::map<long, std::vector<typename Ring::Elem>> disks; // center -> coeffs
};

// Evaluation through the moment truncation.  The disk expansions must glue to
// a single global series of length <= size(mu) (checked); genuinely local
// functions are outside this truncated model.
template <class Ring>
typename Ring::Elem eval_distribution(const Ring& R, const Moments<Ring>& mu,
                                      const AnalyticFunction<Ring>& f) {
    std::vector<typename Ring::Elem> global;
    bool have = false;
    for (auto& [e, coeffs] : f.disks) {
        if ((long)coeffs.size() > mu.size())
            throw PrecisionExhausted("eval_distribution: expansion exceeds moments");
        // recenter (z-e)^j into powers of z
        std::vector<typename Ring::Elem> g(coeffs.size(), R.zero());
        auto me = R.zero() - R.from_rat(Rat(e));
        for (size_t j = 0; j < coeffs.size(); ++j) {
            // (z - e)^j contributes binom(j,k) (-e)^{j-k} z^k
            for (size_t k = 0; k <= j; ++k)
                g[k] = g[k] + coeffs[j] * R.from_rat(Rat(binomial_int(j, k))) *
                                  ring_pow(R, me, (long)(j - k));
        }
        if (!have) {
            global = std::move(g);
            have = true;
        } else {
            if (g.size() != global.size())
                throw MathDomainError("eval_distribution: truncation mismatch");
            for (size_t k = 0; k < g.size(); ++k)
                if (!Ring::eq(g[k], global[k]))
                    throw MathDomainError(
                        "eval_distribution: local expansions do not glue");
        }
    }
    auto acc = R.zero();
    for (size_t j = 0; j < global.size(); ++j) acc = acc + mu.mu[j] * global[j];
    return acc;
}

template <class Ring>
typename Ring::Elem eval_moments_poly(const Ring& R, const Moments<Ring>& mu,
                                      const std::vector<typename Ring::Elem>& coeffs) {
    if ((long)coeffs.size() > mu.size())
        throw PrecisionExhausted("eval_moments_poly: degree exceeds moments");
    auto acc = R.zero();
    for (size_t j = 0; j < coeffs.size(); ++j) acc = acc + mu.mu[j] * coeffs[j];
    return acc;
}

} // namespace padl
