#include "doctest.h"

#include <random>

#include "padl/dist.hpp"

using namespace padl;

namespace {

std::mt19937 rng(4242);

Moments<QpRing> rnd_moments(const QpRing& R, long m) {
    std::uniform_int_distribution<int> d(-20, 20);
    Moments<QpRing> mu;
    for (long j = 0; j < m; ++j) mu.mu.push_back(R.from_rat(Rat(d(rng))));
    return refilter(R, mu);
}

GL2<QpRing> gl2i(const QpRing& R, long a, long b, long c, long d) {
    return GL2<QpRing>::from_ints(R, a, b, c, d);
}

bool moments_eq(const Moments<QpRing>& a, const Moments<QpRing>& b) {
    if (a.mu.size() != b.mu.size()) return false;
    for (size_t j = 0; j < a.mu.size(); ++j)
        if (!(a.mu[j] - b.mu[j]).is_zero()) return false;
    return true;
}

} // namespace

TEST_CASE("moment action: identity and unipotent shift") {
    QpRing R{3, 10};
    long J = 8;
    auto id = weight_action_matrix(R, WeightPoint{2, 0}, GL2<QpRing>::identity(R), J);
    auto mu = rnd_moments(R, J);
    CHECK(moments_eq(act_moments(R, id, mu), refilter(R, mu)));

    // gamma = (1 1; 0 1): mu_j -> sum_k binom(j,k) mu_k
    auto A = weight_action_matrix(R, WeightPoint{2, 0}, gl2i(R, 1, 1, 0, 1), J);
    for (long j = 0; j < J; ++j)
        for (long k = 0; k < J; ++k) {
            Rat expect = k <= j ? Rat(binomial_int(j, k)) : 0;
            CHECK((A.at(j, k) - R.from_rat(expect)).is_zero());
        }
}

TEST_CASE("moment action rejects non-Iwahori matrices") {
    QpRing R{3, 10};
    CHECK_THROWS_AS(weight_action_matrix(R, WeightPoint{0, 0}, gl2i(R, 0, 1, 1, 0), 4),
                    MathDomainError);
    CHECK_THROWS_AS(weight_action_matrix(R, WeightPoint{0, 0}, gl2i(R, 1, 0, 1, 3), 4),
                    MathDomainError);
}

TEST_CASE("rho specialization: basics and kernel") {
    QpRing R{3, 12};
    Moments<QpRing> mu;
    mu.mu = {R.one(), R.zero(), R.zero(), R.zero()};
    auto ell = specialize_rho(R, mu, WeightPoint{2, 0});
    CHECK(ell.coeffs.size() == 3);
    CHECK(ell.coeffs[0].eq(R.one()));
    CHECK(ell.coeffs[1].is_zero());

    Moments<QpRing> nu;
    nu.mu = {R.zero(), R.zero(), R.zero(), R.one()};
    auto k = specialize_rho(R, nu, WeightPoint{2, 0});
    for (auto& c : k.coeffs) CHECK(c.is_zero());

    CHECK_THROWS_AS(specialize_rho(R, nu, WeightPoint{4, 0}), PrecisionExhausted);
}

TEST_CASE("rho intertwines the moment action with the dual action") {
    QpRing R{3, 12};
    long J = 8;
    std::vector<GL2<QpRing>> gammas = {gl2i(R, 1, 1, 0, 1), gl2i(R, 2, 1, 3, 5),
                                       gl2i(R, 1, 0, 3, 1), gl2i(R, 3, 2, 0, 1),
                                       gl2i(R, 4, 3, 6, 7)};
    for (long n = 0; n <= 3; ++n) {
        WeightPoint lam{n, 0};
        for (auto& g : gammas) {
            for (int t = 0; t < 4; ++t) {
                auto mu = rnd_moments(R, J);
                auto A = weight_action_matrix(R, lam, g, J);
                auto lhs = specialize_rho(R, act_moments(R, A, mu), lam);
                auto rhs = act_left_dual(R, g, specialize_rho(R, mu, lam));
                for (long r = 0; r <= n; ++r)
                    CHECK((lhs.coeffs[r] - rhs.coeffs[r]).is_zero());
            }
        }
    }
}

TEST_CASE("moment action composition at full truncation M_mom = N") {
    QpRing R{3, 8};
    long J = 8; // dropped tail then sits below the filtration
    WeightPoint lam{2, 0};
    auto g1 = gl2i(R, 2, 1, 3, 5);
    auto g2 = gl2i(R, 3, 2, 0, 1);
    auto A1 = weight_action_matrix(R, lam, g1, J);
    auto A2 = weight_action_matrix(R, lam, g2, J);
    auto A21 = weight_action_matrix(R, lam, g2 * g1, J);
    for (int t = 0; t < 5; ++t) {
        auto mu = rnd_moments(R, J);
        auto lhs = act_moments(R, A2, act_moments(R, A1, mu));
        auto rhs = act_moments(R, A21, mu);
        CHECK(moments_eq(lhs, rhs));
    }
}

TEST_CASE("distribution evaluation: Dirac, linearity, gluing") {
    QpRing R{3, 12};
    long J = 6;
    // Dirac at a: moments a^j
    long a = 4;
    Moments<QpRing> mu;
    for (long j = 0; j < J; ++j) mu.mu.push_back(ring_pow(R, R.from_rat(a), j));
    AnalyticFunction<QpRing> f;
    f.disks[0] = {R.from_rat(2), R.from_rat(-1), R.from_rat(0), R.from_rat(5)};
    // f(z) = 2 - z + 5 z^3 -> f(4) = 2 - 4 + 320 = 318
    CHECK((eval_distribution(R, mu, f) - R.from_rat(318)).is_zero());

    // the same polynomial presented on the three residue disks mod 3 glues
    AnalyticFunction<QpRing> g;
    g.s = 1;
    for (long e : {0L, 1L, 2L}) {
        // expand f around z = e: coefficients of (z-e)^j
        std::vector<PAdicScalar> c(4, R.zero());
        // f(z+e) by Horner
        std::vector<Rat> base{2, -1, 0, 5}, acc(4, 0);
        for (size_t i = base.size(); i-- > 0;) {
            std::vector<Rat> next(4, 0);
            for (size_t k = 0; k + 1 < 4; ++k) next[k + 1] = acc[k];
            for (size_t k = 0; k < 4; ++k) next[k] += acc[k] * e;
            next[0] += base[i];
            acc = next;
        }
        for (size_t k = 0; k < 4; ++k) c[k] = R.from_rat(acc[k]);
        g.disks[e] = c;
    }
    CHECK((eval_distribution(R, mu, g) - R.from_rat(318)).is_zero());

    // tampering with one disk breaks the gluing
    g.disks[1][0] = g.disks[1][0] + R.one();
    CHECK_THROWS_AS(eval_distribution(R, mu, g), MathDomainError);

    // linearity
    auto nu = rnd_moments(R, J);
    auto xi = rnd_moments(R, J);
    Moments<QpRing> sum;
    for (long j = 0; j < J; ++j) sum.mu.push_back(nu.mu[j] + xi.mu[j]);
    CHECK((eval_distribution(R, sum, f) -
           eval_distribution(R, nu, f) - eval_distribution(R, xi, f))
              .is_zero());
}

TEST_CASE("norm bound: integral test functions keep integral values") {
    QpRing R{3, 12};
    long J = 6;
    std::uniform_int_distribution<int> d(-9, 9);
    for (int t = 0; t < 20; ++t) {
        auto mu = rnd_moments(R, J);
        long vmu = 100;
        for (auto& m : mu.mu) vmu = std::min(vmu, m.val_lower_bound());
        AnalyticFunction<QpRing> f;
        auto& c = f.disks[0];
        for (long j = 0; j < J; ++j) c.push_back(R.from_rat(Rat(d(rng))));
        auto v = eval_distribution(R, mu, f);
        CHECK(v.val_lower_bound() >= vmu);
    }
}

TEST_CASE("family moment action specializes to the classical action") {
    WeightDisk wd{3, 0, WeightPoint{0, 0}, 14, 6};
    DiskRingCtx D{wd.ring()};
    QpRing R{wd.p, wd.N};
    long J = 6;
    std::vector<GL2<QpRing>> gammas = {gl2i(R, 1, 1, 0, 1), gl2i(R, 2, 1, 3, 5),
                                       gl2i(R, 3, 2, 0, 1)};
    for (auto& g : gammas) {
        auto Afam = weight_action_matrix(D, wd, g, J);
        for (long k : {wd.center.l1, wd.center.l1 + 2, wd.center.l1 + 4}) {
            auto wval = wd.classical_w_value(k);
            auto Acl = weight_action_matrix(R, WeightPoint{k, 0}, g, J);
            for (long j = 0; j < J; ++j)
                for (long kk = 0; kk < J; ++kk) {
                    auto diff = Afam.at(j, kk).specialize(wval) - Acl.at(j, kk);
                    // w^M truncation error has valuation >= M
                    CHECK(diff.truncate_abs(std::min(diff.abs_precision(), wd.M - 2))
                              .is_zero());
                }
        }
    }
}

TEST_CASE("family action at the center (w = 0) matches the central weight") {
    WeightDisk wd{3, 1, WeightPoint{3, 1}, 12, 5};
    DiskRingCtx D{wd.ring()};
    QpRing R{wd.p, wd.N};
    long J = 5;
    auto g = gl2i(R, 2, 1, 3, 5);
    auto Afam = weight_action_matrix(D, wd, g, J);
    auto Acl = weight_action_matrix(R, wd.center, g, J);
    auto w0 = PAdicScalar::zero(wd.p, wd.N);
    for (long j = 0; j < J; ++j)
        for (long k = 0; k < J; ++k)
            CHECK((Afam.at(j, k).specialize(w0) - Acl.at(j, k)).is_zero());
}
