#include "doctest.h"

#include <random>

#include "padl/slope.hpp"
#include "padl/weightspace.hpp"

using namespace padl;

namespace {
std::mt19937 rng(1729);

PAdicScalar qp(const QpRing& R, long num, long den = 1) {
    return R.from_rat(Rat(num) / Rat(den));
}

// random p-adic unit
PAdicScalar rnd_unit(const QpRing& R) {
    std::uniform_int_distribution<long> d(1, 1000);
    long u = d(rng);
    while (u % R.p == 0) u = d(rng);
    return R.from_rat(Rat(u));
}

bool poly_eq(const QpRing& R, const PolyVec<QpRing>& a, const PolyVec<QpRing>& b) {
    auto ta = poly_trim(R, a), tb = poly_trim(R, b);
    if (ta.size() != tb.size()) return false;
    for (size_t i = 0; i < ta.size(); ++i)
        if (!ta[i].eq(tb[i])) return false;
    return true;
}
} // namespace

TEST_CASE("newton polygon basics") {
    QpRing R{3, 20};
    // X^2 - 3X + 27: hull of (0,3),(1,1),(2,0) -> root valuations 1 and 2
    PolyVec<QpRing> f{qp(R, 27), qp(R, -3), qp(R, 1)};
    auto segs = newton_polygon(R, f);
    REQUIRE(segs.size() == 2);
    CHECK(segs[0].slope == Rat(1));
    CHECK(segs[0].mult == 1);
    CHECK(segs[1].slope == Rat(2));
    CHECK(segs[1].mult == 1);

    PolyVec<QpRing> g{qp(R, -1), qp(R, 1)};  // X - 1
    auto s2 = newton_polygon(R, g);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0].slope == Rat(0));
    CHECK(s2[0].mult == 1);

    PolyVec<QpRing> h{R.zero(), R.zero(), qp(R, 3)};  // 3X^2
    CHECK_THROWS_AS(newton_polygon(R, h), MathDomainError);
}

TEST_CASE("slope factorization splits the example polynomial") {
    QpRing R{3, 20};
    PolyVec<QpRing> f{qp(R, 27), qp(R, -3), qp(R, 1)};
    auto fac = slope_factor(R, f, Rat(3) / Rat(2));
    CHECK(poly_degree(R, fac.Q) == 1);
    CHECK(poly_degree(R, fac.S) == 1);
    auto nq = newton_polygon(R, fac.Q);
    auto ns = newton_polygon(R, fac.S);
    CHECK(nq[0].slope == Rat(1));
    CHECK(ns[0].slope == Rat(2));
    CHECK(poly_eq(R, poly_mul(R, fac.Q, fac.S), f));

    // nu outside the slope range: trivial splits
    auto all = slope_factor(R, f, Rat(5));
    CHECK(poly_eq(R, all.Q, f));
    CHECK(poly_degree(R, all.S) == 0);
    auto none = slope_factor(R, f, Rat(1) / Rat(2));
    CHECK(poly_degree(R, none.Q) == 0);
    CHECK(poly_eq(R, none.S, f));

    // slope collision is rejected
    CHECK_THROWS_AS(slope_factor(R, f, Rat(1)), MathDomainError);
}

TEST_CASE("random slope-adapted instances recompose") {
    QpRing R{3, 40};
    std::uniform_int_distribution<long> dslope(0, 3), ddeg(2, 5);
    int done = 0;
    while (done < 200) {
        // product of linear factors (X - p^s u) with known slopes
        long deg = ddeg(rng);
        std::vector<long> slopes(deg);
        PolyVec<QpRing> f{R.one()};
        for (long i = 0; i < deg; ++i) {
            slopes[i] = dslope(rng);
            auto root = ring_pow(R, qp(R, 3), slopes[i]) * rnd_unit(R);
            f = poly_mul(R, f, PolyVec<QpRing>{R.zero() - root, R.one()});
        }
        std::sort(slopes.begin(), slopes.end());
        // pick a separating half-integer nu strictly inside the slope range
        long lo = slopes.front(), hi = slopes.back();
        if (lo == hi) continue;
        Rat nu = Rat(2 * lo + 1) / Rat(2);
        auto fac = slope_factor(R, f, nu);
        CHECK(poly_eq(R, poly_mul(R, fac.Q, fac.S), f));
        long expect_t = 0;
        for (long s : slopes)
            if (Rat(s) < nu) ++expect_t;
        CHECK(poly_degree(R, fac.Q) == expect_t);
        // polygon side-checks need every coefficient visible at the
        // certified precision; skip when one has collapsed to O(p^a)
        auto readable = [&](const PolyVec<QpRing>& g) {
            for (auto& c : g)
                if (c.is_zero()) return false;
            return true;
        };
        if (readable(fac.Q))
            for (auto& seg : newton_polygon(R, fac.Q)) CHECK(seg.slope < nu);
        if (readable(fac.S))
            for (auto& seg : newton_polygon(R, fac.S)) CHECK(seg.slope > nu);
        ++done;
    }
}

TEST_CASE("slope projector on a diagonal operator") {
    QpRing R{3, 20};
    Matrix<QpRing> U(R, 3, 3);
    U.at(0, 0) = qp(R, 1);
    U.at(1, 1) = qp(R, 3);
    U.at(2, 2) = qp(R, 27);
    auto P = slope_projector(R, U, Rat(2));
    for (long i = 0; i < 3; ++i)
        for (long j = 0; j < 3; ++j) {
            auto expect = (i == j && i < 2) ? R.one() : R.zero();
            CHECK(P.at(i, j).eq(expect));
        }
    // nu over all slopes: identity
    auto Pid = slope_projector(R, U, Rat(7));
    for (long i = 0; i < 3; ++i)
        for (long j = 0; j < 3; ++j)
            CHECK(Pid.at(i, j).eq(i == j ? R.one() : R.zero()));
}

TEST_CASE("projector idempotence and equivariance on random conjugates") {
    QpRing R{3, 36};
    std::uniform_int_distribution<long> dent(-6, 6), dslope(0, 2);
    for (int t = 0; t < 25; ++t) {
        // D with known slopes, conjugated by a random unimodular matrix
        long n = 4;
        Matrix<QpRing> D(R, n, n);
        std::vector<long> slopes(n);
        for (long i = 0; i < n; ++i) {
            slopes[i] = dslope(rng) * 2;  // slopes in {0,2,4}
            D.at(i, i) = ring_pow(R, qp(R, 3), slopes[i]) * rnd_unit(R);
        }
        Matrix<QpRing> V(R, n, n);
        for (auto& x : V.data) x = qp(R, dent(rng));
        for (long i = 0; i < n; ++i) V.at(i, i) = V.at(i, i) + R.one();
        bool unimod = true;
        try {
            auto Vi = mat_inverse(R, V);
            auto U = mat_mul(R, mat_mul(R, V, D), Vi);
            Rat nu(1);
            auto P = slope_projector(R, U, nu);
            auto PP = mat_mul(R, P, P);
            auto PU = mat_mul(R, P, U);
            auto UP = mat_mul(R, U, P);
            long rank = 0;
            for (long i = 0; i < n; ++i)
                if (slopes[i] < 1) ++rank;
            for (size_t i = 0; i < PP.data.size(); ++i) {
                CHECK(PP.data[i].eq(P.data[i]));
                CHECK(PU.data[i].eq(UP.data[i]));
            }
            CHECK((long)mat_rank(R, P) == rank);
        } catch (const MathDomainError&) {
            unimod = false;  // V singular or slope collision; skip
        }
        (void)unimod;
    }
}

TEST_CASE("disk-ring slope factorization specializes correctly") {
    long p = 3, N = 14, M = 4;
    WeightDisk wd{p, 0, WeightPoint{0, 0}, N, M};
    DiskRingCtx D{wd.ring()};
    QpRing R{p, N};
    auto wconst = [&](long c) { return DiskElem::from_rat(D.R, Rat(c)); };
    auto welt = DiskElem::w(D.R);
    // f = X^2 - (3 + 3w)X + 27(1 + w): root valuations 1 and 2 across the disk
    PolyVec<DiskRingCtx> f{
        wconst(27) * (DiskElem::one(D.R) + welt),
        DiskElem::zero(D.R) - (wconst(3) + wconst(3) * welt),
        DiskElem::one(D.R)};
    auto fac = slope_factor(D, f, Rat(3) / Rat(2));
    CHECK(poly_degree(D, fac.Q) == 1);
    CHECK(poly_degree(D, fac.S) == 1);
    auto prod = poly_mul(D, fac.Q, fac.S);
    for (size_t i = 0; i < f.size(); ++i) CHECK(prod[i].eq(f[i]));

    // specialization commutes at three classical points; the specialized
    // polynomial is rebuilt exactly so the direct factorization runs at full
    // precision
    for (long l1 : {2L, 4L, 6L}) {
        auto wv = wd.classical_w_value(l1);
        PolyVec<QpRing> fs{qp(R, 27) * (R.one() + wv),
                           R.zero() - (qp(R, 3) + qp(R, 3) * wv), R.one()};
        auto fac_s = slope_factor(R, fs, Rat(3) / Rat(2));
        for (size_t i = 0; i < fac.Q.size(); ++i)
            CHECK(fac.Q[i].specialize(wv).eq(fac_s.Q[i]));
        for (size_t i = 0; i < fac.S.size(); ++i)
            CHECK(fac.S[i].specialize(wv).eq(fac_s.S[i]));
    }
}

TEST_CASE("disk-ring slope projector specializes correctly") {
    long p = 3, N = 12, M = 3;
    WeightDisk wd{p, 0, WeightPoint{0, 0}, N, M};
    DiskRingCtx D{wd.ring()};
    QpRing R{p, N};
    auto welt = DiskElem::w(D.R);
    // upper-triangular with diagonal slopes 0 and 2, w-dependent mixing
    Matrix<DiskRingCtx> U(D, 2, 2);
    U.at(0, 0) = DiskElem::from_rat(D.R, Rat(2)) + welt;
    U.at(0, 1) = DiskElem::one(D.R) + welt * welt;
    U.at(1, 1) = DiskElem::from_rat(D.R, Rat(9)) * (DiskElem::one(D.R) - welt);
    auto P = slope_projector(D, U, Rat(1));
    auto PP = mat_mul(D, P, P);
    auto PU = mat_mul(D, P, U);
    auto UP = mat_mul(D, U, P);
    for (size_t i = 0; i < PP.data.size(); ++i) {
        CHECK(PP.data[i].eq(P.data[i]));
        CHECK(PU.data[i].eq(UP.data[i]));
    }
    for (long l1 : {2L, 4L}) {
        auto wv = wd.classical_w_value(l1);
        Matrix<QpRing> Us(R, 2, 2);  // exact specialization of the entries
        Us.at(0, 0) = R.from_rat(Rat(2)) + wv;
        Us.at(0, 1) = R.one() + wv * wv;
        Us.at(1, 1) = R.from_rat(Rat(9)) * (R.one() - wv);
        auto Ps = slope_projector(R, Us, Rat(1));
        for (long i = 0; i < 2; ++i)
            for (long j = 0; j < 2; ++j)
                CHECK(P.at(i, j).specialize(wv).eq(Ps.at(i, j)));
    }
}
