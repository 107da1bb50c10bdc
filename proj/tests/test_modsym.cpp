#include "doctest.h"

#include <algorithm>

#include "padl/family.hpp"

using namespace padl;

namespace {

RatRing QQ;

using RatSpace = SymbolSpace<DualCoeffs<RatRing>>;

RatSpace rat_space(long level, long n) {
    return RatSpace(level, DualCoeffs<RatRing>(QQ, WeightPoint{n, 0}));
}

bool mat_eq(const Matrix<RatRing>& a, const Matrix<RatRing>& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (size_t i = 0; i < a.data.size(); ++i)
        if (!(a.data[i] == b.data[i])) return false;
    return true;
}

bool is_scalar(const Matrix<RatRing>& a, const Rat& s) {
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j)
            if (!(a.at(i, j) == (i == j ? s : Rat(0)))) return false;
    return true;
}

std::vector<Rat> restricted_charpoly(const RatSpace& sp, const Matrix<RatRing>& T,
                                     const Matrix<RatRing>& sub) {
    auto X = mat_solve(QQ, sub, mat_mul(QQ, T, sub));
    return mat_charpoly(QQ, X);
}

} // namespace

TEST_CASE("projective line and cusp combinatorics") {
    CHECK(build_p1(1).size() == 1);
    CHECK(build_p1(11).size() == 12);
    CHECK(build_p1(14).size() == 24);
    CHECK(build_p1(33).size() == 48);

    for (long M : {1L, 11L, 14L, 15L, 33L}) {
        auto md = build_manin(M);
        long n = md.p1.size();
        // sigma is an involution, tau has order three, witnesses close up
        for (long x = 0; x < n; ++x) {
            CHECK(md.sigma_perm[md.sigma_perm[x]] == x);
            CHECK(md.tau_perm[md.tau_perm[md.tau_perm[x]]] == x);
            CHECK(in_gamma0(md.sigma_wit[x], M));
            CHECK(in_gamma0(md.tau_wit[x], M));
            CHECK(md.gens[x] * kSigma ==
                  md.sigma_wit[x] * md.gens[md.sigma_perm[x]]);
            CHECK(md.gens[x] * kTau == md.tau_wit[x] * md.gens[md.tau_perm[x]]);
        }
    }

    CHECK(build_manin(1).cusp_classes.size() == 1);
    CHECK(build_manin(11).cusp_classes.size() == 2);
    CHECK(build_manin(14).cusp_classes.size() == 4);
    CHECK(build_manin(33).cusp_classes.size() == 4);

    // widths of the cusp classes sum to the index [SL2 : Gamma0]
    for (long M : {11L, 14L, 15L, 33L}) {
        auto md = build_manin(M);
        long total = 0;
        for (auto& cc : md.cusp_classes) total += cc.width;
        CHECK(total == md.p1.size());
    }
}

TEST_CASE("unimodular path decomposition telescopes") {
    for (auto [p, q] : std::vector<std::pair<long, long>>{
             {0, 1}, {1, 3}, {7, 11}, {-5, 18}, {13, 33}, {25, 33}, {-17, 60}}) {
        auto path = manin_infty_path(normalize_cusp(p, q));
        REQUIRE(!path.empty());
        CHECK(apply_cusp(path.front(), Cusp{0, 1}) == Cusp{1, 0});
        CHECK(apply_cusp(path.back(), Cusp{1, 0}) == normalize_cusp(p, q));
        for (size_t k = 0; k + 1 < path.size(); ++k)
            CHECK(apply_cusp(path[k], Cusp{1, 0}) ==
                  apply_cusp(path[k + 1], Cusp{0, 1}));
    }
    CHECK(manin_infty_path(Cusp{1, 0}).empty());
}

TEST_CASE("level one: dimensions and Hecke eigenvalues") {
    // weight 2: no symbols at all
    CHECK(rat_space(1, 0).dimension() == 0);

    // weight 4: one boundary class, T_2 = 1 + 2^3
    auto s4 = rat_space(1, 2);
    CHECK(s4.dimension() == 1);
    CHECK(s4.eisenstein_subspace().cols == 1);
    CHECK(s4.cuspidal_subspace(2).cols == 0);
    CHECK(is_scalar(s4.hecke_matrix(2), 9));

    // weight 12: two cuspidal classes with T_2 = -24, one boundary class
    auto s12 = rat_space(1, 10);
    CHECK(s12.dimension() == 3);
    auto E = s12.eisenstein_subspace();
    CHECK(E.cols == 1);
    auto C = s12.cuspidal_subspace(2);
    CHECK(C.cols == 2);
    auto T2 = s12.hecke_matrix(2);
    auto fE = restricted_charpoly(s12, T2, E);
    CHECK(fE[0] == Rat(-2049)); // X - (1 + 2^11)
    auto fC = restricted_charpoly(s12, T2, C);
    CHECK(fC[0] == Rat(576)); // (X + 24)^2
    CHECK(fC[1] == Rat(48));
    CHECK(fC[2] == Rat(1));
}

TEST_CASE("level 11, weight 2: dimensions, Hecke, involutions") {
    auto sp = rat_space(11, 0);
    CHECK(sp.dimension() == 3);
    auto E = sp.eisenstein_subspace();
    auto C = sp.cuspidal_subspace(2);
    CHECK(E.cols == 1);
    CHECK(C.cols == 2);

    auto T2 = sp.hecke_matrix(2);
    auto U11 = sp.hecke_matrix(11);
    CHECK(mat_eq(mat_mul(QQ, T2, U11), mat_mul(QQ, U11, T2)));

    // boundary class: T_2 = 1 + 2; cuspidal: (X + 2)^2, U_11 = 1
    CHECK(restricted_charpoly(sp, T2, E)[0] == Rat(-3));
    auto fC = restricted_charpoly(sp, T2, C);
    CHECK(fC[0] == Rat(4));
    CHECK(fC[1] == Rat(4));
    auto fU = restricted_charpoly(sp, U11, C);
    CHECK(fU[0] == Rat(1));
    CHECK(fU[1] == Rat(-2));

    // Fricke involution: squares to the identity, commutes with T_2, scalar
    // on the cuspidal part
    auto W = sp.atkin_lehner_matrix();
    CHECK(is_scalar(mat_mul(QQ, W, W), 1));
    CHECK(mat_eq(mat_mul(QQ, W, T2), mat_mul(QQ, T2, W)));
    // Fricke eigenvalue of the level-11 newform is -1 (so the sign of its
    // functional equation, -w, is +1)
    auto WC = mat_solve(QQ, C, mat_mul(QQ, W, C));
    CHECK(is_scalar(WC, -1));

    // epsilon: involution, commutes with T_2, splits the cuspidal part (1,1)
    auto eps = sp.epsilon_matrix();
    CHECK(is_scalar(mat_mul(QQ, eps, eps), 1));
    CHECK(mat_eq(mat_mul(QQ, eps, T2), mat_mul(QQ, T2, eps)));
    auto [plus, minus] = sp.epsilon_split();
    CHECK(plus.cols + minus.cols == 3);
    auto eC = mat_solve(QQ, C, mat_mul(QQ, eps, C));
    auto fe = mat_charpoly(QQ, eC);
    CHECK(fe[0] == Rat(-1)); // X^2 - 1: one class of each sign
    CHECK(fe[1] == Rat(0));
}

TEST_CASE("level 11, weight 4: dimensions, diamond, naive kernel cross-check") {
    auto sp = rat_space(11, 2);
    CHECK(sp.dimension() == 6);
    CHECK(sp.eisenstein_subspace().cols == 2);
    CHECK(sp.cuspidal_subspace(2).cols == 4);

    auto T2 = sp.hecke_matrix(2);
    auto T3 = sp.hecke_matrix(3);
    CHECK(mat_eq(mat_mul(QQ, T2, T3), mat_mul(QQ, T3, T2)));

    // diamond <3> is the central character 3^{w(lambda)} = 9
    CHECK(is_scalar(sp.diamond_matrix(3), 9));

    // direct kernel of the unreduced relation matrix has the same dimension
    const auto& md = sp.manin();
    const auto& cs = sp.coeffs();
    long n = md.p1.size(), D = cs.dim();
    Matrix<RatRing> rel(QQ, 2 * n * D, n * D);
    auto add_block = [&](long row, long x, const Mat2i& g, int sign) {
        const auto& A = cs.act_matrix(g);
        for (long i = 0; i < D; ++i)
            for (long j = 0; j < D; ++j) {
                auto v = A.at(i, j);
                if (sign < 0) v = Rat(0) - v;
                rel.at(row * D + i, x * D + j) = rel.at(row * D + i, x * D + j) + v;
            }
    };
    for (long x = 0; x < n; ++x) {
        add_block(x, x, Mat2i{}, 1);
        add_block(x, md.sigma_perm[x], md.sigma_wit[x], 1);
        long y = md.tau_perm[x], z = md.tau_perm[y];
        add_block(n + x, x, Mat2i{}, 1);
        add_block(n + x, y, md.tau_wit[x], 1);
        add_block(n + x, z, md.tau_wit[x] * md.tau_wit[y], 1);
    }
    auto ker = mat_kernel(QQ, rel);
    CHECK(ker.cols == 6);
    // and every reduced basis symbol satisfies the naive relations
    for (long k = 0; k < sp.dimension(); ++k) {
        auto r = mat_apply(QQ, rel, sp.basis_symbol(k));
        for (auto& e : r) CHECK(e == 0);
    }
}

TEST_CASE("level 15: dimensions and commuting operators") {
    auto sp = rat_space(15, 0);
    CHECK(sp.dimension() == 5);
    CHECK(sp.eisenstein_subspace().cols == 3);
    CHECK(sp.cuspidal_subspace(2).cols == 2);
    auto T2 = sp.hecke_matrix(2);
    auto T7 = sp.hecke_matrix(7);
    auto U3 = sp.hecke_matrix(3);
    auto U5 = sp.hecke_matrix(5);
    CHECK(mat_eq(mat_mul(QQ, T2, T7), mat_mul(QQ, T7, T2)));
    CHECK(mat_eq(mat_mul(QQ, U3, U5), mat_mul(QQ, U5, U3)));
    CHECK(mat_eq(mat_mul(QQ, T2, U3), mat_mul(QQ, U3, T2)));
}

TEST_CASE("level 33, weight 2: old and new Hecke eigenvalues") {
    auto sp = rat_space(33, 0);
    CHECK(sp.dimension() == 9);
    auto E = sp.eisenstein_subspace();
    auto C = sp.cuspidal_subspace(2);
    CHECK(E.cols == 3);
    CHECK(C.cols == 6);

    auto T2 = sp.hecke_matrix(2);
    auto U3 = sp.hecke_matrix(3);
    CHECK(mat_eq(mat_mul(QQ, T2, U3), mat_mul(QQ, U3, T2)));

    // cuspidal T_2: (X + 2)^4 from the level-11 class, (X - 1)^2 from the
    // level-33 class
    auto f = restricted_charpoly(sp, T2, C);
    std::vector<Rat> expect{16, 0, -24, -8, 9, 6, 1};
    REQUIRE(f.size() == expect.size());
    for (size_t i = 0; i < f.size(); ++i) CHECK(f[i] == expect[i]);

    // cuspidal U_3: (X^2 + X + 3)^2 from the level-11 classes, (X + 1)^2 from
    // the level-33 class
    auto fU = restricted_charpoly(sp, U3, C);
    std::vector<Rat> expectU{9, 24, 28, 22, 12, 4, 1};
    REQUIRE(fU.size() == expectU.size());
    for (size_t i = 0; i < fU.size(); ++i) CHECK(fU[i] == expectU[i]);

    // cuspidal U_11 is unipotent with eigenvalue 1 throughout
    auto U11 = sp.hecke_matrix(11);
    auto f11 = restricted_charpoly(sp, U11, C);
    std::vector<Rat> expect11{1, -6, 15, -20, 15, -6, 1};
    REQUIRE(f11.size() == expect11.size());
    for (size_t i = 0; i < f11.size(); ++i) CHECK(f11[i] == expect11[i]);
}

TEST_CASE("U_p iteration lifts a classical symbol to a moment-valued one") {
    long p = 11, N = 6, J = 6;
    QpRing R{p, N};
    SymbolSpace<DualCoeffs<QpRing>> csp(11, DualCoeffs<QpRing>(R, WeightPoint{0, 0}));
    REQUIRE(csp.dimension() == 3);
    auto C = csp.cuspidal_subspace(2);
    std::vector<PAdicScalar> c0;
    for (size_t i = 0; i < C.rows; ++i) c0.push_back(C.at(i, 0));
    auto phi = csp.from_coords(c0); // U_11-eigenvalue 1 on the cuspidal part

    SymbolSpace<MomentCoeffs> dsp(11, MomentCoeffs(R, WeightPoint{0, 0}, J), false);
    CHECK_THROWS_AS(dsp.dimension(), ContractViolation);

    // pad with zero higher moments, then iterate U_p
    std::vector<PAdicScalar> v(dsp.full_dim(), R.zero());
    for (long x = 0; x < dsp.ncosets(); ++x) v[x * J] = phi[x];
    auto Ucomp = dsp.hecke_companions(p);
    long iters = N + 1;
    for (long t = 0; t < iters; ++t) v = dsp.apply_companions(v, Ucomp);

    // the relation defect has contracted into the moment filtration
    auto defect = dsp.relation_defect(v);
    for (size_t i = 0; i < defect.size(); ++i) {
        long j = (long)(i % J);
        CHECK(defect[i].val_lower_bound() >= std::max(N - j, 1L));
    }

    // specializing the first moment recovers the classical U_p iterate
    auto cl = phi;
    for (long t = 0; t < iters; ++t) cl = csp.apply_companions(cl, Ucomp);
    for (long x = 0; x < dsp.ncosets(); ++x) CHECK((v[x * J] - cl[x]).is_zero());
    CHECK_NOTHROW(csp.coords(cl));

    // the lift is a U_p eigensymbol with eigenvalue 1 up to the filtration
    auto uv = dsp.apply_companions(v, Ucomp);
    for (size_t i = 0; i < uv.size(); ++i) {
        long j = (long)(i % J);
        CHECK((uv[i] - v[i]).val_lower_bound() >= std::max(N - j, 1L));
    }
}

TEST_CASE("level-by-level lift builds a weight-family symbol") {
    long p = 3, N = 20, J = 8, M = 4;
    QpRing R{p, N};

    // classical U_3-eigenvector with eigenvalue -1, computed exactly
    // (cuspidal U_3 charpoly at level 33 is (X^2+X+3)^2 (X+1)^2)
    RatRing Q;
    SymbolSpace<DualCoeffs<RatRing>> csp(33, DualCoeffs<RatRing>(Q, WeightPoint{0, 0}));
    auto U = csp.hecke_matrix(3);
    for (size_t i = 0; i < U.rows; ++i) U.at(i, i) = U.at(i, i) + Rat(1);
    auto ker = mat_kernel(Q, U);
    REQUIRE(ker.cols >= 1);
    std::vector<Rat> kc(ker.rows);
    for (size_t i = 0; i < ker.rows; ++i) kc[i] = ker.at(i, 0);
    auto kfull = csp.from_coords(kc);

    // moment-valued center symbol: pad with zero moments, contract the
    // defect into the filtration by iterating -U_3, then project onto the
    // eigenvalue -1 component with q(U)/q(-1), q = charpoly/(X+1)-factors
    SymbolSpace<MomentCoeffs> msp(33, MomentCoeffs(R, WeightPoint{0, 0}, J), false);
    std::vector<PAdicScalar> v0(msp.full_dim(), R.zero());
    for (long g = 0; g < msp.ncosets(); ++g) v0[g * J] = R.from_rat(kfull[g]);
    auto Uc = msp.hecke_companions(p);
    for (long t = 0; t < N + 3; ++t) {
        v0 = msp.apply_companions(v0, Uc);
        for (auto& e : v0) e = e * R.from_rat(-1);
    }
    v0 = apply_up_poly(msp, v0, Uc,
                       {Rat(9, 24), Rat(-9, 24), Rat(2, 24), Rat(-3, 24), Rat(1, 24)});

    WeightDisk wd{p, 0, WeightPoint{0, 0}, N, M};
    SymbolSpace<FamilyCoeffs> fsp(33, FamilyCoeffs(wd, J), false);
    auto phi = family_lift(fsp, v0, 8, Rat(-1));

    // relation-defect floors: full contraction in w^0 and w^1 (up to the
    // moment filtration), integrality at w^2 where the truncated system has
    // an O(1) obstruction, and a bounded denominator at w^3
    auto prof = family_defect_profile(fsp, phi);
    for (long j = 0; j < J; ++j) {
        CHECK(prof[0][j] >= std::min(N - 2, J - 1 - j));
        CHECK(prof[1][j] >= std::min(N - 2, J - 2 - j));
        CHECK(prof[2][j] >= 0);
        CHECK(prof[3][j] >= -1);
    }

    // specialization at the disk center matches the moment symbol
    auto w0 = PAdicScalar::zero(p, N);
    for (long g = 0; g < fsp.ncosets(); ++g)
        CHECK((phi[g * J].specialize(w0) - v0[g * J]).truncate_abs(N - 2).is_zero());

    // specialization at the weight-2 point is a genuine weight-(2,0) symbol
    // to positive precision
    auto w2 = wd.classical_w_value(2);
    std::vector<PAdicScalar> sp2(fsp.full_dim(), PAdicScalar::zero(p, 1));
    for (size_t i = 0; i < sp2.size(); ++i) {
        try {
            sp2[i] = phi[i].specialize(w2);
        } catch (const PrecisionExhausted&) {}
    }
    SymbolSpace<MomentCoeffs> msp2(33, MomentCoeffs(R, WeightPoint{2, 0}, J), false);
    auto d2 = msp2.relation_defect(sp2);
    for (long j = 0; j < J; ++j) {
        long mv = 1 << 20;
        for (size_t i = j; i < d2.size(); i += (size_t)J)
            mv = std::min(mv, d2[i].val_lower_bound());
        CHECK(mv >= (j + 1 < J ? 2 : 1));
    }
}
