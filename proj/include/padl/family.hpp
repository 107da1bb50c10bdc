#pragma once

#include "padl/modsym.hpp"

namespace padl {

// Construction of weight-family modular symbols: a symbol with values in the
// disk-ring moment module that satisfies the Manin relations w-coefficient by
// w-coefficient, built level by level and polished by U_p iteration, with
// relation_defect() as the accuracy witness.
//
// Deliberately absent: an eigenvalue routine.  At the levels of interest the
// ordinary part of the U_p characteristic polynomial can have discriminant of
// odd valuation, so the ordinary Hecke algebra is a ramified double cover of
// the weight disk and no eigenvalue function exists in the disk ring; only
// the symbols themselves live over the disk.

// Arithmetic that absorbs precision exhaustion into an O(p) zero.  The
// truncated relation system has gauge freedom along its approximate kernel,
// so solutions carry components of negative valuation; downstream products
// can exhaust the joint precision without affecting the certified digits.
inline PAdicScalar fuzzy_mul(const PAdicScalar& a, const PAdicScalar& b) {
    try {
        return a * b;
    } catch (const PrecisionExhausted&) {
        return PAdicScalar::zero(a.prime(), 1);
    }
}
inline PAdicScalar fuzzy_sub(const PAdicScalar& a, const PAdicScalar& b) {
    try {
        return a - b;
    } catch (const PrecisionExhausted&) {
        return PAdicScalar::zero(a.prime(), 1);
    }
}

// Approximate solve of A x = b by Gauss-Jordan with global minimum-valuation
// pivoting.  Columns picked at valuation v > 0 are rescaled by p^-v first
// (the system is only determined up to its approximate kernel, so division
// by small pivots is avoided rather than performed); pivots of valuation
// above vcut, or with fewer than two significant digits, are skipped and the
// corresponding coordinates stay zero.
inline std::vector<PAdicScalar> approx_solve(const QpRing& R, Matrix<QpRing> A,
                                             std::vector<PAdicScalar> b, long vcut) {
    long rows = A.rows, cols = A.cols, p = R.p;
    std::vector<long> pivrow(cols, -1), cshift(cols, 0);
    std::vector<char> used(rows, 0), done(cols, 0);
    auto ppw = [&](long e) {
        Rat r(1);
        for (long t = 0; t < (e >= 0 ? e : -e); ++t) r = r * Rat(p);
        return R.from_rat(e >= 0 ? r : Rat(1) / r);
    };
    for (;;) {
        long br = -1, bc = -1, bv = vcut + 1;
        for (long r = 0; r < rows; ++r) {
            if (used[r]) continue;
            for (long c = 0; c < cols; ++c) {
                if (done[c]) continue;
                const auto& e = A.at(r, c);
                if (e.is_zero()) continue;
                long v = e.valuation();
                if (e.abs_precision() - v < 2) continue;
                if (v < bv) { bv = v; br = r; bc = c; }
            }
            if (bv == 0) break;
        }
        if (br < 0) break;
        if (bv > 0) {
            auto sc = ppw(-bv);
            for (long r = 0; r < rows; ++r)
                if (!A.at(r, bc).is_zero()) A.at(r, bc) = fuzzy_mul(A.at(r, bc), sc);
            cshift[bc] = bv;
        }
        used[br] = 1;
        done[bc] = 1;
        pivrow[bc] = br;
        auto pinv = A.at(br, bc).inv();
        for (long cc = 0; cc < cols; ++cc)
            if (!A.at(br, cc).is_zero()) A.at(br, cc) = fuzzy_mul(A.at(br, cc), pinv);
        b[br] = fuzzy_mul(b[br], pinv);
        for (long r = 0; r < rows; ++r) {
            if (r == br) continue;
            auto m = A.at(r, bc);
            if (m.is_zero()) continue;
            for (long cc = 0; cc < cols; ++cc)
                if (!A.at(br, cc).is_zero())
                    A.at(r, cc) = fuzzy_sub(A.at(r, cc), fuzzy_mul(m, A.at(br, cc)));
            b[r] = fuzzy_sub(b[r], fuzzy_mul(m, b[br]));
        }
    }
    std::vector<PAdicScalar> x(cols, R.zero());
    for (long c = 0; c < cols; ++c)
        if (pivrow[c] >= 0)
            x[c] = cshift[c] ? fuzzy_mul(b[pivrow[c]], ppw(-cshift[c])) : b[pivrow[c]];
    return x;
}

// Evaluate a rational polynomial in U_p on a moment-valued symbol (used to
// cut a U_p-iterate down to a chosen spectral component).
template <class CS>
std::vector<typename CS::Ring::Elem> apply_up_poly(
    const SymbolSpace<CS>& sp, const std::vector<typename CS::Ring::Elem>& v,
    const std::vector<Mat2i>& up, const std::vector<Rat>& poly) {
    const auto& R = sp.coeffs().ring();
    auto pw = v;
    std::vector<typename CS::Ring::Elem> out(v.size(), R.zero());
    for (size_t d = 0; d < poly.size(); ++d) {
        if (d) pw = sp.apply_companions(pw, up);
        auto c = R.from_rat(poly[d]);
        for (size_t i = 0; i < v.size(); ++i) out[i] = out[i] + pw[i] * c;
    }
    return out;
}

// Lift a center symbol (moment-valued, already satisfying the relations up
// to the moment filtration) to a family over the weight disk.  Level by
// level in w, the next coefficient is solved from the linearized relation
// system of the w^0 slice, with rows and columns rescaled by p^(moment
// index) so the filtration weights are uniformized; the result is then
// polished by iterating scale * U_p (scale = inverse of the U_p eigenvalue
// of the intended component, so the center stays put).
inline std::vector<DiskElem> family_lift(const SymbolSpace<FamilyCoeffs>& fsp,
                                         const std::vector<PAdicScalar>& v0,
                                         long polish_iters, const Rat& scale) {
    const auto& wd = fsp.coeffs().disk();
    DiskRing DR = wd.ring();
    QpRing R{wd.p, wd.N};
    long J = fsp.coeffs().moments(), M = wd.M, full = fsp.full_dim();
    if ((long)v0.size() != full)
        throw ConfigError("family_lift: center symbol has wrong length");

    auto ppow = [&](long e) {
        Rat r(1);
        for (long t = 0; t < (e >= 0 ? e : -e); ++t) r = r * Rat(wd.p);
        return R.from_rat(e >= 0 ? r : Rat(1) / r);
    };

    // w^0 slice of the relation matrix, conjugated by the moment weights
    auto Rfam = fsp.relation_matrix();
    long Rr = Rfam.rows;
    Matrix<QpRing> A(R, Rr, full);
    for (long i = 0; i < Rr; ++i)
        for (long c = 0; c < full; ++c) {
            A.at(i, c) = Rfam.at(i, c).coeff(0);
            long sh = (i % J) - (c % J);
            if (sh != 0 && !A.at(i, c).is_zero())
                A.at(i, c) = fuzzy_mul(A.at(i, c), ppow(sh));
        }

    std::vector<std::vector<PAdicScalar>> vlev(M, std::vector<PAdicScalar>(full, R.zero()));
    vlev[0] = v0;
    auto assemble = [&](long upto) {
        std::vector<DiskElem> sym(full, DiskElem::zero(DR));
        for (long i = 0; i < full; ++i) {
            DiskElem acc = DiskElem::zero(DR), wp = DiskElem::one(DR);
            for (long s = 0; s <= upto; ++s) {
                acc = acc + DiskElem::constant(DR, vlev[s][i]) * wp;
                wp = wp * DiskElem::w(DR);
            }
            sym[i] = acc;
        }
        return sym;
    };

    for (long r = 1; r < M; ++r) {
        auto part = assemble(r - 1);
        auto dfam = fsp.relation_defect(part);
        std::vector<PAdicScalar> b(Rr);
        for (long i = 0; i < Rr; ++i)
            b[i] = fuzzy_mul(R.zero() - dfam[i].coeff(r), ppow(i % J));
        auto y = approx_solve(R, A, b, 3);
        for (long c = 0; c < full; ++c) vlev[r][c] = fuzzy_mul(y[c], ppow(-(c % J)));
    }

    auto phi = assemble(M - 1);
    auto up = fsp.hecke_companions(wd.p);
    auto sc = DiskElem::from_rat(DR, scale);
    for (long it = 0; it < polish_iters; ++it) {
        phi = fsp.apply_companions(phi, up);
        for (auto& e : phi) e = e * sc;
    }
    return phi;
}

// Minimum relation-defect valuation per (w-power, moment-index) cell: the
// accuracy profile of a family symbol.
inline std::vector<std::vector<long>> family_defect_profile(
    const SymbolSpace<FamilyCoeffs>& fsp, const std::vector<DiskElem>& phi) {
    long J = fsp.coeffs().moments(), M = fsp.coeffs().disk().M;
    auto d = fsp.relation_defect(phi);
    std::vector<std::vector<long>> prof(M, std::vector<long>(J, 1 << 20));
    for (long r = 0; r < M; ++r)
        for (size_t i = 0; i < d.size(); ++i)
            prof[r][i % J] = std::min(prof[r][i % J], d[i].coeff(r).val_lower_bound());
    return prof;
}

} // namespace padl
