#pragma once

#include <array>
#include <numeric>

#include "padl/dist.hpp"
#include "padl/manin.hpp"

#include "json.hpp"

namespace padl {

// ---------------------------------------------------------------------------
// Subspace bookkeeping: a basis matrix (columns) together with a selection of
// pivot rows and the inverse of the pivot minor, so arbitrary vectors can be
// expressed in the basis (with a membership check).

template <class Ring>
Matrix<Ring> column_space(const Ring& R, const Matrix<Ring>& m) {
    std::vector<size_t> piv;
    echelonize(R, m, piv);
    Matrix<Ring> out(R, m.rows, piv.size());
    for (size_t j = 0; j < piv.size(); ++j)
        for (size_t i = 0; i < m.rows; ++i) out.at(i, j) = m.at(i, piv[j]);
    return out;
}

template <class Ring>
struct SubspaceBasis {
    Matrix<Ring> B;
    std::vector<size_t> prows;
    Matrix<Ring> inv;

    static SubspaceBasis build(const Ring& R, Matrix<Ring> basis) {
        SubspaceBasis sb;
        sb.B = std::move(basis);
        std::vector<size_t> piv;
        echelonize(R, mat_transpose(R, sb.B), piv);
        if (piv.size() != sb.B.cols)
            throw ContractViolation("subspace basis columns are dependent");
        sb.prows = piv;
        Matrix<Ring> minor(R, sb.B.cols, sb.B.cols);
        for (size_t i = 0; i < piv.size(); ++i)
            for (size_t j = 0; j < sb.B.cols; ++j)
                minor.at(i, j) = sb.B.at(piv[i], j);
        sb.inv = mat_inverse(R, minor);
        return sb;
    }

    std::vector<typename Ring::Elem> coords(const Ring& R,
                                            const std::vector<typename Ring::Elem>& v,
                                            bool verify = true) const {
        if (v.size() != B.rows) throw MathDomainError("coords: dimension mismatch");
        std::vector<typename Ring::Elem> sel;
        sel.reserve(prows.size());
        for (size_t r : prows) sel.push_back(v[r]);
        auto x = mat_apply(R, inv, sel);
        if (verify) {
            auto back = mat_apply(R, B, x);
            for (size_t i = 0; i < v.size(); ++i)
                if (!Ring::is_zero(back[i] - v[i]))
                    throw ContractViolation("coords: vector not in subspace");
        }
        return x;
    }
};

// ---------------------------------------------------------------------------
// Coefficient systems: a ring, a block dimension, and a cached left action of
// integer matrices.

template <class R>
class DualCoeffs {
public:
    using Ring = R;
    DualCoeffs(R ring, WeightPoint lam) : R_(std::move(ring)), lam_(lam) {}

    const Ring& ring() const { return R_; }
    WeightPoint weight() const { return lam_; }
    long dim() const { return lam_.n() + 1; }

    const Matrix<Ring>& act_matrix(const Mat2i& g) const {
        auto key = std::array<long, 4>{g.a, g.b, g.c, g.d};
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        GL2<Ring> gg = GL2<Ring>::from_ints(R_, g.a, g.b, g.c, g.d);
        auto m = mat_transpose(R_, right_action_matrix(R_, lam_, gg));
        return cache_.emplace(key, std::move(m)).first->second;
    }

private:
    Ring R_;
    WeightPoint lam_;
    mutable std::map<std::array<long, 4>, Matrix<Ring>> cache_;
};

class MomentCoeffs {
public:
    using Ring = QpRing;
    MomentCoeffs(QpRing ring, WeightPoint lam, long m_mom)
        : R_(ring), lam_(lam), m_mom_(m_mom) {}

    const Ring& ring() const { return R_; }
    WeightPoint weight() const { return lam_; }
    long dim() const { return m_mom_; }
    long moments() const { return m_mom_; }

    const Matrix<Ring>& act_matrix(const Mat2i& g) const {
        auto key = std::array<long, 4>{g.a, g.b, g.c, g.d};
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        GL2<Ring> gg = GL2<Ring>::from_ints(R_, g.a, g.b, g.c, g.d);
        auto m = weight_action_matrix(R_, lam_, gg, m_mom_);
        return cache_.emplace(key, std::move(m)).first->second;
    }

private:
    QpRing R_;
    WeightPoint lam_;
    long m_mom_;
    mutable std::map<std::array<long, 4>, Matrix<Ring>> cache_;
};

class FamilyCoeffs {
public:
    using Ring = DiskRingCtx;
    FamilyCoeffs(const WeightDisk& wd, long m_mom)
        : D_{wd.ring()}, wd_(wd), m_mom_(m_mom) {}

    const Ring& ring() const { return D_; }
    const WeightDisk& disk() const { return wd_; }
    long dim() const { return m_mom_; }
    long moments() const { return m_mom_; }

    const Matrix<Ring>& act_matrix(const Mat2i& g) const {
        auto key = std::array<long, 4>{g.a, g.b, g.c, g.d};
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        QpRing R{wd_.p, wd_.N};
        GL2<QpRing> gg = GL2<QpRing>::from_ints(R, g.a, g.b, g.c, g.d);
        auto m = weight_action_matrix(D_, wd_, gg, m_mom_);
        return cache_.emplace(key, std::move(m)).first->second;
    }

private:
    DiskRingCtx D_;
    WeightDisk wd_;
    long m_mom_;
    mutable std::map<std::array<long, 4>, Matrix<Ring>> cache_;
};

// ---------------------------------------------------------------------------
// Manin-symbol space: equivariant V-valued maps on degree-zero cusp divisors,
// stored by their values on the generator paths g_x {0 -> infinity}.

template <class CS>
class SymbolSpace {
public:
    using Ring = typename CS::Ring;
    using Elem = typename Ring::Elem;

    // with_basis = false skips the relation-kernel computation; the space then
    // only offers raw-vector evaluation and operators.  Distribution-valued
    // coefficient modules carry a precision filtration that a flat-precision
    // kernel does not respect, so their symbols are produced by lifting
    // classical ones and iterating U_p instead (the defect contracts into the
    // filtration), with relation_defect() as the witness.
    SymbolSpace(long level, CS cs, bool with_basis = true)
        : md_(build_manin(level)), cs_(std::move(cs)), has_basis_(with_basis) {
        if (with_basis) build_basis();
    }

    const ManinData& manin() const { return md_; }
    const CS& coeffs() const { return cs_; }
    long level() const { return md_.level; }
    long ncosets() const { return md_.p1.size(); }
    long block_dim() const { return cs_.dim(); }
    long full_dim() const { return ncosets() * block_dim(); }
    long dimension() const { require_basis(); return (long)basis_.B.cols; }
    const Matrix<Ring>& basis() const { require_basis(); return basis_.B; }

    std::vector<Elem> basis_symbol(long k) const {
        require_basis();
        std::vector<Elem> v;
        v.reserve(basis_.B.rows);
        for (size_t i = 0; i < basis_.B.rows; ++i) v.push_back(basis_.B.at(i, k));
        return v;
    }

    std::vector<Elem> from_coords(const std::vector<Elem>& x) const {
        require_basis();
        return mat_apply(cs_.ring(), basis_.B, x);
    }

    std::vector<Elem> coords(const std::vector<Elem>& sym, bool verify = true) const {
        require_basis();
        return basis_.coords(cs_.ring(), sym, verify);
    }

    // Full (unreduced) relation matrix: sigma rows then tau rows, acting on a
    // raw value vector; relation_defect(sym) = relation_matrix() * sym.
    Matrix<Ring> relation_matrix() const {
        const Ring& R = cs_.ring();
        long n = ncosets(), D = block_dim();
        Matrix<Ring> rel(R, 2 * n * D, n * D);
        auto add = [&](long row, long x, const Mat2i& g) {
            const auto& A = cs_.act_matrix(g);
            for (long i = 0; i < D; ++i)
                for (long j = 0; j < D; ++j)
                    rel.at(row * D + i, x * D + j) =
                        rel.at(row * D + i, x * D + j) + A.at(i, j);
        };
        for (long x = 0; x < n; ++x) {
            add(x, x, Mat2i{});
            add(x, md_.sigma_perm[x], md_.sigma_wit[x]);
            long y = md_.tau_perm[x], z = md_.tau_perm[y];
            add(n + x, x, Mat2i{});
            add(n + x, y, md_.tau_wit[x]);
            add(n + x, z, md_.tau_wit[x] * md_.tau_wit[y]);
        }
        return rel;
    }

    // Residuals of the unreduced sigma/tau (and central) relations; zero (in
    // the coefficient module's own sense of zero) iff sym is a symbol.
    std::vector<Elem> relation_defect(const std::vector<Elem>& sym) const {
        const Ring& R = cs_.ring();
        long n = ncosets(), D = block_dim();
        std::vector<Elem> out;
        auto add_rows = [&](const std::vector<std::pair<long, Mat2i>>& terms) {
            std::vector<Elem> acc(D, R.zero());
            for (auto& [x, g] : terms) {
                auto v = mat_apply(R, cs_.act_matrix(g), block(sym, x));
                for (long i = 0; i < D; ++i) acc[i] = acc[i] + v[i];
            }
            out.insert(out.end(), acc.begin(), acc.end());
        };
        for (long x = 0; x < n; ++x)
            add_rows({{x, Mat2i{}}, {md_.sigma_perm[x], md_.sigma_wit[x]}});
        for (long x = 0; x < n; ++x) {
            long y = md_.tau_perm[x], z = md_.tau_perm[y];
            add_rows({{x, Mat2i{}},
                      {y, md_.tau_wit[x]},
                      {z, md_.tau_wit[x] * md_.tau_wit[y]}});
        }
        return out;
    }

    std::vector<Elem> block(const std::vector<Elem>& sym, long x) const {
        long D = block_dim();
        return std::vector<Elem>(sym.begin() + x * D, sym.begin() + (x + 1) * D);
    }

    // value on the unimodular path g {0 -> infinity}
    std::vector<Elem> eval_unimodular(const std::vector<Elem>& sym,
                                      const Mat2i& g) const {
        long y = md_.p1.index(g.c, g.d);
        Mat2i gamma = g * md_.gens[y].adj();
        if (!in_gamma0(gamma, md_.level))
            throw ContractViolation("path evaluation: witness not in Gamma0");
        return mat_apply(cs_.ring(), cs_.act_matrix(gamma), block(sym, y));
    }

    std::vector<Elem> eval_cusp_path(const std::vector<Elem>& sym, const Cusp& from,
                                     const Cusp& to) const {
        const Ring& R = cs_.ring();
        std::vector<Elem> out(block_dim(), R.zero());
        for (auto& m : manin_infty_path(to)) {
            auto v = eval_unimodular(sym, m);
            for (long i = 0; i < block_dim(); ++i) out[i] = out[i] + v[i];
        }
        for (auto& m : manin_infty_path(from)) {
            auto v = eval_unimodular(sym, m);
            for (long i = 0; i < block_dim(); ++i) out[i] = out[i] - v[i];
        }
        return out;
    }

    // (T phi)(D) = sum_i delta_i^iota * phi(delta_i D) on every generator path
    std::vector<Elem> apply_companions(const std::vector<Elem>& sym,
                                       const std::vector<Mat2i>& deltas) const {
        const Ring& R = cs_.ring();
        std::vector<Elem> out(full_dim(), R.zero());
        long D = block_dim();
        for (long x = 0; x < ncosets(); ++x) {
            const Mat2i& g = md_.gens[x];
            Cusp c0 = normalize_cusp(g.b, g.d), ci = normalize_cusp(g.a, g.c);
            for (auto& d : deltas) {
                auto v = eval_cusp_path(sym, apply_cusp(d, c0), apply_cusp(d, ci));
                auto w = mat_apply(R, cs_.act_matrix(d.adj()), v);
                for (long i = 0; i < D; ++i) out[x * D + i] = out[x * D + i] + w[i];
            }
        }
        return out;
    }

    Matrix<Ring> operator_matrix(const std::vector<Mat2i>& deltas) const {
        const Ring& R = cs_.ring();
        Matrix<Ring> m(R, dimension(), dimension());
        for (long k = 0; k < dimension(); ++k) {
            auto img = apply_companions(basis_symbol(k), deltas);
            auto x = coords(img);
            for (long i = 0; i < dimension(); ++i) m.at(i, k) = x[i];
        }
        return m;
    }

    std::vector<Mat2i> hecke_companions(long q) const {
        std::vector<Mat2i> out;
        for (long a = 0; a < q; ++a) out.push_back(Mat2i{1, a, 0, q});
        if (md_.level % q != 0) out.push_back(Mat2i{q, 0, 0, 1});
        return out;
    }

    Matrix<Ring> hecke_matrix(long q) const { return operator_matrix(hecke_companions(q)); }
    Matrix<Ring> diamond_matrix(long q) const {
        if (std::gcd(q, md_.level) != 1)
            throw ConfigError("diamond operator needs gcd(q, level) = 1");
        return operator_matrix({Mat2i{q, 0, 0, q}});
    }
    Matrix<Ring> atkin_lehner_matrix() const {
        for (long f = 2; f * f <= md_.level; ++f)
            if (md_.level % (f * f) == 0)
                throw ConfigError("Atkin-Lehner involution needs square-free level");
        return operator_matrix({Mat2i{0, -1, md_.level, 0}});
    }
    Matrix<Ring> epsilon_matrix() const { return operator_matrix({kEpsilonFlip}); }

    // Boundary subspace (in basis coordinates): symbols that extend
    // equivariantly to all cusp divisors; these are the Eisenstein classes in
    // this realization.
    Matrix<Ring> eisenstein_subspace() const {
        const Ring& R = cs_.ring();
        long D = block_dim();
        long C = (long)md_.cusp_classes.size();
        // constraints: stabilizer invariance per class (plus central -I)
        bool minus_nontrivial = !act_is_identity(kMinusId);
        long rows_per = D * (minus_nontrivial ? 2 : 1);
        Matrix<Ring> con(R, C * rows_per, C * D);
        for (long c = 0; c < C; ++c) {
            const auto& st = cs_.act_matrix(md_.cusp_classes[c].stab);
            for (long i = 0; i < D; ++i)
                for (long j = 0; j < D; ++j) {
                    auto v = st.at(i, j);
                    if (i == j) v = v - R.one();
                    con.at(c * rows_per + i, c * D + j) = v;
                }
            if (minus_nontrivial) {
                const auto& mi = cs_.act_matrix(kMinusId);
                for (long i = 0; i < D; ++i)
                    for (long j = 0; j < D; ++j) {
                        auto v = mi.at(i, j);
                        if (i == j) v = v - R.one();
                        con.at(c * rows_per + D + i, c * D + j) = v;
                    }
            }
        }
        auto params = mat_kernel(R, con); // (C*D) x t
        // symbol map: v_x = w_inf * u_{class(inf)} - w_zero * u_{class(zero)}
        Matrix<Ring> S(R, full_dim(), C * D);
        for (long x = 0; x < ncosets(); ++x) {
            const auto& wi = cs_.act_matrix(md_.wit_inf[x]);
            const auto& wz = cs_.act_matrix(md_.wit_zero[x]);
            long ci = md_.class_of_inf[x], cz = md_.class_of_zero[x];
            for (long i = 0; i < D; ++i)
                for (long j = 0; j < D; ++j) {
                    S.at(x * D + i, ci * D + j) = S.at(x * D + i, ci * D + j) + wi.at(i, j);
                    S.at(x * D + i, cz * D + j) = S.at(x * D + i, cz * D + j) - wz.at(i, j);
                }
        }
        auto full = mat_mul(R, S, params); // full_dim x t
        Matrix<Ring> in_coords(R, dimension(), full.cols);
        for (size_t j = 0; j < full.cols; ++j) {
            std::vector<Elem> col;
            for (size_t i = 0; i < full.rows; ++i) col.push_back(full.at(i, j));
            auto x = coords(col); // membership check: extensions restrict to symbols
            for (long i = 0; i < dimension(); ++i) in_coords.at(i, j) = x[i];
        }
        return column_space(R, in_coords);
    }

    // Hecke-stable complement of the boundary classes, cut out by the
    // characteristic polynomial of T_q on the boundary subspace.
    Matrix<Ring> cuspidal_subspace(long q) const {
        const Ring& R = cs_.ring();
        long K = dimension();
        auto E = eisenstein_subspace();
        if (E.cols == 0) return Matrix<Ring>::identity(R, K);
        auto T = hecke_matrix(q);
        auto TE = mat_mul(R, T, E);
        auto X = mat_solve(R, E, TE); // T restricted to E
        auto f = mat_charpoly(R, X);
        // evaluate f at T
        Matrix<Ring> M(R, K, K);
        for (size_t k = f.size(); k-- > 0;) {
            M = mat_mul(R, T, M);
            for (long i = 0; i < K; ++i) M.at(i, i) = M.at(i, i) + f[k];
        }
        auto C = column_space(R, M);
        if (C.cols + E.cols != (size_t)K)
            throw ContractViolation("cuspidal complement has wrong dimension");
        Matrix<Ring> both(R, K, C.cols + E.cols);
        for (size_t j = 0; j < C.cols; ++j)
            for (long i = 0; i < K; ++i) both.at(i, j) = C.at(i, j);
        for (size_t j = 0; j < E.cols; ++j)
            for (long i = 0; i < K; ++i) both.at(i, C.cols + j) = E.at(i, j);
        if (mat_rank(R, both) != (size_t)K)
            throw ContractViolation("cuspidal and boundary subspaces overlap");
        mat_solve(R, C, mat_mul(R, T, C)); // throws unless T-stable
        return C;
    }

    // (1 +- epsilon)/2 images
    std::pair<Matrix<Ring>, Matrix<Ring>> epsilon_split() const {
        const Ring& R = cs_.ring();
        auto P = epsilon_matrix();
        long K = dimension();
        auto half = R.from_rat(Rat(1, 2));
        Matrix<Ring> plus(R, K, K), minus(R, K, K);
        for (long i = 0; i < K; ++i)
            for (long j = 0; j < K; ++j) {
                auto idij = (i == j) ? R.one() : R.zero();
                plus.at(i, j) = (idij + P.at(i, j)) * half;
                minus.at(i, j) = (idij - P.at(i, j)) * half;
            }
        return {column_space(R, plus), column_space(R, minus)};
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["level"] = md_.level;
        j["cosets"] = ncosets();
        j["block_dim"] = block_dim();
        j["dimension"] = dimension();
        j["cusp_classes"] = md_.cusp_classes.size();
        return j;
    }

    nlohmann::json matrix_json(const Matrix<Ring>& m) const {
        nlohmann::json rows = nlohmann::json::array();
        for (size_t i = 0; i < m.rows; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (size_t j = 0; j < m.cols; ++j) row.push_back(Ring::str(m.at(i, j)));
            rows.push_back(row);
        }
        return rows;
    }

private:
    void require_basis() const {
        if (!has_basis_)
            throw ContractViolation("symbol space was built without a basis");
    }

    bool act_is_identity(const Mat2i& g) const {
        const Ring& R = cs_.ring();
        const auto& m = cs_.act_matrix(g);
        for (size_t i = 0; i < m.rows; ++i)
            for (size_t j = 0; j < m.cols; ++j) {
                auto expect = (i == j) ? R.one() : R.zero();
                if (!Ring::is_zero(m.at(i, j) - expect)) return false;
            }
        return true;
    }

    void build_basis() {
        const Ring& R = cs_.ring();
        long n = ncosets(), D = block_dim();

        // sigma reduction: one free block per sigma orbit
        std::vector<long> orb(n, -1);      // reduced block index of coset x
        std::vector<Mat2i> expand_g(n);    // v_x = sign * act(expand_g) u_orb
        std::vector<int> expand_s(n, 1);
        std::vector<long> reps;
        std::vector<long> sigma_fixed;
        for (long x = 0; x < n; ++x) {
            if (orb[x] >= 0) continue;
            long y = md_.sigma_perm[x];
            orb[x] = (long)reps.size();
            expand_g[x] = Mat2i{};
            reps.push_back(x);
            if (y == x) {
                sigma_fixed.push_back(x);
            } else {
                // v_x + W * v_y = 0  ->  v_y = -W^{-1} v_x
                orb[y] = orb[x];
                expand_g[y] = md_.sigma_wit[x].adj();
                expand_s[y] = -1;
            }
        }
        long nred = (long)reps.size();

        // tau orbits
        std::vector<char> seen(n, 0);
        struct Row {
            std::vector<std::pair<long, std::pair<Mat2i, int>>> terms; // (redblk, (g, sign))
        };
        std::vector<Row> rows;
        for (long x = 0; x < n; ++x) {
            if (seen[x]) continue;
            long y = md_.tau_perm[x], z = md_.tau_perm[y];
            seen[x] = seen[y] = seen[z] = 1;
            Row r;
            Mat2i pre{}; // identity
            long cur = x;
            for (int step = 0; step < 3; ++step) {
                r.terms.push_back({orb[cur], {pre * expand_g[cur], expand_s[cur]}});
                pre = pre * md_.tau_wit[cur];
                cur = md_.tau_perm[cur];
                if (step == 0 && y == x) break; // tau-fixed: still three terms below
            }
            if (y == x) {
                // fixed point: v + V v + V^2 v = 0
                r.terms.clear();
                Mat2i V = md_.tau_wit[x];
                r.terms.push_back({orb[x], {expand_g[x], expand_s[x]}});
                r.terms.push_back({orb[x], {V * expand_g[x], expand_s[x]}});
                r.terms.push_back({orb[x], {V * V * expand_g[x], expand_s[x]}});
            }
            rows.push_back(std::move(r));
        }
        for (long x : sigma_fixed) {
            Row r;
            r.terms.push_back({orb[x], {Mat2i{}, 1}});
            r.terms.push_back({orb[x], {md_.sigma_wit[x], 1}});
            rows.push_back(std::move(r));
        }
        bool minus_nontrivial = !act_is_identity(kMinusId);
        if (minus_nontrivial)
            for (long i = 0; i < nred; ++i) {
                Row r;
                r.terms.push_back({i, {kMinusId, 1}});
                r.terms.push_back({i, {Mat2i{}, -1}});
                rows.push_back(std::move(r));
            }

        Matrix<Ring> rel(R, (long)rows.size() * D, nred * D);
        for (size_t ri = 0; ri < rows.size(); ++ri)
            for (auto& [blk, gs] : rows[ri].terms) {
                const auto& A = cs_.act_matrix(gs.first);
                for (long i = 0; i < D; ++i)
                    for (long j = 0; j < D; ++j) {
                        auto v = A.at(i, j);
                        if (gs.second < 0) v = R.zero() - v;
                        rel.at(ri * D + i, blk * D + j) =
                            rel.at(ri * D + i, blk * D + j) + v;
                    }
            }
        auto kred = mat_kernel(R, rel);
        // guard against silent unsolved rows over non-field coefficient rings
        auto resid = mat_mul(R, rel, kred);
        for (auto& e : resid.data)
            if (!Ring::is_zero(e))
                throw PrecisionExhausted("relation kernel not exact at working precision");

        // expand to full coordinates
        Matrix<Ring> full(R, n * D, kred.cols);
        for (long x = 0; x < n; ++x) {
            const auto& A = cs_.act_matrix(expand_g[x]);
            for (size_t col = 0; col < kred.cols; ++col)
                for (long i = 0; i < D; ++i) {
                    auto acc = R.zero();
                    for (long j = 0; j < D; ++j)
                        acc = acc + A.at(i, j) * kred.at(orb[x] * D + j, col);
                    if (expand_s[x] < 0) acc = R.zero() - acc;
                    full.at(x * D + i, col) = acc;
                }
        }
        basis_ = SubspaceBasis<Ring>::build(R, std::move(full));
    }

    ManinData md_;
    CS cs_;
    bool has_basis_ = false;
    SubspaceBasis<Ring> basis_;
};

} // namespace padl
