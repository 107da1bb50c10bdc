#include "padl/manin.hpp"

#include <numeric>

#include "padl/errors.hpp"

namespace padl {

namespace {

long pos_mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long fdiv(long a, long b) { // floor division, b > 0
    long q = a / b, r = a % b;
    return (r < 0) ? q - 1 : q;
}

// x*a + y*b = gcd(a,b)
long egcd(long a, long b, long& x, long& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    long x1, y1;
    long g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

} // namespace

bool in_gamma0(const Mat2i& g, long M) {
    return g.det() == 1 && pos_mod(g.c, M) == 0;
}

Cusp normalize_cusp(long num, long den) {
    if (den == 0) {
        if (num == 0) throw MathDomainError("normalize_cusp: 0/0");
        return {1, 0};
    }
    long g = std::gcd(std::abs(num), std::abs(den));
    num /= g;
    den /= g;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return {num, den};
}

Cusp apply_cusp(const Mat2i& g, const Cusp& s) {
    return normalize_cusp(g.a * s.first + g.b * s.second,
                          g.c * s.first + g.d * s.second);
}

Mat2i cusp_matrix(const Cusp& s) {
    long x, y;
    long g = egcd(s.first, s.second, x, y);
    if (g != 1) throw MathDomainError("cusp_matrix: not in lowest terms");
    // a*x + c*y = 1  ->  det (a, -y; c, x) = a*x + c*y = 1
    Mat2i m{s.first, -y, s.second, x};
    if (m.det() != 1) throw ContractViolation("cusp_matrix: det != 1");
    return m;
}

std::optional<Mat2i> cusp_equiv(const Cusp& s, const Cusp& t, long M) {
    Mat2i gs = cusp_matrix(s), gt = cusp_matrix(t);
    Mat2i gi = gs.adj();
    for (long u = 0; u < M; ++u) {
        Mat2i shift{1, u, 0, 1};
        Mat2i gamma = gt * shift * gi;
        if (in_gamma0(gamma, M)) return gamma;
    }
    return std::nullopt;
}

long cusp_width(const Cusp& s, long M) {
    long c = pos_mod(s.second, M);
    return M / std::gcd(pos_mod(c * c, M), M);
}

long P1Z::index(long c, long d) const {
    c = pos_mod(c, M);
    d = pos_mod(d, M);
    std::pair<long, long> best{-1, -1};
    for (long u = 1; u <= M; ++u) {
        if (std::gcd(u, M) != 1) continue;
        std::pair<long, long> cand{pos_mod(u * c, M), pos_mod(u * d, M)};
        if (best.first < 0 || cand < best) best = cand;
    }
    auto it = lookup.find(best);
    if (it == lookup.end()) throw MathDomainError("P1 index: not a projective point");
    return it->second;
}

P1Z build_p1(long M) {
    P1Z p1;
    p1.M = M;
    for (long c = 0; c < M; ++c)
        for (long d = 0; d < M; ++d) {
            if (std::gcd(std::gcd(c, d), M) != 1) continue;
            std::pair<long, long> best{-1, -1};
            for (long u = 1; u <= M; ++u) {
                if (std::gcd(u, M) != 1) continue;
                std::pair<long, long> cand{pos_mod(u * c, M), pos_mod(u * d, M)};
                if (best.first < 0 || cand < best) best = cand;
            }
            if (best == std::pair<long, long>{c, d}) {
                p1.lookup[best] = (long)p1.reps.size();
                p1.reps.push_back(best);
            }
        }
    if (M == 1) {
        // the single point (0 : 0) reduces everything
        if (p1.reps.empty()) {
            p1.reps.push_back({0, 0});
            p1.lookup[{0, 0}] = 0;
        }
    }
    return p1;
}

Mat2i sl2_lift(long c, long d, long M) {
    if (M == 1) return Mat2i{};
    c = pos_mod(c, M);
    d = pos_mod(d, M);
    for (long span = 0; span <= 6; ++span)
        for (long s = -span; s <= span; ++s)
            for (long t = -span; t <= span; ++t) {
                if (std::max(std::abs(s), std::abs(t)) != span) continue;
                long cc = c + s * M, dd = d + t * M;
                if (cc == 0 && dd == 0) continue;
                long x, y;
                if (egcd(cc, dd, x, y) != 1) continue;
                // a*dd - b*cc = 1 with a = y... solve via x*cc + y*dd = 1
                Mat2i g{y, -x, cc, dd};
                if (g.det() != 1) continue;
                return g;
            }
    throw MathDomainError("sl2_lift: no small lift found");
}

ManinData build_manin(long level) {
    if (level < 1) throw ConfigError("level must be >= 1");
    ManinData md;
    md.level = level;
    md.p1 = build_p1(level);
    long n = md.p1.size();
    for (long x = 0; x < n; ++x)
        md.gens.push_back(sl2_lift(md.p1.reps[x].first, md.p1.reps[x].second, level));

    auto link = [&](const Mat2i& twist, std::vector<long>& perm,
                    std::vector<Mat2i>& wit) {
        for (long x = 0; x < n; ++x) {
            Mat2i h = md.gens[x] * twist;
            long y = md.p1.index(h.c, h.d);
            Mat2i gamma = h * md.gens[y].adj();
            if (!in_gamma0(gamma, level))
                throw ContractViolation("manin witness not in Gamma0");
            perm.push_back(y);
            wit.push_back(gamma);
        }
    };
    link(kSigma, md.sigma_perm, md.sigma_wit);
    link(kTau, md.tau_perm, md.tau_wit);

    auto classify = [&](const Cusp& s, Mat2i& wit_out) -> long {
        for (size_t i = 0; i < md.cusp_classes.size(); ++i) {
            auto g = cusp_equiv(md.cusp_classes[i].rep, s, level);
            if (g) {
                wit_out = *g;
                return (long)i;
            }
        }
        CuspClass cc;
        cc.rep = s;
        cc.width = cusp_width(s, level);
        Mat2i gr = cusp_matrix(s);
        cc.stab = gr * Mat2i{1, cc.width, 0, 1} * gr.adj();
        if (!in_gamma0(cc.stab, level))
            throw ContractViolation("cusp stabilizer not in Gamma0");
        md.cusp_classes.push_back(cc);
        wit_out = Mat2i{}; // identity: rep maps to itself
        return (long)md.cusp_classes.size() - 1;
    };
    for (long x = 0; x < n; ++x) {
        const Mat2i& g = md.gens[x];
        Mat2i w0, wi;
        md.class_of_zero.push_back(classify(normalize_cusp(g.b, g.d), w0));
        md.class_of_inf.push_back(classify(normalize_cusp(g.a, g.c), wi));
        md.wit_zero.push_back(w0);
        md.wit_inf.push_back(wi);
    }
    return md;
}

std::vector<Mat2i> manin_infty_path(const Cusp& s) {
    std::vector<Mat2i> out;
    if (s.second == 0) return out;
    long p = s.first, q = s.second;
    // continued-fraction convergents of p/q
    long pk1 = 1, qk1 = 0; // p_{k-1}, q_{k-1}
    long pk = 0, qk = 0;
    long x = p, y = q;
    bool first = true;
    long sign = -1; // (-1)^{k+1} for k = 0
    while (true) {
        long a = fdiv(x, y);
        long npk = first ? a : a * pk + pk1;
        long nqk = first ? 1 : a * qk + qk1;
        if (!first) {
            pk1 = pk;
            qk1 = qk;
        }
        pk = npk;
        qk = nqk;
        Mat2i m{pk, sign * pk1, qk, sign * qk1};
        if (m.det() != 1) throw ContractViolation("manin path: non-unimodular step");
        out.push_back(m);
        sign = -sign;
        long r = x - a * y;
        x = y;
        y = r;
        first = false;
        if (y == 0) break;
    }
    if (pk != p || qk != q)
        throw ContractViolation("manin path: convergents do not reach the cusp");
    return out;
}

} // namespace padl
