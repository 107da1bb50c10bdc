#pragma once

#include <map>
#include <optional>
#include <vector>

#include "padl/rational.hpp"

namespace padl {

// Integer 2x2 matrices for the group combinatorics.
struct Mat2i {
    long a = 1, b = 0, c = 0, d = 1;

    long det() const { return a * d - b * c; }
    Mat2i adj() const { return {d, -b, -c, a}; } // adjugate, = inverse in SL2
    Mat2i operator*(const Mat2i& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    bool operator==(const Mat2i&) const = default;
};

inline const Mat2i kSigma{0, -1, 1, 0};   // order 2 in PSL2
inline const Mat2i kTau{0, -1, 1, -1};    // order 3
inline const Mat2i kMinusId{-1, 0, 0, -1};
inline const Mat2i kEpsilonFlip{-1, 0, 0, 1}; // conjugation at infinity

bool in_gamma0(const Mat2i& g, long M);

// Cusp a/c in lowest terms; infinity = (1, 0).
using Cusp = std::pair<long, long>;

Cusp normalize_cusp(long num, long den);
Cusp apply_cusp(const Mat2i& g, const Cusp& s);

// g in SL2(Z) with g(infinity) = s.
Mat2i cusp_matrix(const Cusp& s);

// gamma in Gamma0(M) with gamma(s) = t, if the cusps are equivalent.
std::optional<Mat2i> cusp_equiv(const Cusp& s, const Cusp& t, long M);

long cusp_width(const Cusp& s, long M);

// P^1(Z/M) with canonical representatives.
struct P1Z {
    long M = 1;
    std::vector<std::pair<long, long>> reps;
    std::map<std::pair<long, long>, long> lookup;

    long size() const { return (long)reps.size(); }
    long index(long c, long d) const;
};

P1Z build_p1(long M);

// g in SL2(Z) with bottom row congruent to (c, d) mod M.
Mat2i sl2_lift(long c, long d, long M);

struct CuspClass {
    Cusp rep;
    long width = 1;
    Mat2i stab; // parabolic generator of the stabilizer in Gamma0(M)
};

// Combinatorial data of the Manin-symbol presentation for Gamma0(M).
struct ManinData {
    long level = 1;
    P1Z p1;
    std::vector<Mat2i> gens; // g_x, bottom row = x

    // g_x * sigma = sigma_wit[x] * g_{sigma_perm[x]}, witness in Gamma0(M);
    // same for tau
    std::vector<long> sigma_perm, tau_perm;
    std::vector<Mat2i> sigma_wit, tau_wit;

    // path endpoints g_x(0), g_x(infinity) and their cusp classes, with
    // witnesses in Gamma0(M) mapping the class representative to the endpoint
    std::vector<CuspClass> cusp_classes;
    std::vector<long> class_of_zero, class_of_inf;
    std::vector<Mat2i> wit_zero, wit_inf;
};

ManinData build_manin(long level);

// Unimodular decomposition of {infinity -> s}: matrices M_k with
// sum_k M_k{0 -> infinity} = {infinity -> s}.
std::vector<Mat2i> manin_infty_path(const Cusp& s);

} // namespace padl
