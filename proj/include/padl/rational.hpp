#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "padl/errors.hpp"

namespace padl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int ipow(Int base, long e) {
    if (e < 0) throw MathDomainError("ipow: negative exponent");
    Int r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// p^e with a small per-prime cache; exponents in our precision ranges are
// requested millions of times from scalar arithmetic.
inline const Int& ppow(long p, long e) {
    thread_local std::vector<std::pair<long, std::vector<Int>>> cache;
    for (auto& entry : cache) {
        if (entry.first == p) {
            auto& pows = entry.second;
            while ((long)pows.size() <= e) pows.push_back(pows.back() * p);
            return pows[e];
        }
    }
    cache.push_back({p, {Int(1)}});
    auto& pows = cache.back().second;
    while ((long)pows.size() <= e) pows.push_back(pows.back() * p);
    return pows[e];
}

// p-adic valuation of a nonzero integer.
inline long vp_int(Int n, long p) {
    if (n == 0) throw MathDomainError("vp of zero");
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline long vp_rat(const Rat& x, long p) {
    if (x == 0) throw MathDomainError("vp of zero");
    return vp_int(numerator(x), p) - vp_int(denominator(x), p);
}

inline Int binomial_int(long n, long r) {
    if (r < 0) return 0;
    Int num = 1, den = 1;
    for (long i = 0; i < r; ++i) {
        num *= (n - i);
        den *= (i + 1);
    }
    return num / den;
}

inline Rat ext_binomial_rat(const Rat& x, long r) {
    Rat num = 1;
    Int den = 1;
    for (long i = 0; i < r; ++i) {
        num *= (x - i);
        den *= (i + 1);
    }
    return num / Rat(den);
}

inline Int factorial_int(long n) {
    Int r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

// Inverse of a mod m (m > 1, gcd(a, m) = 1).
inline Int inv_mod(const Int& a, const Int& m) {
    Int old_r = a % m, r = m;
    if (old_r < 0) old_r += m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw MathDomainError("inv_mod: not invertible");
    Int res = old_s % m;
    if (res < 0) res += m;
    return res;
}

inline Int mod_reduce(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

} // namespace padl
