#include "padl/padic.hpp"

#include <sstream>

namespace padl {

PAdicScalar PAdicScalar::zero(long p, long abs_prec) {
    PAdicScalar x;
    x.p_ = p;
    x.zero_ = true;
    x.abs_ = abs_prec;
    return x;
}

PAdicScalar PAdicScalar::from_int(long p, const Int& n, long abs_prec) {
    if (p < 3 || p % 2 == 0) throw MathDomainError("only odd primes are supported");
    if (abs_prec <= 0) throw PrecisionExhausted("from_int: no digits requested");
    Int r = mod_reduce(n, ppow(p, abs_prec));
    if (r == 0) return zero(p, abs_prec);
    PAdicScalar x;
    x.p_ = p;
    x.zero_ = false;
    x.v_ = vp_int(r, p);
    x.abs_ = abs_prec;
    x.u_ = mod_reduce(r / ppow(p, x.v_), ppow(p, x.N()));
    return x;
}

PAdicScalar PAdicScalar::from_rat(long p, const Rat& x, long abs_prec) {
    if (x == 0) return zero(p, abs_prec);
    Int num = numerator(x), den = denominator(x);
    long vn = vp_int(num, p), vd = vp_int(den, p);
    long v = vn - vd;
    if (v >= abs_prec) return zero(p, abs_prec);
    long N = abs_prec - v;
    Int un = mod_reduce(num / ppow(p, vn), ppow(p, N));
    Int ud = mod_reduce(den / ppow(p, vd), ppow(p, N));
    PAdicScalar r = make(p, v, un * inv_mod(ud, ppow(p, N)), N);
    return r;
}

PAdicScalar PAdicScalar::make(long p, long v, const Int& unit, long rel_prec) {
    if (rel_prec <= 0) throw PrecisionExhausted("make: no digits requested");
    Int u = mod_reduce(unit, ppow(p, rel_prec));
    if (u % p == 0) throw MathDomainError("make: unit divisible by p");
    PAdicScalar x;
    x.p_ = p;
    x.zero_ = false;
    x.v_ = v;
    x.u_ = u;
    x.abs_ = v + rel_prec;
    return x;
}

long PAdicScalar::valuation() const {
    if (zero_) throw PrecisionExhausted("valuation of a (precision-)zero value");
    return v_;
}

PAdicScalar PAdicScalar::operator-() const {
    if (zero_) return *this;
    PAdicScalar r = *this;
    r.u_ = ppow(p_, N()) - u_;
    return r;
}

PAdicScalar PAdicScalar::operator+(const PAdicScalar& o) const {
    if (p_ != o.p_) throw MathDomainError("prime mismatch");
    long a = std::min(abs_precision(), o.abs_precision());
    if (a <= 0) throw PrecisionExhausted("add: no joint digits");
    Int sum = 0;
    if (!zero_) sum += u_ * ppow(p_, v_ < 0 ? 0 : v_);
    if (!o.zero_) sum += o.u_ * ppow(p_, o.v_ < 0 ? 0 : o.v_);
    long shift = std::min({v_ < 0 && !zero_ ? v_ : 0L, o.v_ < 0 && !o.zero_ ? o.v_ : 0L});
    if (shift < 0) {
        // common denominator p^(-shift)
        sum = 0;
        if (!zero_) sum += u_ * ppow(p_, v_ - shift);
        if (!o.zero_) sum += o.u_ * ppow(p_, o.v_ - shift);
        PAdicScalar r = from_int(p_, sum, a - shift);
        return r.shift(shift).truncate_abs(a);
    }
    return from_int(p_, sum, a);
}

PAdicScalar PAdicScalar::operator-(const PAdicScalar& o) const { return *this + (-o); }

PAdicScalar PAdicScalar::operator*(const PAdicScalar& o) const {
    if (p_ != o.p_) throw MathDomainError("prime mismatch");
    if (zero_ || o.zero_) {
        long a = zero_ ? abs_ : v_;
        long b = o.zero_ ? o.abs_ : o.v_;
        // O(p^a) * (val-b value) = O(p^(a+b))
        return zero(p_, a + b);
    }
    long N = std::min(this->N(), o.N());
    return make(p_, v_ + o.v_, u_ * o.u_, N);
}

PAdicScalar PAdicScalar::inv() const {
    if (zero_) throw PrecisionExhausted("inverse of a (precision-)zero value");
    return make(p_, -v_, inv_mod(u_, ppow(p_, N())), N());
}

PAdicScalar PAdicScalar::operator/(const PAdicScalar& o) const { return *this * o.inv(); }

PAdicScalar PAdicScalar::pow(long e) const {
    if (e == 0) {
        if (zero_) return from_int(p_, 1, abs_);
        return from_int(p_, 1, N());
    }
    PAdicScalar base = e < 0 ? inv() : *this;
    long k = e < 0 ? -e : e;
    if (base.zero_) {
        if (base.abs_ <= 0) throw PrecisionExhausted("pow of zero at nonpositive precision");
        return zero(p_, base.abs_ * k);
    }
    PAdicScalar r = make(p_, 0, 1, base.N());
    PAdicScalar b = base;
    while (k > 0) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

PAdicScalar PAdicScalar::shift(long k) const {
    PAdicScalar r = *this;
    if (zero_)
        r.abs_ += k;
    else {
        r.v_ += k;
        r.abs_ += k;
    }
    return r;
}

PAdicScalar PAdicScalar::truncate_abs(long a) const {
    if (a >= abs_precision()) return *this;
    if (zero_) return zero(p_, a);
    if (v_ >= a) return zero(p_, a);
    return make(p_, v_, mod_reduce(u_, ppow(p_, a - v_)), a - v_);
}

bool PAdicScalar::eq(const PAdicScalar& o) const { return (*this - o).is_zero(); }

Rat PAdicScalar::lift_rat() const {
    if (zero_) return 0;
    Rat r(u_);
    if (v_ >= 0) return r * Rat(ppow(p_, v_));
    return r / Rat(ppow(p_, -v_));
}

Int PAdicScalar::lift_int() const {
    if (zero_) return 0;
    if (v_ < 0) throw MathDomainError("lift_int: negative valuation");
    return u_ * ppow(p_, v_);
}

std::string PAdicScalar::str() const {
    std::ostringstream os;
    if (zero_) {
        os << "O(" << p_ << "^" << abs_ << ")";
        return os.str();
    }
    os << u_;
    if (v_ != 0) os << "*" << p_ << "^" << v_;
    os << " + O(" << p_ << "^" << abs_ << ")";
    return os.str();
}

Int teichmuller(long p, const Int& u, long prec) {
    const Int m = ppow(p, prec);
    Int x = mod_reduce(u, m);
    if (x % p == 0) throw MathDomainError("teichmuller of a non-unit");
    for (long i = 0; i < 2 * prec + 2; ++i) {
        Int y = boost::multiprecision::powm(x, Int(p), m);
        if (y == x) break;
        x = y;
    }
    return x;
}

PAdicScalar padic_log(const PAdicScalar& x) {
    const long p = x.prime();
    const long A = x.abs_precision();
    PAdicScalar t = x - PAdicScalar::from_int(p, 1, A);
    if (t.is_zero()) return PAdicScalar::zero(p, A);
    if (t.valuation() < 1) throw MathDomainError("padic_log: |x-1| = 1");
    if (A <= 0) throw PrecisionExhausted("padic_log: no digits available");
    const long m = t.valuation();
    const Rat u = t.lift_rat();
    Rat sum = 0;
    Rat power = 1;
    for (long k = 1;; ++k) {
        power *= u;
        long vterm = k * m - (k % p == 0 ? vp_int(Int(k), p) : 0);
        if (vterm >= A) break;
        Rat term = power / k;
        sum += (k % 2 == 1) ? term : -term;
    }
    return PAdicScalar::from_rat(p, sum, A);
}

PAdicScalar ext_binomial(const PAdicScalar& x, long r) {
    const long p = x.prime();
    if (r < 0) throw MathDomainError("ext_binomial: negative r");
    if (r == 0) return PAdicScalar::from_int(p, 1, std::max(x.abs_precision(), 1L));
    const long A = x.abs_precision();
    const long vx = x.val_lower_bound();
    const long vfact = r >= p ? vp_int(factorial_int(r), p) : 0;
    // error in x propagates through the falling factorial with margin
    // (r-1)*min(v(x),0); division by r! costs v_p(r!) digits
    long out_abs = A + std::min(0L, (r - 1) * std::min(vx, 0L)) - vfact;
    if (out_abs <= 0)
        throw PrecisionExhausted("ext_binomial: r! cancels all known digits");
    Rat prod = 1;
    const Rat lx = x.lift_rat();
    for (long i = 0; i < r; ++i) prod *= (lx - i);
    prod /= Rat(factorial_int(r));
    return PAdicScalar::from_rat(p, prod, out_abs);
}

} // namespace padl
