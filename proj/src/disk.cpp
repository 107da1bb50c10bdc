#include "padl/disk.hpp"

#include <sstream>

namespace padl {

DiskElem::DiskElem(const DiskRing& ring, std::vector<PAdicScalar> coeffs)
    : ring_(ring), c_(std::move(coeffs)) {
    if ((long)c_.size() > ring_.M) c_.resize(ring_.M);
    while ((long)c_.size() < ring_.M) c_.push_back(PAdicScalar::zero(ring_.p, ring_.N));
    for (auto& x : c_) x = x.truncate_abs(ring_.N);
}

DiskElem DiskElem::zero(const DiskRing& ring) {
    return DiskElem(ring, {});
}

DiskElem DiskElem::one(const DiskRing& ring) {
    return constant(ring, PAdicScalar::from_int(ring.p, 1, ring.N));
}

DiskElem DiskElem::w(const DiskRing& ring) {
    std::vector<PAdicScalar> c(2, PAdicScalar::zero(ring.p, ring.N));
    c[1] = PAdicScalar::from_int(ring.p, 1, ring.N);
    return DiskElem(ring, std::move(c));
}

DiskElem DiskElem::constant(const DiskRing& ring, const PAdicScalar& c) {
    return DiskElem(ring, {c});
}

DiskElem DiskElem::from_rat(const DiskRing& ring, const Rat& x) {
    return constant(ring, PAdicScalar::from_rat(ring.p, x, ring.N));
}

DiskElem DiskElem::operator-() const {
    std::vector<PAdicScalar> c;
    c.reserve(c_.size());
    for (auto& x : c_) c.push_back(-x);
    return DiskElem(ring_, std::move(c));
}

DiskElem DiskElem::operator+(const DiskElem& o) const {
    if (!(ring_ == o.ring_)) throw MathDomainError("disk ring mismatch");
    std::vector<PAdicScalar> c;
    c.reserve(c_.size());
    for (long j = 0; j < ring_.M; ++j) c.push_back(c_[j] + o.c_[j]);
    return DiskElem(ring_, std::move(c));
}

DiskElem DiskElem::operator-(const DiskElem& o) const { return *this + (-o); }

DiskElem DiskElem::operator*(const DiskElem& o) const {
    if (!(ring_ == o.ring_)) throw MathDomainError("disk ring mismatch");
    std::vector<PAdicScalar> c(ring_.M, PAdicScalar::zero(ring_.p, ring_.N));
    for (long i = 0; i < ring_.M; ++i) {
        if (c_[i].is_zero() && c_[i].abs_precision() >= ring_.N) continue;
        for (long j = 0; i + j < ring_.M; ++j)
            c[i + j] = c[i + j] + c_[i] * o.c_[j];
    }
    return DiskElem(ring_, std::move(c));
}

DiskElem DiskElem::operator*(const PAdicScalar& s) const {
    std::vector<PAdicScalar> c;
    c.reserve(c_.size());
    for (auto& x : c_) c.push_back(x * s);
    return DiskElem(ring_, std::move(c));
}

bool DiskElem::is_zero() const {
    for (auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

bool DiskElem::is_invertible() const { return !c_[0].is_zero(); }

DiskElem DiskElem::inv() const {
    if (!is_invertible())
        throw MathDomainError("disk element not invertible (constant term ~ 0)");
    // series inversion: b0 = 1/a0, b_k = -1/a0 * sum_{i>=1} a_i b_{k-i}
    std::vector<PAdicScalar> b(ring_.M, PAdicScalar::zero(ring_.p, ring_.N));
    PAdicScalar a0inv = c_[0].inv();
    b[0] = a0inv;
    for (long k = 1; k < ring_.M; ++k) {
        PAdicScalar s = PAdicScalar::zero(ring_.p, ring_.N + std::max(0L, -c_[0].valuation() * 2));
        for (long i = 1; i <= k; ++i) s = s + c_[i] * b[k - i];
        b[k] = -(a0inv * s);
    }
    return DiskElem(ring_, std::move(b));
}

DiskElem DiskElem::pow(long e) const {
    DiskElem base = e < 0 ? inv() : *this;
    long k = e < 0 ? -e : e;
    DiskElem r = one(ring_);
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

DiskElem DiskElem::truncate_abs(long a) const {
    std::vector<PAdicScalar> c;
    c.reserve(c_.size());
    for (auto& x : c_) c.push_back(x.truncate_abs(a));
    return DiskElem(ring_, std::move(c));
}

PAdicScalar DiskElem::specialize(const PAdicScalar& wval) const {
    long wv = wval.val_lower_bound();
    if (wv <= 0)
        throw MathDomainError("specialize: point not in the open unit disk");
    PAdicScalar acc = PAdicScalar::zero(ring_.p, ring_.N);
    PAdicScalar wp = PAdicScalar::from_int(ring_.p, 1, ring_.N);
    for (long j = 0; j < ring_.M; ++j) {
        acc = acc + c_[j] * wp;
        if (j + 1 < ring_.M) wp = wp * wval;
    }
    // the omitted w^M tail contributes O(p^{M*v(wval)}); the value is only
    // pinned down modulo that
    return acc.truncate_abs(std::min(acc.abs_precision(), ring_.M * wv));
}

std::string DiskElem::str() const {
    std::ostringstream os;
    for (long j = 0; j < ring_.M; ++j) {
        if (j) os << " + (";
        else os << "(";
        os << c_[j].str() << ")";
        if (j) os << "*w^" << j;
    }
    return os.str();
}

DiskElem one_plus_w_pow(const DiskRing& ring, const PAdicScalar& L) {
    std::vector<PAdicScalar> c;
    c.reserve(ring.M);
    for (long j = 0; j < ring.M; ++j) c.push_back(ext_binomial(L, j));
    return DiskElem(ring, std::move(c));
}

DiskElem log_one_plus_w(const DiskRing& ring, long) {
    std::vector<PAdicScalar> c(ring.M, PAdicScalar::zero(ring.p, ring.N));
    for (long j = 1; j < ring.M; ++j) {
        Rat t = Rat(j % 2 == 1 ? 1 : -1) / j;
        c[j] = PAdicScalar::from_rat(ring.p, t, ring.N);
    }
    return DiskElem(ring, std::move(c));
}

DiskElem ext_binomial(const DiskElem& x, long r) {
    DiskElem prod = DiskElem::one(x.ring());
    for (long i = 0; i < r; ++i)
        prod = prod * (x - DiskElem::from_rat(x.ring(), i));
    PAdicScalar fact =
        PAdicScalar::from_rat(x.ring().p, Rat(1) / Rat(factorial_int(r)), x.ring().N + 2 * vp_int(factorial_int(std::max(r, 1L)), x.ring().p) + 2);
    return prod * fact;
}

} // namespace padl
