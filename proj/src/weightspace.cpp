#include "padl/weightspace.hpp"

namespace padl {

PAdicScalar WeightDisk::classical_w_value(long l1) const {
    Rat g(gamma());
    long e = l1 - center.l1;
    Rat val = e >= 0 ? Rat(ipow(Int(gamma()), e)) : Rat(1) / Rat(ipow(Int(gamma()), -e));
    return PAdicScalar::from_rat(p, val - 1, N);
}

Rat eval_character(const WeightPoint& lambda, const Rat& x, const Rat& y) {
    if (x == 0 || y == 0) throw MathDomainError("eval_character: non-unit entry");
    auto rpow = [](const Rat& b, long e) {
        Rat r = 1;
        Rat base = e < 0 ? Rat(1) / b : b;
        long k = e < 0 ? -e : e;
        for (long i = 0; i < k; ++i) r *= base;
        return r;
    };
    return rpow(x, lambda.l1) * rpow(y, lambda.l2);
}

PAdicScalar eval_character(const WeightPoint& lambda, const PAdicScalar& x,
                           const PAdicScalar& y) {
    if (x.is_zero() || y.is_zero()) throw MathDomainError("eval_character: non-unit entry");
    return x.pow(lambda.l1) * y.pow(lambda.l2);
}

PAdicScalar principal_part(const PAdicScalar& x) {
    if (!x.is_unit()) throw MathDomainError("principal_part: not a unit");
    Int om = teichmuller(x.prime(), x.unit(), x.rel_precision());
    return x * PAdicScalar::from_int(x.prime(), om, x.abs_precision()).inv();
}

DiskElem eval_character(const WeightDisk& disk, const PAdicScalar& x,
                        const PAdicScalar& y) {
    if (x.is_zero() || y.is_zero()) throw MathDomainError("eval_character: non-unit entry");
    if (!x.is_unit()) throw MathDomainError("eval_character: x must be a unit");
    const DiskRing R = disk.ring();
    PAdicScalar gamma = PAdicScalar::from_int(disk.p, disk.gamma(), disk.N + 2);
    PAdicScalar L = padic_log(principal_part(x)) / padic_log(gamma);
    DiskElem fam = one_plus_w_pow(R, L);
    PAdicScalar cls = y.pow(disk.ell) * x.pow(disk.center.l1);
    return fam * cls;
}

PAdicScalar binom_kappa(const WeightPoint& lambda, long r, long p, long prec) {
    // kappa(t(gamma)) = gamma^l1 * gamma^(-l2) = gamma^(n(lambda))
    long extra = r > 0 ? vp_int(factorial_int(r), p) + 1 : 1;
    PAdicScalar gamma = PAdicScalar::from_int(p, 1 + p, prec + extra);
    PAdicScalar kg = gamma.pow(lambda.n());
    PAdicScalar L = padic_log(kg) / padic_log(gamma);
    return ext_binomial(L, r).truncate_abs(prec);
}

DiskElem binom_kappa(const WeightDisk& disk, long r) {
    const DiskRing R = disk.ring();
    PAdicScalar gamma = PAdicScalar::from_int(disk.p, disk.gamma(), disk.N + 4);
    // log(kappa(t(gamma)))/log(gamma) = n(center) + log(1+w)/log(gamma)
    DiskElem L = log_one_plus_w(R) * padic_log(gamma).inv()
               + DiskElem::from_rat(R, disk.center.l1 - disk.ell);
    return ext_binomial(L, r);
}

} // namespace padl
