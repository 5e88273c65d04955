#include "opart/numerics.hpp"

namespace opart {

bool audit_agree(const Real& a, const Real& b, long tol_digits, double scale_log10) {
    if (a.is_nan() || b.is_nan()) return false;
    if (a.is_zero() && b.is_zero()) return true;
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Real diff = abs(a - b);
    Real ref = fmax(abs(a).rounded_to(p), abs(b).rounded_to(p));
    if (scale_log10 != 0.0) {
        // reference floor: the expression's pre-cancellation magnitude
        Real floor_ref = Real::pow10(static_cast<long>(scale_log10), p);
        ref = fmax(ref, floor_ref);
    }
    if (ref.is_zero()) return diff.is_zero();
    return diff <= ref * Real::pow10(-tol_digits, p);
}

AuditedReal audit(const std::string& name, const std::function<Real(long)>& eval,
                  const PrecisionContext& ctx, double scale_log10) {
    ctx.validate();
    Real hi = eval(ctx.digits + ctx.guard);
    Real lo = eval(ctx.digits);
    if (!audit_agree(lo, hi, ctx.digits - 5, scale_log10))
        throw PrecisionInstabilityError(name);
    return AuditedReal{hi.rounded_to(ctx.bits()), ctx};
}

AuditedReal pi(const PrecisionContext& ctx) {
    ctx.validate();
    return AuditedReal{const_pi(ctx.working_bits()).rounded_to(ctx.bits()), ctx};
}

namespace {

AuditedReal rounded(Real v, const PrecisionContext& ctx) {
    return AuditedReal{v.rounded_to(ctx.bits()), ctx};
}

}  // namespace

AuditedReal exp(const Real& x, const PrecisionContext& ctx) {
    ctx.validate();
    return rounded(opart::exp(x.rounded_to(ctx.working_bits())), ctx);
}

AuditedReal ln(const Real& x, const PrecisionContext& ctx) {
    ctx.validate();
    return rounded(opart::log(x.rounded_to(ctx.working_bits())), ctx);
}

AuditedReal sinh(const Real& x, const PrecisionContext& ctx) {
    ctx.validate();
    return rounded(opart::sinh(x.rounded_to(ctx.working_bits())), ctx);
}

AuditedReal cosh(const Real& x, const PrecisionContext& ctx) {
    ctx.validate();
    return rounded(opart::cosh(x.rounded_to(ctx.working_bits())), ctx);
}

AuditedReal sqrt(const Real& x, const PrecisionContext& ctx) {
    ctx.validate();
    return rounded(opart::sqrt(x.rounded_to(ctx.working_bits())), ctx);
}

Real ln_big_raw(const mpz_class& p, long digits) {
    if (p <= 0) throw DomainError("ln_big: argument must be >= 1");
    return log(Real::of_mpz(p, bits_for_digits(digits)));
}

AuditedReal ln_big(const mpz_class& p, const PrecisionContext& ctx) {
    ctx.validate();
    return rounded(ln_big_raw(p, ctx.working_digits()), ctx);
}

}  // namespace opart
