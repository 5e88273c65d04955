#pragma once

#include <functional>
#include <optional>
#include <string>

#include "opart/precision.hpp"
#include "opart/real.hpp"

namespace opart {

/// A high-precision value together with the context that produced it.
/// Invariant: re-evaluating the producing expression at digits+guard agrees
/// with `value` to within 10^(5-digits) relative error.
struct AuditedReal {
    Real value;
    PrecisionContext ctx;

    std::string str() const { return value.str(static_cast<int>(std::min(ctx.digits, 40L))); }
};

/// Evaluates `eval` at ctx.digits and ctx.digits+guard and requires the two
/// results to agree to within 10^(5-digits) relative error; returns the
/// higher-precision result rounded to digits. `scale` (log10 of the natural
/// magnitude of the expression before cancellation) widens the comparison
/// reference so that expressions whose true value is a near-complete
/// cancellation of O(scale) operands still audit cleanly.
AuditedReal audit(const std::string& name, const std::function<Real(long)>& eval,
                  const PrecisionContext& ctx, double scale_log10 = 0.0);

/// True iff a and b agree to within 10^-tol_digits relative to
/// max(|a|, |b|, 10^scale_log10 * 10^-tol_digits reference floor).
bool audit_agree(const Real& a, const Real& b, long tol_digits, double scale_log10 = 0.0);

AuditedReal pi(const PrecisionContext& ctx);
AuditedReal exp(const Real& x, const PrecisionContext& ctx);
AuditedReal ln(const Real& x, const PrecisionContext& ctx);
AuditedReal sinh(const Real& x, const PrecisionContext& ctx);
AuditedReal cosh(const Real& x, const PrecisionContext& ctx);
AuditedReal sqrt(const Real& x, const PrecisionContext& ctx);

/// Natural log of an exact big integer p >= 1, relative error <= 10^-digits.
AuditedReal ln_big(const mpz_class& p, const PrecisionContext& ctx);

/// Raw (non-audited) variant at an explicit decimal precision, for callers
/// that stack their own cancellation headroom on top.
Real ln_big_raw(const mpz_class& p, long digits);

}  // namespace opart
