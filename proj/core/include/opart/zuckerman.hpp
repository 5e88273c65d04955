#pragma once

#include <gmpxx.h>

#include "opart/numerics.hpp"
#include "opart/table.hpp"

namespace opart {

/// Raised when the assembled h-sum of a series term has a non-vanishing
/// imaginary part beyond tolerance (an omega-weight implementation bug).
struct RealnessError : std::logic_error {
    using std::logic_error::logic_error;
};

/// The root-of-unity weight omega(h,k) = e^{i pi r} represented by its exact
/// rational exponent r, reduced mod 2 into [0,2). Denominator divides 2k^2.
struct OmegaExponent {
    long h = 0;
    long k = 1;
    mpq_class r;
};

/// Exact exponent of omega(h,k) from the defining Dedekind-type sum
///   r = sum_{j=1}^{k-1} (j/k)(hj/k - floor(hj/k) - 1/2)  (mod 2).
/// Requires k odd >= 1, 0 <= h < k, gcd(h,k) = 1 (h=0 only with k=1).
OmegaExponent omega_exponent(long h, long k);

/// mu(n) = pi * sqrt(n) at the given bit precision.
Real mu(long n, mpfr_prec_t prec);

/// Main term  T(n) = (pi^2/8) / mu(n)^2 * (1 - 1/mu(n)) * e^{mu(n)}.
Real main_term(long n, mpfr_prec_t prec);

/// ln T(n) in closed form (no large intermediates).
Real log_main_term(long n, mpfr_prec_t prec);

/// Kernel derivative D(n,k) = d/dn [ sinh(pi sqrt(n)/k) / sqrt(n) ] in closed
/// form, shared by every term of the series.
Real kernel_derivative(long n, long k, mpfr_prec_t prec);

/// k-th term of the series for p(n): (sqrt(k)/2pi) * D(n,k) * h-sum, where
/// D(n,k) = d/dn [ sinh(pi sqrt(n)/k) / sqrt(n) ]
///        = pi/(2kn) cosh(pi sqrt(n)/k) - sinh(pi sqrt(n)/k) / (2 n^{3/2}).
/// The h-sum is assembled from exact rational phase exponents; the imaginary
/// part must vanish to audit tolerance and is asserted, then discarded.
AuditedReal zuckerman_term(long n, long k, const PrecisionContext& ctx);

/// Truncated-series value with a rigorous error radius.
/// Invariant: |value - p(n)| < error_radius.
struct CertifiedEstimate {
    long n = 0;
    long terms = 1;  // odd truncation bound N
    AuditedReal value;
    AuditedReal error_radius;
};

/// Sum of terms for odd k <= terms, with error radius
/// terms^{5/2} / (pi n^{3/2}) * sinh(pi sqrt(n) / terms).
CertifiedEstimate zuckerman_estimate(long n, long terms, const PrecisionContext& ctx);

/// Splitting p(n) = T(n) + R(n) with e = R/T and E = ln(1 + e) = ln(p/T).
/// R is recovered exactly as p(n) - T(n) from the table.
struct Decomposition {
    long n = 0;
    AuditedReal main_term;     // T(n)
    AuditedReal residual;      // p(n) - T(n)
    AuditedReal rel_residual;  // e(n)
    AuditedReal log_ratio;     // E(n)
};

Decomposition decompose(long n, const OverpartitionTable& table, const PrecisionContext& ctx);

/// Raw E(n) = ln(p(n)/T(n)) at an explicit decimal precision (full relative
/// accuracy; internally adds cancellation headroom). For bulk range checks.
Real log_ratio_raw(long n, const OverpartitionTable& table, long digits);

/// Raw e(n) = (p(n) - T(n))/T(n) at an explicit decimal precision.
Real rel_residual_raw(long n, const OverpartitionTable& table, long digits);

/// Standalone diagnostic bound on |R2(n,3)|:  (9 sqrt(3) / (2 n mu(n))) e^{mu(n)/3}.
AuditedReal engel_tail_bound(long n, const PrecisionContext& ctx);

}  // namespace opart
