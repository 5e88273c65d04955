#pragma once

#include <mpfr.h>

#include <stdexcept>
#include <string>

namespace opart {

/// Raised when an input is outside a function's mathematical domain
/// (log of a nonpositive number, sqrt of a negative, ...). Nothing in the
/// toolkit silently produces NaN.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Raised when two-precision re-evaluation of an expression disagrees
/// beyond the audit tolerance; carries the expression name.
struct PrecisionInstabilityError : std::runtime_error {
    explicit PrecisionInstabilityError(const std::string& expr)
        : std::runtime_error("precision instability in: " + expr), expression(expr) {}
    std::string expression;
};

/// Converts decimal digits to an mpfr bit precision with a small slack.
inline mpfr_prec_t bits_for_digits(long digits) {
    // log2(10) = 3.3219...; +16 bits slack absorbs conversion rounding
    return static_cast<mpfr_prec_t>(digits * 3.32192809488736 + 16);
}

/// Working precision for all real-valued evaluation: `digits` is what results
/// are reported at, `guard` the extra digits used internally and for the
/// two-precision audit.
struct PrecisionContext {
    long digits = 120;
    long guard = 20;

    void validate() const {
        if (digits < 50) throw std::invalid_argument("PrecisionContext: digits must be >= 50");
        if (guard < 10) throw std::invalid_argument("PrecisionContext: guard must be >= 10");
    }

    long working_digits() const { return digits + guard; }
    mpfr_prec_t bits() const { return bits_for_digits(digits); }
    mpfr_prec_t working_bits() const { return bits_for_digits(working_digits()); }

    /// Context with digits doubled `steps` times (margin-escalation policy).
    PrecisionContext escalated(int steps) const {
        return PrecisionContext{digits << steps, guard};
    }

    friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;
};

}  // namespace opart
