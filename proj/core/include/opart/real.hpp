#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

#include "opart/precision.hpp"

namespace opart {

/// RAII wrapper over mpfr_t. Every value carries its own precision; binary
/// operations round to the wider operand's precision (MPFR_RNDN throughout).
class Real {
  public:
    Real() { mpfr_init2(v_, 24); }  // NaN placeholder; containers only

    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }

    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    ~Real() { mpfr_clear(v_); }

    static Real of_long(long x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }

    static Real of_ulong(unsigned long x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_ui(r.v_, x, MPFR_RNDN);
        return r;
    }

    static Real of_mpz(const mpz_class& z, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
        return r;
    }

    static Real of_mpq(const mpq_class& q, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }

    static Real of_str(const char* s, mpfr_prec_t prec) {
        Real r(prec);
        if (mpfr_set_str(r.v_, s, 10, MPFR_RNDN) != 0)
            throw std::invalid_argument(std::string("Real: unparsable literal: ") + s);
        return r;
    }

    /// 10^e as a Real (e may be negative).
    static Real pow10(long e, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_ui(r.v_, 10, MPFR_RNDN);
        mpfr_pow_si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    Real rounded_to(mpfr_prec_t prec) const {
        Real r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// log10 of |x| (double estimate); 0 for zero input.
    double magnitude_log10() const {
        if (mpfr_zero_p(v_) || mpfr_nan_p(v_)) return 0.0;
        long exp2 = mpfr_get_exp(v_);
        return static_cast<double>(exp2) * 0.30102999566398120;
    }

    /// Decimal rendering with `sig` significant digits (%g-style, trailing
    /// zeros stripped); deterministic for a given value and sig.
    std::string str(int sig) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", sig, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

  private:
    mpfr_t v_;

    static mpfr_prec_t join(const Real& a, const Real& b) {
        return std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_));
    }

#define OPART_REAL_BINOP(op, fn, fn_si, fn_si_rev)                    \
    friend Real operator op(const Real& a, const Real& b) {           \
        Real r(join(a, b));                                           \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                              \
        return r;                                                     \
    }                                                                 \
    friend Real operator op(const Real& a, long b) {                  \
        Real r(mpfr_get_prec(a.v_));                                  \
        fn_si(r.v_, a.v_, b, MPFR_RNDN);                              \
        return r;                                                     \
    }                                                                 \
    friend Real operator op(long a, const Real& b) {                  \
        Real r(mpfr_get_prec(b.v_));                                  \
        fn_si_rev(r.v_, a, b.v_, MPFR_RNDN);                          \
        return r;                                                     \
    }

    OPART_REAL_BINOP(+, mpfr_add, mpfr_add_si, mpfr_si_add_shim)
    OPART_REAL_BINOP(-, mpfr_sub, mpfr_sub_si, mpfr_si_sub)
    OPART_REAL_BINOP(*, mpfr_mul, mpfr_mul_si, mpfr_si_mul_shim)
    OPART_REAL_BINOP(/, mpfr_div, mpfr_div_si, mpfr_si_div)
#undef OPART_REAL_BINOP

    static int mpfr_si_add_shim(mpfr_ptr r, long a, mpfr_srcptr b, mpfr_rnd_t rnd) {
        return mpfr_add_si(r, b, a, rnd);
    }
    static int mpfr_si_mul_shim(mpfr_ptr r, long a, mpfr_srcptr b, mpfr_rnd_t rnd) {
        return mpfr_mul_si(r, b, a, rnd);
    }

  public:
    friend Real operator-(const Real& a) {
        Real r(mpfr_get_prec(a.v_));
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
};

#define OPART_REAL_FN1(name, mpfr_name)              \
    inline Real name(const Real& x) {                \
        Real r(x.prec());                            \
        mpfr_name(r.raw(), x.raw(), MPFR_RNDN);      \
        return r;                                    \
    }

OPART_REAL_FN1(exp, mpfr_exp)
OPART_REAL_FN1(log1p, mpfr_log1p)
OPART_REAL_FN1(expm1, mpfr_expm1)
OPART_REAL_FN1(sinh, mpfr_sinh)
OPART_REAL_FN1(cosh, mpfr_cosh)
OPART_REAL_FN1(sin, mpfr_sin)
OPART_REAL_FN1(cos, mpfr_cos)
OPART_REAL_FN1(abs, mpfr_abs)
#undef OPART_REAL_FN1

inline Real floor_r(const Real& x) {
    Real r(x.prec());
    mpfr_rint(r.raw(), x.raw(), MPFR_RNDD);
    return r;
}

inline Real ceil_r(const Real& x) {
    Real r(x.prec());
    mpfr_rint(r.raw(), x.raw(), MPFR_RNDU);
    return r;
}

inline Real round_r(const Real& x) {
    Real r(x.prec());
    mpfr_rint(r.raw(), x.raw(), MPFR_RNDNA);
    return r;
}

inline Real log(const Real& x) {
    if (x.sign() <= 0) throw DomainError("log: argument must be positive");
    Real r(x.prec());
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

inline Real sqrt(const Real& x) {
    if (x.sign() < 0) throw DomainError("sqrt: argument must be nonnegative");
    Real r(x.prec());
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

inline Real sqrt_ul(unsigned long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_sqrt_ui(r.raw(), x, MPFR_RNDN);
    return r;
}

inline Real pow_si(const Real& x, long e) {
    Real r(x.prec());
    mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

/// x^(p/q) for x > 0.
inline Real pow_q(const Real& x, long p, long q) {
    if (x.sign() <= 0) throw DomainError("pow_q: base must be positive");
    Real e = Real::of_long(p, x.prec()) / Real::of_long(q, x.prec());
    Real r(x.prec());
    mpfr_pow(r.raw(), x.raw(), e.raw(), MPFR_RNDN);
    return r;
}

inline Real const_pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

inline Real fmin(const Real& a, const Real& b) { return a < b ? a : b; }
inline Real fmax(const Real& a, const Real& b) { return a > b ? a : b; }

}  // namespace opart
