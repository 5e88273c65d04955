#include "opart/zuckerman.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <vector>

namespace opart {

OmegaExponent omega_exponent(long h, long k) {
    if (k < 1 || k % 2 == 0) throw std::invalid_argument("omega_exponent: k must be odd >= 1");
    if (h < 0 || h >= k) throw std::invalid_argument("omega_exponent: need 0 <= h < k");
    if (std::gcd(h, k) != 1 && !(h == 0 && k == 1))
        throw std::invalid_argument("omega_exponent: gcd(h,k) must be 1");

    // r = S / (2k^2) with integer S = sum_{j=1}^{k-1} j * (2(hj mod k) - k);
    // reduce S mod 4k^2 so that r lands in [0,2).
    mpz_class s = 0;
    for (long j = 1; j < k; ++j) {
        long m = static_cast<long>((static_cast<unsigned long long>(h) * j) % k);
        s += mpz_class(j) * (2 * m - k);
    }
    mpz_class den = 2 * mpz_class(k) * k;
    mpz_class period = 2 * den;
    s = ((s % period) + period) % period;
    mpq_class r(s, den);
    r.canonicalize();
    return OmegaExponent{h, k, r};
}

Real mu(long n, mpfr_prec_t prec) {
    if (n < 0) throw std::invalid_argument("mu: n must be >= 0");
    return const_pi(prec) * sqrt_ul(static_cast<unsigned long>(n), prec);
}

Real main_term(long n, mpfr_prec_t prec) {
    if (n < 1) throw DomainError("main_term: n must be >= 1 (mu(0) = 0 is singular)");
    Real m = mu(n, prec);
    // (pi^2/8)/mu^2 = 1/(8n)
    Real one_over_8n = Real::of_long(1, prec) / Real::of_long(8 * n, prec);
    return one_over_8n * (1 - Real::of_long(1, prec) / m) * exp(m);
}

Real log_main_term(long n, mpfr_prec_t prec) {
    if (n < 1) throw DomainError("log_main_term: n must be >= 1");
    Real m = mu(n, prec);
    return m + log1p(-(Real::of_long(1, prec) / m)) - log(Real::of_long(8 * n, prec));
}

// Evaluated as (x cosh x - sinh x) / (2 n^{3/2}) with x = pi sqrt(n)/k;
// cancellation only for small x (~ 2|log10 x| digits), absorbed by callers'
// headroom.
Real kernel_derivative(long n, long k, mpfr_prec_t prec) {
    if (n < 1 || k < 1) throw std::invalid_argument("kernel_derivative: need n >= 1, k >= 1");
    Real x = mu(n, prec) / k;
    Real n_32 = pow_q(Real::of_long(n, prec), 3, 2);
    return (x * cosh(x) - sinh(x)) / (2 * n_32);
}

namespace {

// q reduced mod 2 into [0,2).
mpq_class mod2(const mpq_class& q) {
    mpz_class twice_den = 2 * q.get_den();
    mpz_class num = q.get_num();
    mpz_class m = num % twice_den;
    if (m < 0) m += twice_den;
    mpq_class out(m, q.get_den());
    out.canonicalize();
    return out;
}

// For each k: the admissible h together with the exact phase exponent
// 2 r(h,k) - r(2h mod k, k), reduced mod 2. Shared, computed once per k.
struct PhaseTable {
    long k = 1;
    std::vector<std::pair<long, mpq_class>> entries;
};

std::shared_ptr<const PhaseTable> phase_table(long k) {
    static std::mutex mtx;
    static std::map<long, std::shared_ptr<const PhaseTable>> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
    }
    auto pt = std::make_shared<PhaseTable>();
    pt->k = k;
    for (long h = 0; h < k; ++h) {
        if (k > 1 && (h == 0 || std::gcd(h, k) != 1)) continue;
        mpq_class base = mod2(2 * omega_exponent(h, k).r - omega_exponent((2 * h) % k, k).r);
        pt->entries.emplace_back(h, base);
    }
    std::lock_guard<std::mutex> lock(mtx);
    auto [it, inserted] = cache.emplace(k, std::move(pt));
    return it->second;
}

double log10_term_scale(long n, long k) {
    // magnitude of sqrt(k)/(2pi) * |D(n,k)| * phi(k), log-space to dodge overflow
    double x = 3.14159265358979312 * std::sqrt(static_cast<double>(n)) / static_cast<double>(k);
    double log10_cosh = (x > 30.0) ? x * 0.434294481903251828 - 0.301029995663981195
                                   : std::log10(std::cosh(x));
    double log10_d = std::log10(3.14159265358979312 / (2.0 * k * n)) + log10_cosh;
    return 0.5 * std::log10(static_cast<double>(k)) + log10_d + std::log10(static_cast<double>(k) + 1.0);
}

struct TermSum {
    Real re;
    Real im;
    Real d;  // D(n,k)
};

TermSum eval_term_sum(long n, long k, mpfr_prec_t prec) {
    auto pt = phase_table(k);
    Real sum_re(prec), sum_im(prec);
    mpfr_set_zero(sum_re.raw(), 1);
    mpfr_set_zero(sum_im.raw(), 1);
    Real pi_v = const_pi(prec);
    for (const auto& [h, base] : pt->entries) {
        // phase = base - 2nh/k  (mod 2)
        mpq_class shift(2 * mpz_class(n) * h, k);
        shift.canonicalize();
        mpq_class phase = mod2(base - shift);
        Real angle = Real::of_mpq(phase, prec) * pi_v;
        Real c(prec), s(prec);
        mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
        sum_re = sum_re + c;
        sum_im = sum_im + s;
    }
    Real d = kernel_derivative(n, k, prec);
    Real factor = sqrt_ul(static_cast<unsigned long>(k), prec) / (2 * pi_v);
    return TermSum{factor * d * sum_re, factor * d * sum_im, d};
}

Real eval_term(long n, long k, long digits) {
    // headroom for the small-x cancellation in D(n,k)
    double x = 3.14159265358979312 * std::sqrt(static_cast<double>(n)) / static_cast<double>(k);
    long boost = (x < 1.0) ? static_cast<long>(2.0 * -std::log10(x)) + 10 : 0;
    mpfr_prec_t prec = bits_for_digits(digits + boost + 10);
    TermSum ts = eval_term_sum(n, k, prec);
    // phase sums cancel in conjugate pairs; anything visible signals an omega bug
    long phi_k = static_cast<long>(phase_table(k)->entries.size());
    Real tol = Real::pow10(-(digits - 5), prec) * fmax(abs(ts.re), abs(ts.d) * phi_k);
    if (abs(ts.im) > tol)
        throw RealnessError("zuckerman_term(n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                            "): imaginary part beyond tolerance");
    return ts.re.rounded_to(bits_for_digits(digits));
}

}  // namespace

AuditedReal zuckerman_term(long n, long k, const PrecisionContext& ctx) {
    if (k < 1 || k % 2 == 0) throw std::invalid_argument("zuckerman_term: k must be odd >= 1");
    if (n < 1) throw std::invalid_argument("zuckerman_term: n must be >= 1");
    return audit(
        "zuckerman_term(n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")",
        [n, k](long digits) { return eval_term(n, k, digits); }, ctx, log10_term_scale(n, k));
}

CertifiedEstimate zuckerman_estimate(long n, long terms, const PrecisionContext& ctx) {
    if (n < 1) throw std::invalid_argument("zuckerman_estimate: n must be >= 1");
    if (terms < 1) throw std::invalid_argument("zuckerman_estimate: truncation bound must be >= 1");
    ctx.validate();

    auto eval_value = [n, terms](long digits) {
        Real sum(bits_for_digits(digits));
        mpfr_set_zero(sum.raw(), 1);
        for (long k = 1; k <= terms; k += 2) sum = sum + eval_term(n, k, digits);
        return sum;
    };
    AuditedReal value = audit("zuckerman_estimate(n=" + std::to_string(n) + ")", eval_value, ctx,
                              log10_term_scale(n, 1));

    auto eval_radius = [n, terms](long digits) {
        mpfr_prec_t prec = bits_for_digits(digits);
        Real nn = Real::of_long(n, prec);
        Real nt = Real::of_long(terms, prec);
        return pow_q(nt, 5, 2) / (const_pi(prec) * pow_q(nn, 3, 2)) * sinh(mu(n, prec) / terms);
    };
    AuditedReal radius = audit("engel_error_radius(n=" + std::to_string(n) + ")", eval_radius, ctx);

    return CertifiedEstimate{n, terms, std::move(value), std::move(radius)};
}

namespace {

struct DecompParts {
    Real t;
    Real r;
    Real e;
    Real big_e;
};

// Evaluates the decomposition at `digits`, adding enough internal headroom
// that p(n) - T(n) keeps full relative accuracy despite the e^{mu} vs
// e^{mu/3} scale gap.
DecompParts eval_decomposition(long n, const mpz_class& pn, long digits) {
    double mu_d = 3.14159265358979312 * std::sqrt(static_cast<double>(n));
    long boost = static_cast<long>(mu_d * (2.0 / 3.0) * 0.434294481903251828) + 40;
    for (int attempt = 0; attempt < 6; ++attempt) {
        mpfr_prec_t prec = bits_for_digits(digits + boost);
        Real t = main_term(n, prec);
        Real diff = Real::of_mpz(pn, prec) - t;
        if (!diff.is_zero()) {
            long lost_bits = mpfr_get_exp(t.raw()) - mpfr_get_exp(diff.raw());
            if (lost_bits < 0) lost_bits = 0;
            if (prec - lost_bits >= bits_for_digits(digits) + 30) {
                Real e = diff / t;
                mpfr_prec_t out = bits_for_digits(digits);
                return DecompParts{t.rounded_to(out), diff.rounded_to(out), e.rounded_to(out),
                                   log1p(e).rounded_to(out)};
            }
            boost += (lost_bits * 10) / 33 + 20;
        } else {
            boost += digits + 40;
        }
    }
    throw PrecisionInstabilityError("decompose(n=" + std::to_string(n) + "): residual underflow");
}

}  // namespace

Real log_ratio_raw(long n, const OverpartitionTable& table, long digits) {
    return eval_decomposition(n, table.at(n), digits).big_e;
}

Real rel_residual_raw(long n, const OverpartitionTable& table, long digits) {
    return eval_decomposition(n, table.at(n), digits).e;
}

Decomposition decompose(long n, const OverpartitionTable& table, const PrecisionContext& ctx) {
    if (n < 1) throw DomainError("decompose: n must be >= 1 (mu(0) = 0 is singular)");
    ctx.validate();
    const mpz_class& pn = table.at(n);

    DecompParts hi = eval_decomposition(n, pn, ctx.working_digits());
    DecompParts lo = eval_decomposition(n, pn, ctx.digits);
    long tol = ctx.digits - 5;
    std::string nm = "decompose(n=" + std::to_string(n) + ")";
    if (!audit_agree(lo.t, hi.t, tol) || !audit_agree(lo.r, hi.r, tol) ||
        !audit_agree(lo.e, hi.e, tol) || !audit_agree(lo.big_e, hi.big_e, tol))
        throw PrecisionInstabilityError(nm);

    mpfr_prec_t out = ctx.bits();
    return Decomposition{n, AuditedReal{hi.t.rounded_to(out), ctx}, AuditedReal{hi.r.rounded_to(out), ctx},
                         AuditedReal{hi.e.rounded_to(out), ctx}, AuditedReal{hi.big_e.rounded_to(out), ctx}};
}

AuditedReal engel_tail_bound(long n, const PrecisionContext& ctx) {
    if (n < 1) throw std::invalid_argument("engel_tail_bound: n must be >= 1");
    auto eval = [n](long digits) {
        mpfr_prec_t prec = bits_for_digits(digits);
        Real m = mu(n, prec);
        Real num = 9 * sqrt_ul(3, prec) * exp(m / 3);
        return num / (2 * Real::of_long(n, prec) * m);
    };
    return audit("engel_tail_bound(n=" + std::to_string(n) + ")", eval, ctx);
}

}  // namespace opart
