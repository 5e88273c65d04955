#include "opart/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>

#include "opart/parallel.hpp"
#include "opart/zuckerman.hpp"

namespace opart {

Real delta2(const Real& f_nm1, const Real& f_n, const Real& f_np1) {
    return f_np1 + f_nm1 - 2 * f_n;
}

AuditedReal delta2(const AuditedReal& f_nm1, const AuditedReal& f_n, const AuditedReal& f_np1) {
    if (!(f_nm1.ctx == f_n.ctx) || !(f_n.ctx == f_np1.ctx))
        throw std::invalid_argument("delta2: mismatched precision contexts");
    return AuditedReal{delta2(f_nm1.value, f_n.value, f_np1.value), f_n.ctx};
}

bool RangeReport::any_indeterminate() const {
    return std::any_of(records.begin(), records.end(),
                       [](const CheckRecord& r) { return r.indeterminate; });
}

const CheckRecord* RangeReport::min_margin_record() const {
    const CheckRecord* best = nullptr;
    for (const auto& r : records)
        if (!best || r.margin.value < best->margin.value) best = &r;
    return best;
}

// ---------------------------------------------------------------------------
// shared record machinery
// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxEscalations = 4;

struct BoundValues {
    std::optional<Real> lower;
    std::optional<Real> upper;
    Real middle;
    bool aux_pass = true;
    std::vector<std::pair<std::string, Real>> diagnostics;
};

using RecordEval = std::function<BoundValues(long n, long digits)>;

void audit_or_throw(const std::string& what, long n, const Real& lo, const Real& hi, long tol,
                    double scale) {
    if (!audit_agree(lo, hi, tol, scale))
        throw PrecisionInstabilityError(what + " at n=" + std::to_string(n));
}

CheckRecord evaluate_record(const std::string& check, long n, const RecordEval& eval,
                            const PrecisionContext& base_ctx, double scale_log10) {
    CheckRecord rec;
    rec.n = n;
    for (int esc = 0; esc <= kMaxEscalations; ++esc) {
        PrecisionContext ectx = base_ctx.escalated(esc);
        long d = ectx.digits;
        BoundValues hi = eval(n, d + ectx.guard);
        BoundValues lo = eval(n, d);
        long tol = d - 5;
        if (hi.lower.has_value() != lo.lower.has_value() ||
            hi.upper.has_value() != lo.upper.has_value())
            throw PrecisionInstabilityError(check + " bound domain at n=" + std::to_string(n));
        audit_or_throw(check + " middle", n, lo.middle, hi.middle, tol, scale_log10);
        if (hi.lower) audit_or_throw(check + " lower bound", n, *lo.lower, *hi.lower, tol, scale_log10);
        if (hi.upper) audit_or_throw(check + " upper bound", n, *lo.upper, *hi.upper, tol, scale_log10);

        mpfr_prec_t out = ectx.bits();
        std::optional<Real> margin;
        if (hi.lower) margin = hi.middle - *hi.lower;
        if (hi.upper) {
            Real dist = *hi.upper - hi.middle;
            margin = margin ? fmin(*margin, dist) : dist;
        }
        if (!margin) {
            // every bound fell out of its domain at this n (exploratory,
            // below any claim): vacuously decided
            Real inf(out);
            mpfr_set_inf(inf.raw(), 1);
            margin = inf;
        }

        Real threshold = Real::pow10(-(d / 2), margin->prec());
        if (!(abs(*margin) > threshold)) continue;  // too close to call: escalate

        rec.middle = AuditedReal{hi.middle.rounded_to(out), ectx};
        if (hi.lower) {
            rec.lower = AuditedReal{hi.lower->rounded_to(out), ectx};
            rec.pass_lower = hi.middle > *hi.lower;
        }
        if (hi.upper) {
            rec.upper = AuditedReal{hi.upper->rounded_to(out), ectx};
            rec.pass_upper = hi.middle < *hi.upper;
        }
        rec.aux_pass = hi.aux_pass;
        rec.margin = AuditedReal{margin->rounded_to(out), ectx};
        rec.escalations = esc;
        rec.diagnostics.reserve(hi.diagnostics.size());
        for (auto& [name, v] : hi.diagnostics)
            rec.diagnostics.emplace_back(name, AuditedReal{v.rounded_to(out), ectx});
        return rec;
    }
    rec.indeterminate = true;
    rec.pass_lower = rec.pass_upper = false;
    rec.escalations = kMaxEscalations;
    rec.middle = AuditedReal{Real::of_long(0, base_ctx.bits()), base_ctx};
    rec.margin = AuditedReal{Real::of_long(0, base_ctx.bits()), base_ctx};
    return rec;
}

RangeReport run_range(std::string check, std::optional<mpq_class> alpha, long from, long to,
                      const PrecisionContext& ctx, const RecordEval& eval,
                      const std::function<double(long)>& scale, const RunOptions& opts,
                      std::uint64_t checksum, std::vector<std::string> notes) {
    if (from > to)
        throw std::invalid_argument(check + ": empty range [" + std::to_string(from) + ", " +
                                    std::to_string(to) + "]");
    ctx.validate();
    RangeReport report;
    report.check = std::move(check);
    report.alpha = std::move(alpha);
    report.n_from = from;
    report.n_to = to;
    report.context = ctx;
    report.table_checksum = checksum;
    report.notes = std::move(notes);
    report.records.resize(static_cast<size_t>(to - from + 1));

    parallel_for(from, to + 1, opts.jobs, [&](long n) {
        report.records[static_cast<size_t>(n - from)] =
            evaluate_record(report.check, n, eval, ctx, scale(n));
    });

    for (const auto& r : report.records) {
        if (!r.pass()) {
            report.all_pass = false;
            if (!report.first_failure) report.first_failure = r.n;
        }
    }
    return report;
}

void require_threshold(const std::string& check, long from, long threshold, bool exploratory,
                       std::vector<std::string>& notes) {
    if (from >= threshold) return;
    if (!exploratory)
        throw std::invalid_argument(check + ": range starts below validity threshold " +
                                    std::to_string(threshold) +
                                    " (no claim there); pass exploratory to probe anyway");
    notes.push_back("exploratory: no claim below n=" + std::to_string(threshold));
}

void require_table(const std::string& check, const OverpartitionTable& table, long needed) {
    if (table.n_max < needed)
        throw std::invalid_argument(check + ": table too short (need n_max >= " +
                                    std::to_string(needed) + ", have " +
                                    std::to_string(table.n_max) + ")");
}

// Cached per-precision values over a contiguous index range. prime() fills a
// level up front (call before any parallel use); get() on an unprimed level
// computes the value on the fly without touching shared state.
class RangeCache {
  public:
    RangeCache(long lo, long hi, std::function<Real(long, long)> gen)
        : lo_(lo), hi_(hi), gen_(std::move(gen)) {}

    void prime(long digits, int jobs) {
        auto [it, inserted] = levels_.try_emplace(digits);
        if (!inserted) return;
        auto& vec = it->second;
        vec.resize(static_cast<size_t>(hi_ - lo_ + 1));
        parallel_for(lo_, hi_ + 1, jobs, [&](long m) {
            vec[static_cast<size_t>(m - lo_)] = gen_(m, digits);
        });
    }

    Real get(long m, long digits) const {
        auto it = levels_.find(digits);
        if (it != levels_.end() && m >= lo_ && m <= hi_)
            return it->second[static_cast<size_t>(m - lo_)];
        return gen_(m, digits);
    }

  private:
    long lo_, hi_;
    std::function<Real(long, long)> gen_;
    std::map<long, std::vector<Real>> levels_;
};

long d2_headroom(long n) {
    return 2 * static_cast<long>(std::log10(static_cast<double>(n + 2))) + 30;
}

// ln(1 + 3pi/(4 n^{5/2})).
Real theorem_upper(long n, mpfr_prec_t prec) {
    Real nn = Real::of_long(n, prec);
    return log1p(3 * const_pi(prec) / (4 * pow_q(nn, 5, 2)));
}

// 1 + 3pi/(4 n^{5/2}) - (11+5alpha)/n^{11/4}, returned as the log1p argument.
Real theorem_lower_arg(long n, const mpq_class& alpha, mpfr_prec_t prec) {
    Real nn = Real::of_long(n, prec);
    Real coeff = Real::of_mpq(11 + 5 * alpha, prec);
    return 3 * const_pi(prec) / (4 * pow_q(nn, 5, 2)) - coeff / pow_q(nn, 11, 4);
}

double d2_log_r_scale(long n, const mpq_class& alpha) {
    double a = std::abs(alpha.get_d());
    double mag = 3.14159265358979312 / std::sqrt(static_cast<double>(n)) +
                 a * std::log(static_cast<double>(n)) / static_cast<double>(n);
    return std::log10(4.0 * mag);
}

// Shared middle evaluator for every check built on D2 log r_alpha.
struct D2LogRMiddle {
    const mpq_class alpha;
    std::shared_ptr<RangeCache> lnp;  // ln p(m), computed with headroom

    Real operator()(long n, long digits) const {
        long work = digits + d2_headroom(n);
        mpfr_prec_t prec = bits_for_digits(work);
        auto logr = [&](long m) {
            Real lp = lnp->get(m, digits).rounded_to(prec);
            Real term = lp;
            if (alpha != 0)
                term = lp - Real::of_mpq(alpha, prec) * log(Real::of_long(m, prec));
            return term / m;
        };
        return delta2(logr(n - 1), logr(n), logr(n + 1)).rounded_to(bits_for_digits(digits));
    }
};

std::shared_ptr<RangeCache> make_lnp_cache(const OverpartitionTable& table, long lo, long hi) {
    long headroom = d2_headroom(hi);
    return std::make_shared<RangeCache>(lo, hi, [&table, headroom](long m, long digits) {
        return ln_big_raw(table.at(m), digits + headroom);
    });
}

}  // namespace

// ---------------------------------------------------------------------------
// point evaluators
// ---------------------------------------------------------------------------

AuditedReal log_r(long n, const mpq_class& alpha, const OverpartitionTable& table,
                  const PrecisionContext& ctx) {
    if (n < 1) throw DomainError("log_r: n must be >= 1");
    require_table("log_r", table, n);
    const mpz_class& pn = table.at(n);
    auto eval = [&pn, n, &alpha](long digits) {
        mpfr_prec_t prec = bits_for_digits(digits + 10);
        Real lp = ln_big_raw(pn, digits + 10);
        Real term = lp - Real::of_mpq(alpha, prec) * log(Real::of_long(n, prec));
        return (term / n).rounded_to(bits_for_digits(digits));
    };
    return audit("log_r(n=" + std::to_string(n) + ")", eval, ctx);
}

AuditedReal delta2_log_r(long n, const mpq_class& alpha, const OverpartitionTable& table,
                         const PrecisionContext& ctx) {
    if (n < 2) throw DomainError("delta2_log_r: center must be >= 2");
    require_table("delta2_log_r", table, n + 1);
    auto cache = make_lnp_cache(table, n - 1, n + 1);
    D2LogRMiddle mid{alpha, cache};
    auto eval = [mid, n](long digits) { return mid(n, digits); };
    return audit("delta2_log_r(n=" + std::to_string(n) + ")", eval, ctx, d2_log_r_scale(n, alpha));
}

NAlphaParts n_alpha_parts(const mpq_class& alpha) {
    if (alpha < 0) throw std::invalid_argument("n_alpha: alpha must be >= 0");
    if (alpha == 0) return NAlphaParts{0, 4522, 0, 4522};

    NAlphaParts parts;
    mpz_class q;
    mpz_class num = 3490 * alpha.get_den();
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), alpha.get_num().get_mpz_t());
    q += 2;
    if (!q.fits_slong_p()) throw std::overflow_error("n_alpha: floor term overflows");
    parts.floor_term = q.get_si();
    parts.n1 = std::max(parts.floor_term, 4522L);

    // ceil((4(11+5alpha)/(3pi))^4); the argument is transcendental, so the
    // distance to the nearest integer is resolvable at finite precision.
    mpq_class base_q = 4 * (11 + 5 * alpha);
    for (long digits = 60; digits <= 960; digits *= 2) {
        mpfr_prec_t prec = bits_for_digits(digits);
        Real x = pow_si(Real::of_mpq(base_q, prec) / (3 * const_pi(prec)), 4);
        Real up = ceil_r(x);
        Real tol = Real::pow10(-(digits / 2), prec);
        if (up - x > tol && x - floor_r(x) > tol) {
            if (!mpfr_fits_slong_p(up.raw(), MPFR_RNDN))
                throw std::overflow_error("n_alpha: quartic term overflows");
            parts.n3 = mpfr_get_si(up.raw(), MPFR_RNDN);
            parts.threshold = std::max({parts.floor_term, parts.n3, 5505L});
            return parts;
        }
    }
    throw PrecisionInstabilityError("n_alpha: quartic threshold too close to an integer");
}

long n_alpha(const mpq_class& alpha) { return n_alpha_parts(alpha).threshold; }

// ---------------------------------------------------------------------------
// range checks
// ---------------------------------------------------------------------------

RangeReport theorem1_check(const mpq_class& alpha, long from, long to,
                           const OverpartitionTable& table, const PrecisionContext& ctx,
                           const RunOptions& opts) {
    std::vector<std::string> notes;
    long threshold = std::max(n_alpha(alpha), 2L);
    require_threshold("theorem1", from, threshold, opts.exploratory, notes);
    if (from < 2) throw std::invalid_argument("theorem1: centers need n >= 2");
    require_table("theorem1", table, to + 1);
    if (alpha > 0)
        notes.push_back("threshold N(alpha) reads the bracket term as floor(3490/alpha)+2 "
                        "(conservative by at most 1)");

    auto cache = make_lnp_cache(table, from - 1, to + 1);
    cache->prime(ctx.digits, opts.jobs);
    cache->prime(ctx.working_digits(), opts.jobs);
    D2LogRMiddle mid{alpha, cache};
    mpq_class a = alpha;
    RecordEval eval = [mid, a](long n, long digits) {
        mpfr_prec_t prec = bits_for_digits(digits);
        BoundValues v{.middle = mid(n, digits)};
        v.upper = theorem_upper(n, prec);
        Real arg = theorem_lower_arg(n, a, prec);
        if (arg > -1)
            v.lower = log1p(arg);
        else  // log domain left behind: only possible far below the threshold
            v.diagnostics.emplace_back("lower_arg_nonpositive", arg);
        return v;
    };
    return run_range("theorem1", alpha, from, to, ctx, eval,
                     [a](long n) { return d2_log_r_scale(n, a); }, opts, table_checksum(table),
                     std::move(notes));
}

RangeReport corollary1_check(const mpq_class& alpha, long from, long to,
                             const OverpartitionTable& table, const PrecisionContext& ctx,
                             const RunOptions& opts) {
    std::vector<std::string> notes;
    long threshold = std::max(n_alpha(alpha), 2L);
    require_threshold("corollary1", from, threshold, opts.exploratory, notes);
    if (from < 2) throw std::invalid_argument("corollary1: centers need n >= 2");
    require_table("corollary1", table, to + 1);

    auto cache = make_lnp_cache(table, from - 1, to + 1);
    cache->prime(ctx.digits, opts.jobs);
    cache->prime(ctx.working_digits(), opts.jobs);
    D2LogRMiddle mid{alpha, cache};
    RecordEval eval = [mid](long n, long digits) {
        BoundValues v{.middle = mid(n, digits)};
        v.lower = Real::of_long(0, bits_for_digits(digits));
        return v;
    };
    mpq_class a = alpha;
    return run_range("corollary1", alpha, from, to, ctx, eval,
                     [a](long n) { return d2_log_r_scale(n, a); }, opts, table_checksum(table),
                     std::move(notes));
}

namespace {

RangeReport logconvexity_window(const std::string& name, const mpq_class& alpha, long from, long to,
                                long theorem_threshold, const OverpartitionTable& table,
                                const PrecisionContext& ctx, const RunOptions& opts) {
    if (from < 2) throw std::invalid_argument(name + ": centers need n >= 2");
    require_table(name, table, to + 1);
    std::vector<std::string> notes;
    notes.push_back("direct numeric regime: centers " + std::to_string(from) + ".." +
                    std::to_string(to));
    notes.push_back("theorem regime: n >= " + std::to_string(theorem_threshold) +
                    " is covered by theorem1 (lower bound > 0 there)");

    auto cache = make_lnp_cache(table, from - 1, to + 1);
    cache->prime(ctx.digits, opts.jobs);
    cache->prime(ctx.working_digits(), opts.jobs);
    D2LogRMiddle mid{alpha, cache};
    RecordEval eval = [mid](long n, long digits) {
        BoundValues v{.middle = mid(n, digits)};
        v.lower = Real::of_long(0, bits_for_digits(digits));
        return v;
    };
    mpq_class a = alpha;
    return run_range(name, alpha, from, to, ctx, eval,
                     [a](long n) { return d2_log_r_scale(n, a); }, opts, table_checksum(table),
                     std::move(notes));
}

}  // namespace

std::vector<RangeReport> corollary2_checks(const OverpartitionTable& table,
                                           const PrecisionContext& ctx, const RunOptions& opts) {
    std::vector<RangeReport> out;
    out.push_back(logconvexity_window("corollary2.r1", 1, 19, 5504, 5505, table, ctx, opts));
    out.push_back(logconvexity_window("corollary2.r0", 0, 4, 4521, 4522, table, ctx, opts));
    return out;
}

RangeReport corollary3_check(long from, long to, const OverpartitionTable& table,
                             const PrecisionContext& ctx, const RunOptions& opts) {
    std::vector<std::string> notes;
    require_threshold("corollary3", from, 2, opts.exploratory, notes);
    if (from < 2) throw std::invalid_argument("corollary3: centers need n >= 2");
    require_table("corollary3", table, to + 1);
    notes.push_back("direct numeric regime: centers " + std::to_string(from) + ".." +
                    std::to_string(to) + "; n >= 4523 follows from theorem1's upper bound");

    auto cache = make_lnp_cache(table, from - 1, to + 1);
    cache->prime(ctx.digits, opts.jobs);
    cache->prime(ctx.working_digits(), opts.jobs);
    D2LogRMiddle mid{mpq_class(0), cache};
    RecordEval eval = [mid](long n, long digits) {
        BoundValues v{.middle = mid(n, digits)};
        v.upper = theorem_upper(n, bits_for_digits(digits));
        return v;
    };
    return run_range("corollary3", mpq_class(0), from, to, ctx, eval,
                     [](long n) { return d2_log_r_scale(n, mpq_class(0)); }, opts,
                     table_checksum(table), std::move(notes));
}

// ---------------------------------------------------------------------------
// lemma checks
// ---------------------------------------------------------------------------

namespace {

// Pieces of the main-term bracket, all at one precision.
struct Lemma2Pieces {
    Real pi_v, c_log;  // pi, ln(pi^2/8)

    explicit Lemma2Pieces(mpfr_prec_t prec) : pi_v(const_pi(prec)), c_log(prec) {
        c_log = log(pi_v * pi_v / 8);
    }

    Real mu_of(long m) const { return pi_v * sqrt_ul(static_cast<unsigned long>(m), pi_v.prec()); }

    Real g1pp(long m) const {
        return 3 * pi_v / (4 * pow_q(Real::of_long(m, pi_v.prec()), 5, 2));
    }
    Real g2pp(long m) const {
        Real m3 = pow_si(Real::of_long(m, pi_v.prec()), 3);
        return (Real::of_long(9, pi_v.prec()) / 2 - 6 * log(mu_of(m))) / m3;
    }
    Real g3pp(long m) const {
        mpfr_prec_t prec = pi_v.prec();
        Real mm = Real::of_long(m, prec);
        Real mu1 = mu_of(m) - 1;
        return 2 * log(mu1) / pow_si(mm, 3) - 5 * pi_v / (4 * pow_q(mm, 5, 2) * mu1) -
               pi_v * pi_v / (4 * mm * mm * mu1 * mu1);
    }
    Real g4pp(long m) const { return 2 * c_log / pow_si(Real::of_long(m, pi_v.prec()), 3); }

    Real u1(long n) const {
        mpfr_prec_t prec = pi_v.prec();
        return -6 * log(mu_of(n + 1)) / pow_si(Real::of_long(n + 1, prec), 3) +
               2 * log(mu_of(n - 1) - 1) / pow_si(Real::of_long(n - 1, prec), 3);
    }
    Real u2(long n) const {
        mpfr_prec_t prec = pi_v.prec();
        Real nm = Real::of_long(n - 1, prec);
        Real np = Real::of_long(n + 1, prec);
        Real mu1 = mu_of(n - 1) - 1;
        return Real::of_long(9, prec) / (2 * pow_si(np, 3)) -
               5 * pi_v / (4 * pow_q(nm, 5, 2) * mu1) -
               pi_v * pi_v / (4 * nm * nm * mu1 * mu1) + 2 * c_log / pow_si(nm, 3);
    }
    Real l1(long n) const {
        mpfr_prec_t prec = pi_v.prec();
        return -6 * log(mu_of(n - 1)) / pow_si(Real::of_long(n - 1, prec), 3) +
               2 * log(mu_of(n + 1) - 1) / pow_si(Real::of_long(n + 1, prec), 3);
    }
    Real l2(long n) const {
        mpfr_prec_t prec = pi_v.prec();
        Real nm = Real::of_long(n - 1, prec);
        Real np = Real::of_long(n + 1, prec);
        Real mu1 = mu_of(n + 1) - 1;
        return Real::of_long(9, prec) / (2 * pow_si(nm, 3)) -
               5 * pi_v / (4 * pow_q(np, 5, 2) * mu1) -
               pi_v * pi_v / (4 * np * np * mu1 * mu1) + 2 * c_log / pow_si(np, 3);
    }
    Real big_g1(long n) const {
        mpfr_prec_t prec = pi_v.prec();
        return 3 * pi_v / (4 * pow_q(Real::of_long(n + 1, prec), 5, 2)) -
               5 * log(mu_of(n - 1)) / pow_si(Real::of_long(n - 1, prec), 3);
    }
    Real big_g2(long n) const {
        mpfr_prec_t prec = pi_v.prec();
        Real nm3 = pow_si(Real::of_long(n - 1, prec), 3);
        return 3 * pi_v / (4 * pow_q(Real::of_long(n - 1, prec), 5, 2)) -
               3 * log(mu_of(n + 1)) / pow_si(Real::of_long(n + 1, prec), 3) +
               4 * (Real::of_long(1, prec) / nm3);
    }
};

double lemma2_scale(long n) {
    return std::log10(4.0 * 3.14159265358979312 / std::sqrt(static_cast<double>(n)) + 1.0);
}

}  // namespace

RangeReport lemma2_check(long from, long to, const PrecisionContext& ctx, const RunOptions& opts) {
    std::vector<std::string> notes;
    require_threshold("lemma2", from, 2, opts.exploratory, notes);
    if (from < 2) throw std::invalid_argument("lemma2: needs n >= 2 (T at n-1 >= 1)");

    long headroom = d2_headroom(to);
    auto lnT = std::make_shared<RangeCache>(from - 1, to + 1, [headroom](long m, long digits) {
        return log_main_term(m, bits_for_digits(digits + headroom));
    });
    lnT->prime(ctx.digits, opts.jobs);
    lnT->prime(ctx.working_digits(), opts.jobs);

    RecordEval eval = [lnT](long n, long digits) {
        long work = digits + d2_headroom(n);
        mpfr_prec_t wprec = bits_for_digits(work);
        auto f = [&](long m) { return lnT->get(m, digits).rounded_to(wprec) / m; };
        mpfr_prec_t prec = bits_for_digits(digits);
        Lemma2Pieces pieces(prec);

        BoundValues v{.middle = delta2(f(n - 1), f(n), f(n + 1)).rounded_to(prec)};
        v.lower = pieces.big_g1(n);
        v.upper = pieces.big_g2(n);
        Real u1 = pieces.u1(n), u2 = pieces.u2(n), l1 = pieces.l1(n), l2 = pieces.l2(n);

        // proof internals: U2 < 4/(n-1)^3 for n >= 2; L2 > 0 and
        // L1 > -5 ln mu(n-1)/(n-1)^3 for n >= 9
        Real nm3 = pow_si(Real::of_long(n - 1, prec), 3);
        v.aux_pass = u2 < 4 * (Real::of_long(1, prec) / nm3);
        if (n >= 9) {
            v.aux_pass = v.aux_pass && l2 > 0;
            v.aux_pass = v.aux_pass && l1 > -5 * log(pieces.mu_of(n - 1)) / nm3;
        }
        v.diagnostics = {{"g1pp", pieces.g1pp(n)}, {"g2pp", pieces.g2pp(n)},
                         {"g3pp", pieces.g3pp(n)}, {"g4pp", pieces.g4pp(n)},
                         {"U1", u1},               {"U2", u2},
                         {"L1", l1},               {"L2", l2}};
        return v;
    };
    return run_range("lemma2", std::nullopt, from, to, ctx, eval, lemma2_scale, opts, 0,
                     std::move(notes));
}

RangeReport lemma3_check(long from, long to, const OverpartitionTable& table,
                         const PrecisionContext& ctx, const RunOptions& opts) {
    std::vector<std::string> notes;
    require_threshold("lemma3", from, 38, opts.exploratory, notes);
    if (from < 8) throw std::invalid_argument("lemma3: intermediates need n-1 >= 7");
    require_table("lemma3", table, to + 1);

    long headroom = d2_headroom(to);
    auto big_e = std::make_shared<RangeCache>(from - 1, to + 1, [&table, headroom](long m, long digits) {
        return log_ratio_raw(m, table, digits + headroom);
    });
    big_e->prime(ctx.digits, opts.jobs);
    big_e->prime(ctx.working_digits(), opts.jobs);

    RecordEval eval = [big_e, &table](long n, long digits) {
        long work = digits + d2_headroom(n);
        mpfr_prec_t wprec = bits_for_digits(work);
        auto f = [&](long m) { return big_e->get(m, digits).rounded_to(wprec) / m; };
        mpfr_prec_t prec = bits_for_digits(digits);

        BoundValues v{.middle = delta2(f(n - 1), f(n), f(n + 1)).rounded_to(prec)};
        Real bound = 5 * exp(-(mu(n - 1, prec) / 12)) / (n - 1);
        v.lower = -bound;
        v.upper = bound;

        // intermediates at this center: |e(n)| < e^{-mu(n)/12} and < 1/5
        Real e_n = rel_residual_raw(n, table, digits);
        Real abs_e = abs(e_n);
        v.aux_pass = abs_e < exp(-(mu(n, prec) / 12));
        if (n >= 38) v.aux_pass = v.aux_pass && abs_e < Real::of_long(1, prec) / 5;
        v.diagnostics = {{"e_n", e_n}, {"exp_bound", exp(-(mu(n, prec) / 12))}};
        return v;
    };

    auto scale = [](long n) {
        // natural magnitude of the three E(m)/m terms, via the proven bound
        double mu_d = 3.14159265358979312 * std::sqrt(static_cast<double>(n - 1));
        return std::log10(20.0 / static_cast<double>(n - 1)) - mu_d / 12.0 * 0.434294481903251828;
    };
    return run_range("lemma3", std::nullopt, from, to, ctx, eval, scale, opts,
                     table_checksum(table), std::move(notes));
}

RangeReport lemma4_check(const mpq_class& alpha, long from, long to, const PrecisionContext& ctx,
                         const RunOptions& opts) {
    if (alpha <= 0) throw std::invalid_argument("lemma4: alpha must be > 0");
    std::vector<std::string> notes;
    require_threshold("lemma4", from, 7, opts.exploratory, notes);
    if (from < 2) throw std::invalid_argument("lemma4: needs n >= 2");

    mpq_class a = alpha;
    RecordEval eval = [a](long n, long digits) {
        long work = digits + d2_headroom(n);
        mpfr_prec_t wprec = bits_for_digits(work);
        Real av_w = Real::of_mpq(a, wprec);
        auto f = [&](long m) { return log(Real::of_long(m, wprec)) / m; };
        mpfr_prec_t prec = bits_for_digits(digits);
        Real av = Real::of_mpq(a, prec);

        BoundValues v{.middle = (-av_w * delta2(f(n - 1), f(n), f(n + 1))).rounded_to(prec)};
        auto side = [&](long m) {
            Real mm = Real::of_long(m, prec);
            return (-2 * av * log(mm) + 3 * av) / pow_si(mm, 3);
        };
        v.lower = side(n - 1);
        v.upper = side(n + 1);
        return v;
    };
    auto scale = [a](long n) {
        return std::log10(4.0 * std::abs(a.get_d()) * std::log(static_cast<double>(n)) /
                          static_cast<double>(n));
    };
    return run_range("lemma4", alpha, from, to, ctx, eval, scale, opts, 0, std::move(notes));
}

RangeReport lemma5_check(const mpq_class& alpha, long from, long to,
                         const OverpartitionTable& table, const PrecisionContext& ctx,
                         const RunOptions& opts) {
    if (alpha < 0) throw std::invalid_argument("lemma5: alpha must be >= 0");
    std::vector<std::string> notes;
    require_threshold("lemma5", from, 4021, opts.exploratory, notes);
    if (from < 2) throw std::invalid_argument("lemma5: centers need n >= 2");
    require_table("lemma5", table, to + 1);
    notes.push_back("one-sided upper bound; validity threshold n >= 4021 for every alpha >= 0");

    auto cache = make_lnp_cache(table, from - 1, to + 1);
    cache->prime(ctx.digits, opts.jobs);
    cache->prime(ctx.working_digits(), opts.jobs);
    D2LogRMiddle mid{alpha, cache};
    RecordEval eval = [mid](long n, long digits) {
        BoundValues v{.middle = mid(n, digits)};
        v.upper = theorem_upper(n, bits_for_digits(digits));
        return v;
    };
    mpq_class a = alpha;
    return run_range("lemma5", alpha, from, to, ctx, eval,
                     [a](long n) { return d2_log_r_scale(n, a); }, opts, table_checksum(table),
                     std::move(notes));
}

RangeReport lemma6_check(const mpq_class& alpha, long from, long to,
                         const OverpartitionTable& table, const PrecisionContext& ctx,
                         const RunOptions& opts) {
    if (alpha < 0) throw std::invalid_argument("lemma6: alpha must be >= 0");
    std::vector<std::string> notes;
    long threshold = alpha > 0 ? n_alpha(alpha) : 4522;
    require_threshold("lemma6", from, threshold, opts.exploratory, notes);
    if (from < 2) throw std::invalid_argument("lemma6: centers need n >= 2");
    require_table("lemma6", table, to + 1);
    notes.push_back("one-sided lower bound; validity threshold n >= " + std::to_string(threshold));
    if (alpha > 0)
        notes.push_back("threshold N(alpha) reads the bracket term as floor(3490/alpha)+2 "
                        "(conservative by at most 1)");

    auto cache = make_lnp_cache(table, from - 1, to + 1);
    cache->prime(ctx.digits, opts.jobs);
    cache->prime(ctx.working_digits(), opts.jobs);
    D2LogRMiddle mid{alpha, cache};
    mpq_class a = alpha;
    RecordEval eval = [mid, a](long n, long digits) {
        BoundValues v{.middle = mid(n, digits)};
        Real arg = theorem_lower_arg(n, a, bits_for_digits(digits));
        if (arg > -1)
            v.lower = log1p(arg);
        else
            v.diagnostics.emplace_back("lower_arg_nonpositive", arg);
        return v;
    };
    return run_range("lemma6", alpha, from, to, ctx, eval,
                     [a](long n) { return d2_log_r_scale(n, a); }, opts, table_checksum(table),
                     std::move(notes));
}

RangeReport engel_logconcavity_check(long from, long to, const OverpartitionTable& table,
                                     const RunOptions& opts) {
    if (from < 1) throw std::invalid_argument("logconcavity: needs n >= 1");
    if (from > to) throw std::invalid_argument("logconcavity: empty range");
    require_table("logconcavity", table, to + 1);

    RangeReport report;
    report.check = "logconcavity";
    report.n_from = from;
    report.n_to = to;
    report.context = PrecisionContext{};
    report.table_checksum = table_checksum(table);
    report.notes = {"exact big-integer verdicts: p(n)^2 >= p(n-1) p(n+1); margins are exact differences"};
    report.records.resize(static_cast<size_t>(to - from + 1));

    const mpfr_prec_t prec = bits_for_digits(50);
    parallel_for(from, to + 1, opts.jobs, [&](long n) {
        CheckRecord rec;
        rec.n = n;
        mpz_class lhs = table.at(n) * table.at(n);
        mpz_class rhs = table.at(n - 1) * table.at(n + 1);
        mpz_class diff = lhs - rhs;
        PrecisionContext rctx = report.context;
        rec.middle = AuditedReal{Real::of_mpz(lhs, prec), rctx};
        rec.lower = AuditedReal{Real::of_mpz(rhs, prec), rctx};
        rec.pass_lower = diff >= 0;  // non-strict by definition of log-concavity
        rec.margin = AuditedReal{Real::of_mpz(diff, prec), rctx};
        report.records[static_cast<size_t>(n - from)] = std::move(rec);
    });

    for (const auto& r : report.records) {
        if (!r.pass()) {
            report.all_pass = false;
            if (!report.first_failure) report.first_failure = r.n;
        }
    }
    return report;
}

AsymptoticReport asymptotic_table(const mpq_class& alpha, const std::vector<long>& points,
                                  const OverpartitionTable& table, const PrecisionContext& ctx,
                                  const RunOptions& opts) {
    if (alpha < 0) throw std::invalid_argument("asymptotic_table: alpha must be >= 0");
    ctx.validate();
    AsymptoticReport report;
    report.alpha = alpha;
    report.context = ctx;
    report.table_checksum = table_checksum(table);
    report.notes = {"limit constant: 3pi/4; bracket columns are n^{5/2} x theorem1 bounds (context)"};
    report.rows.resize(points.size());

    for (long n : points) {
        if (n < 2) throw std::invalid_argument("asymptotic_table: points need n >= 2");
        require_table("asymptotic_table", table, n + 1);
    }

    mpq_class a = alpha;
    parallel_for(0, static_cast<long>(points.size()), opts.jobs, [&](long i) {
        long n = points[static_cast<size_t>(i)];
        auto cache = make_lnp_cache(table, n - 1, n + 1);
        D2LogRMiddle mid{a, cache};
        double scale = d2_log_r_scale(n, a) + 2.5 * std::log10(static_cast<double>(n));

        auto scaled = audit("asymptotic scaled(n=" + std::to_string(n) + ")",
                            [&](long digits) {
                                mpfr_prec_t prec = bits_for_digits(digits);
                                return pow_q(Real::of_long(n, prec), 5, 2) * mid(n, digits);
                            },
                            ctx, scale);
        AsymptoticRow row;
        row.n = n;
        mpfr_prec_t prec = ctx.bits();
        Real limit = 3 * const_pi(prec) / 4;
        row.limit_distance = AuditedReal{abs(scaled.value - limit), ctx};

        Real n52 = pow_q(Real::of_long(n, prec), 5, 2);
        Real up = n52 * theorem_upper(n, prec);
        Real arg = theorem_lower_arg(n, a, prec);
        row.bracket_upper = AuditedReal{up, ctx};
        if (arg > -1) {
            Real lo = n52 * log1p(arg);
            row.bracket_lower = AuditedReal{lo, ctx};
            row.inside = (lo < scaled.value) && (scaled.value < up);
        }
        row.scaled = std::move(scaled);
        report.rows[static_cast<size_t>(i)] = std::move(row);
    });
    return report;
}

}  // namespace opart
