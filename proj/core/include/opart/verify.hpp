#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "opart/numerics.hpp"
#include "opart/table.hpp"

namespace opart {

/// Second difference f(n+1) + f(n-1) - 2 f(n) from samples at n-1, n, n+1.
Real delta2(const Real& f_nm1, const Real& f_n, const Real& f_np1);
AuditedReal delta2(const AuditedReal& f_nm1, const AuditedReal& f_n, const AuditedReal& f_np1);

/// log r_alpha(n) = (ln p(n) - alpha ln n) / n.
AuditedReal log_r(long n, const mpq_class& alpha, const OverpartitionTable& table,
                  const PrecisionContext& ctx);

/// Second difference of log r_alpha centered at n (needs n >= 2): the value
/// written Delta^2 log r_alpha(n-1), i.e.
/// log r(n+1) + log r(n-1) - 2 log r(n).
AuditedReal delta2_log_r(long n, const mpq_class& alpha, const OverpartitionTable& table,
                         const PrecisionContext& ctx);

/// Validity threshold N(alpha) for the two-sided bound, with its pieces:
///   alpha = 0:  4522
///   alpha > 0:  max{ floor(3490/alpha)+2, ceil((4(11+5alpha)/(3pi))^4), 5505 }
struct NAlphaParts {
    long floor_term = 0;  // floor(3490/alpha) + 2 (0 when alpha = 0)
    long n1 = 0;          // max{floor_term, 4522}
    long n3 = 0;          // ceil((4(11+5alpha)/(3pi))^4) (0 when alpha = 0)
    long threshold = 0;   // N(alpha)
};
NAlphaParts n_alpha_parts(const mpq_class& alpha);
long n_alpha(const mpq_class& alpha);

/// One verified center. The pass flags are strict-inequality verdicts decided
/// with |margin| > 10^(-digits/2); closer calls escalate precision (digits x2,
/// up to 4 times) and only then report indeterminate.
struct CheckRecord {
    long n = 0;
    std::optional<AuditedReal> lower;
    AuditedReal middle;
    std::optional<AuditedReal> upper;
    bool pass_lower = true;
    bool pass_upper = true;
    bool aux_pass = true;  // proof-internal side assertions, when a check has them
    AuditedReal margin;    // min signed distance to the present bounds
    int escalations = 0;
    bool indeterminate = false;
    std::vector<std::pair<std::string, AuditedReal>> diagnostics;

    bool pass() const { return pass_lower && pass_upper && aux_pass && !indeterminate; }
};

struct RangeReport {
    std::string check;
    std::optional<mpq_class> alpha;
    long n_from = 0;
    long n_to = 0;
    bool all_pass = true;
    std::optional<long> first_failure;
    std::vector<CheckRecord> records;
    PrecisionContext context;
    std::uint64_t table_checksum = 0;
    std::vector<std::string> notes;

    bool any_indeterminate() const;
    const CheckRecord* min_margin_record() const;
};

struct RunOptions {
    int jobs = 0;             // <= 0: hardware concurrency
    bool exploratory = false; // allow ranges below the stated validity threshold
};

/// Theorem bound, both sides:
///   ln(1 + 3pi/(4n^{5/2}) - (11+5alpha)/n^{11/4}) < D2 log r_alpha < ln(1 + 3pi/(4n^{5/2})).
/// Valid for n >= N(alpha); lower ranges need opts.exploratory.
RangeReport theorem1_check(const mpq_class& alpha, long from, long to,
                           const OverpartitionTable& table, const PrecisionContext& ctx,
                           const RunOptions& opts = {});

/// Log-convexity of {r_alpha(n)}: D2 log r_alpha(n-1) > 0 at centers in
/// [from, to], valid from N(alpha).
RangeReport corollary1_check(const mpq_class& alpha, long from, long to,
                             const OverpartitionTable& table, const PrecisionContext& ctx,
                             const RunOptions& opts = {});

/// The two numerically-checked log-convexity regimes:
///   {r_1(n)} at centers 19..5504 and {r_0(n)} at centers 4..4521;
/// beyond them the theorem takes over (threshold 5505 resp. 4522), which the
/// report notes record.
std::vector<RangeReport> corollary2_checks(const OverpartitionTable& table,
                                           const PrecisionContext& ctx, const RunOptions& opts = {});

/// Ratio inequality at alpha = 0, in log form:
///   D2 log r_0(n-1) < ln(1 + 3pi/(4n^{5/2})), centers 2..4522 by default.
RangeReport corollary3_check(long from, long to, const OverpartitionTable& table,
                             const PrecisionContext& ctx, const RunOptions& opts = {});

/// Main-term bracket G1(n) < D2 (1/(n-1)) ln T(n-1) < G2(n) for n >= 2, with
/// per-record diagnostics g1''..g4'', U1, U2, L1, L2 and the proof-internal
/// assertions (U2 < 4/(n-1)^3 for n >= 2; L2 > 0 and L1 > -5 ln mu(n-1)/(n-1)^3
/// for n >= 9) folded into aux_pass.
RangeReport lemma2_check(long from, long to, const PrecisionContext& ctx,
                         const RunOptions& opts = {});

/// |D2 (1/(n-1)) E(n-1)| < 5/(n-1) e^{-mu(n-1)/12} for n >= 38, plus the
/// intermediates |e(n)| < e^{-mu(n)/12} (n >= 7) and |e(n)| < 1/5 (n >= 38).
RangeReport lemma3_check(long from, long to, const OverpartitionTable& table,
                         const PrecisionContext& ctx, const RunOptions& opts = {});

/// alpha-term bracket (alpha > 0, n >= 7); no table needed.
RangeReport lemma4_check(const mpq_class& alpha, long from, long to, const PrecisionContext& ctx,
                         const RunOptions& opts = {});

/// One-sided upper bound (any alpha >= 0, n >= 4021).
RangeReport lemma5_check(const mpq_class& alpha, long from, long to,
                         const OverpartitionTable& table, const PrecisionContext& ctx,
                         const RunOptions& opts = {});

/// One-sided lower bound (alpha > 0: n >= N(alpha); alpha = 0: n >= 4522).
RangeReport lemma6_check(const mpq_class& alpha, long from, long to,
                         const OverpartitionTable& table, const PrecisionContext& ctx,
                         const RunOptions& opts = {});

/// Exact big-integer log-concavity p(n)^2 >= p(n-1) p(n+1); no floating point
/// in the verdicts.
RangeReport engel_logconcavity_check(long from, long to, const OverpartitionTable& table,
                                     const RunOptions& opts = {});

/// Scaled second differences n^{5/2} D2 log r_alpha(n) at sample points, with
/// distance to the limit constant 3pi/4 and the theorem bracket for context.
struct AsymptoticRow {
    long n = 0;
    AuditedReal scaled;
    AuditedReal limit_distance;  // |scaled - 3pi/4|
    std::optional<AuditedReal> bracket_lower, bracket_upper;  // n^{5/2} x theorem bounds
    std::optional<bool> inside;
};

struct AsymptoticReport {
    mpq_class alpha;
    std::vector<AsymptoticRow> rows;
    PrecisionContext context;
    std::uint64_t table_checksum = 0;
    std::vector<std::string> notes;
};

AsymptoticReport asymptotic_table(const mpq_class& alpha, const std::vector<long>& points,
                                  const OverpartitionTable& table, const PrecisionContext& ctx,
                                  const RunOptions& opts = {});

}  // namespace opart
