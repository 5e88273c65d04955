#include <doctest.h>

#include "helpers.hpp"
#include "opart/verify.hpp"
#include "opart/zuckerman.hpp"

using namespace opart;
using opart_test::close_to;
using opart_test::rel_close;

namespace {

const RunOptions kSerial{1, false};
const RunOptions kSerialExp{1, true};

bool margins_agree(const RangeReport& a, const RangeReport& b, long digits) {
    REQUIRE(a.records.size() == b.records.size());
    for (size_t i = 0; i < a.records.size(); ++i) {
        const CheckRecord& ra = a.records[i];
        const CheckRecord& rb = b.records[i];
        if (ra.pass_lower != rb.pass_lower || ra.pass_upper != rb.pass_upper ||
            ra.aux_pass != rb.aux_pass || ra.indeterminate != rb.indeterminate)
            return false;
        if (!rel_close(ra.margin.value, rb.margin.value, digits)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("delta2 basics") {
    mpfr_prec_t prec = bits_for_digits(60);
    Real c = Real::of_str("2.71828", prec);
    CHECK(delta2(c, c, c).is_zero());

    // exact second difference of a quadratic is 2
    Real a = Real::of_long(9, prec), b = Real::of_long(16, prec), d = Real::of_long(25, prec);
    CHECK(delta2(a, b, d) == 2);

    // log p at n=3: ln 4, ln 8, ln 14 -> ln(14*4/64) = ln(7/8) < 0
    Real l4 = log(Real::of_long(4, prec));
    Real l8 = log(Real::of_long(8, prec));
    Real l14 = log(Real::of_long(14, prec));
    Real v = delta2(l4, l8, l14);
    CHECK(v < 0);
    CHECK(close_to(v, "-0.133531392624522623146343620931", 28));
}

TEST_CASE("delta2 on audited values requires one context") {
    PrecisionContext ctx{60, 20};
    AuditedReal x{Real::of_long(1, ctx.bits()), ctx};
    AuditedReal y{Real::of_long(1, ctx.bits()), PrecisionContext{70, 20}};
    CHECK_THROWS_AS(delta2(x, x, y), std::invalid_argument);
    CHECK(delta2(x, x, x).value.is_zero());
}

TEST_CASE("log_r anchors") {
    PrecisionContext ctx{120, 20};
    const OverpartitionTable& t = opart_test::table600();
    Real ln2 = log(Real::of_long(2, ctx.working_bits()));

    CHECK(rel_close(log_r(1, 0, t, ctx).value, ln2, 110));
    CHECK(rel_close(log_r(1, 7, t, ctx).value, ln2, 110));  // alpha term vanishes at n=1

    // n=3, alpha=1: ln(8/3)/3
    Real expected = log(Real::of_long(8, ctx.working_bits()) / 3) / 3;
    CHECK(rel_close(log_r(3, 1, t, ctx).value, expected, 110));

    CHECK_THROWS_AS(log_r(0, 0, t, ctx), DomainError);
}

TEST_CASE("delta2_log_r anchors and conventions") {
    PrecisionContext ctx{120, 20};
    const OverpartitionTable& t = opart_test::table600();

    CHECK(delta2_log_r(5, 0, t, ctx).value > 0);
    CHECK(close_to(delta2_log_r(3, 0, t, ctx).value,
                   "-0.0333828481561306557865859052328374936473539", 40));

    // definition replay: center convention
    AuditedReal direct = delta2(log_r(2, 0, t, ctx), log_r(3, 0, t, ctx), log_r(4, 0, t, ctx));
    CHECK(rel_close(delta2_log_r(3, 0, t, ctx).value, direct.value, 100));

    // p(1), p(2), p(3) = 2, 4, 8 are geometric: the true value is exactly 0,
    // and the scale-aware audit must not misread the cancellation dust
    Real at2 = delta2_log_r(2, 0, t, ctx).value;
    CHECK(abs(at2) < Real::pow10(-100, ctx.bits()));

    CHECK_THROWS_AS(delta2_log_r(1, 0, t, ctx), DomainError);
}

TEST_CASE("N(alpha) thresholds") {
    CHECK(n_alpha(0) == 4522);
    CHECK(n_alpha(1) == 5505);
    CHECK(n_alpha(2) == 6311);
    CHECK(n_alpha(mpq_class(1, 2)) == 6982);
    CHECK(n_alpha(3490) == 3016003943246559L);

    NAlphaParts p1 = n_alpha_parts(1);
    CHECK(p1.floor_term == 3492);
    CHECK(p1.n3 == 2127);
    CHECK(p1.n1 == 4522);

    NAlphaParts p2 = n_alpha_parts(2);
    CHECK(p2.floor_term == 1747);
    CHECK(p2.n3 == 6311);

    CHECK_THROWS_AS(n_alpha(-1), std::invalid_argument);
}

TEST_CASE("theorem1 windows at the validity thresholds") {
    PrecisionContext ctx{120, 20};
    OverpartitionTable t = sparse_table(5521);

    RangeReport r0 = theorem1_check(0, 4522, 4530, t, ctx, kSerial);
    CHECK(r0.all_pass);
    CHECK(!r0.first_failure);
    for (const auto& rec : r0.records) {
        CHECK(rec.pass());
        CHECK(rec.lower);
        CHECK(rec.upper);
        CHECK(rec.margin.value > Real::pow10(-60, 64));
        // lower bound argument exceeds 1: the bound itself is positive
        CHECK(rec.lower->value > 0);
    }

    RangeReport r1 = theorem1_check(1, 5505, 5515, t, ctx, kSerial);
    CHECK(r1.all_pass);
}

TEST_CASE("theorem1 threshold is enforced unless exploratory") {
    PrecisionContext ctx{120, 20};
    OverpartitionTable t = sparse_table(200);
    CHECK_THROWS_AS(theorem1_check(0, 100, 120, t, ctx, kSerial), std::invalid_argument);
    RangeReport r = theorem1_check(0, 100, 120, t, ctx, kSerialExp);
    REQUIRE(!r.notes.empty());
    CHECK(r.notes.front().find("no claim") != std::string::npos);
}

TEST_CASE("theorem1 rejects empty ranges and short tables") {
    PrecisionContext ctx{120, 20};
    OverpartitionTable t = sparse_table(100);
    CHECK_THROWS_AS(theorem1_check(0, 4522, 4521, t, ctx, kSerial), std::invalid_argument);
    CHECK_THROWS_AS(theorem1_check(0, 4522, 4600, t, ctx, kSerial), std::invalid_argument);
}

TEST_CASE("corollary1 at its threshold") {
    PrecisionContext ctx{120, 20};
    OverpartitionTable t = sparse_table(4533);
    RangeReport r = corollary1_check(0, 4522, 4532, t, ctx, kSerial);
    CHECK(r.all_pass);
}

TEST_CASE("corollary2 windows (unit-scale prefix)") {
    PrecisionContext ctx{120, 20};
    const OverpartitionTable& t = opart_test::table600();

    // r1 regime starts at 19 and genuinely fails just below
    RangeReport head = corollary1_check(1, 19, 120, t, ctx, {1, true});
    CHECK(head.all_pass);
    RangeReport below = corollary1_check(1, 18, 18, t, ctx, {1, true});
    CHECK(!below.all_pass);
    CHECK(below.first_failure == 18);
    CHECK(!below.records.front().pass_lower);

    // r0 regime starts at 4; center 3 fails
    RangeReport r0 = corollary1_check(0, 4, 120, t, ctx, {1, true});
    CHECK(r0.all_pass);
    RangeReport r0_below = corollary1_check(0, 3, 3, t, ctx, {1, true});
    CHECK(!r0_below.all_pass);
}

TEST_CASE("corollary3 holds from n=2, including the geometric center") {
    PrecisionContext ctx{120, 20};
    const OverpartitionTable& t = opart_test::table600();
    RangeReport r = corollary3_check(2, 120, t, ctx, kSerial);
    CHECK(r.all_pass);
    // at n=2 the middle is (numerically) zero and the upper bound is ~0.348
    const CheckRecord& first = r.records.front();
    CHECK(first.n == 2);
    CHECK(abs(first.middle.value) < Real::pow10(-100, 64));
    CHECK(close_to(first.upper->value, "0.348203353953975425596740890844177731483", 35));
}

TEST_CASE("lemma2 bracket and diagnostics") {
    PrecisionContext ctx{120, 20};
    RangeReport r = lemma2_check(2, 120, ctx, kSerial);
    CHECK(r.all_pass);

    // the small-n window that matters most for the bracket
    RangeReport hand = lemma2_check(2, 14, ctx, kSerial);
    CHECK(hand.all_pass);

    // diagnostic anchor: g1''(4) = 3 pi / 128
    const CheckRecord* at4 = nullptr;
    for (const auto& rec : r.records)
        if (rec.n == 4) at4 = &rec;
    REQUIRE(at4);
    REQUIRE(!at4->diagnostics.empty());
    CHECK(at4->diagnostics[0].first == "g1pp");
    const Real& g1 = at4->diagnostics[0].second.value;
    CHECK(close_to(g1, "0.0736310778185107790264682042956133488484", 38));
    CHECK(rel_close(g1, 3 * const_pi(ctx.bits()) / 128, 110));

    // bracket nonempty wherever tested
    for (const auto& rec : r.records) CHECK(rec.lower->value < rec.upper->value);

    CHECK_THROWS_AS(lemma2_check(1, 10, ctx, kSerial), std::invalid_argument);
}

TEST_CASE("lemma3 bound and intermediates") {
    PrecisionContext ctx{120, 20};
    const OverpartitionTable& t = opart_test::table600();
    RangeReport r = lemma3_check(38, 150, t, ctx, kSerial);
    CHECK(r.all_pass);

    const CheckRecord* at100 = nullptr;
    for (const auto& rec : r.records)
        if (rec.n == 100) at100 = &rec;
    REQUIRE(at100);
    // bound = (5/99) e^{-mu(99)/12}
    CHECK(close_to(at100->upper->value, "0.0037329631268236602118480576601776640537", 38));
    CHECK(at100->lower->value == -at100->upper->value);

    CHECK_THROWS_AS(lemma3_check(10, 50, t, ctx, kSerial), std::invalid_argument);
    RangeReport low = lemma3_check(8, 50, t, ctx, kSerialExp);
    CHECK(low.all_pass);  // the delta2 bound is only claimed from 38, but holds here too
}

TEST_CASE("lemma4 bracket and alpha homogeneity") {
    PrecisionContext ctx{120, 20};
    for (const mpq_class& alpha : {mpq_class(1, 2), mpq_class(1), mpq_class(2)}) {
        RangeReport r = lemma4_check(alpha, 7, 100, ctx, kSerial);
        CHECK(r.all_pass);
    }
    CHECK_THROWS_AS(lemma4_check(0, 7, 100, ctx, kSerial), std::invalid_argument);

    // all three expressions scale linearly in alpha: verdicts and values match x2
    RangeReport one = lemma4_check(1, 7, 40, ctx, kSerial);
    RangeReport two = lemma4_check(2, 7, 40, ctx, kSerial);
    REQUIRE(one.records.size() == two.records.size());
    for (size_t i = 0; i < one.records.size(); ++i) {
        CHECK(one.records[i].pass() == two.records[i].pass());
        CHECK(two.records[i].middle.value == 2 * one.records[i].middle.value);
        CHECK(two.records[i].lower->value == 2 * one.records[i].lower->value);
        CHECK(two.records[i].upper->value == 2 * one.records[i].upper->value);
    }
}

TEST_CASE("lemma5 and lemma6 one-sided checks") {
    PrecisionContext ctx{120, 20};
    OverpartitionTable t = sparse_table(5521);

    RangeReport l5 = lemma5_check(0, 4021, 4040, t, ctx, kSerial);
    CHECK(l5.all_pass);
    for (const auto& rec : l5.records) {
        CHECK(rec.upper);
        CHECK(!rec.lower);
    }
    CHECK_THROWS_AS(lemma5_check(0, 4000, 4020, t, ctx, kSerial), std::invalid_argument);

    RangeReport l6 = lemma6_check(1, 5505, 5520, t, ctx, kSerial);
    CHECK(l6.all_pass);
    for (const auto& rec : l6.records) {
        CHECK(rec.lower);
        CHECK(!rec.upper);
    }
    CHECK_THROWS_AS(lemma6_check(1, 5000, 5100, t, ctx, kSerial), std::invalid_argument);
    CHECK_THROWS_AS(lemma6_check(0, 4500, 4600, t, ctx, kSerial), std::invalid_argument);
}

TEST_CASE("lemma6 at the alpha=2 threshold") {
    PrecisionContext ctx{120, 20};
    OverpartitionTable t = sparse_table(6341);
    RangeReport r = lemma6_check(2, 6311, 6340, t, ctx, kSerial);
    CHECK(r.all_pass);
    // just above the quartic crossover the lower bound is barely positive
    CHECK(r.records.front().lower->value > 0);
}

TEST_CASE("bracket consistency: theorem1 agrees with lemma5+lemma6") {
    PrecisionContext ctx{120, 20};
    OverpartitionTable t = sparse_table(4534);
    RangeReport thm = theorem1_check(0, 4522, 4532, t, ctx, kSerial);
    RangeReport l5 = lemma5_check(0, 4522, 4532, t, ctx, kSerial);
    RangeReport l6 = lemma6_check(0, 4522, 4532, t, ctx, kSerial);
    REQUIRE(thm.records.size() == l5.records.size());
    REQUIRE(thm.records.size() == l6.records.size());
    for (size_t i = 0; i < thm.records.size(); ++i) {
        CHECK(thm.records[i].pass_upper == l5.records[i].pass_upper);
        CHECK(thm.records[i].pass_lower == l6.records[i].pass_lower);
        CHECK(thm.records[i].middle.value == l5.records[i].middle.value);
        CHECK(thm.records[i].middle.value == l6.records[i].middle.value);
    }
}

TEST_CASE("exact log-concavity check") {
    const OverpartitionTable& t = opart_test::table600();
    RangeReport r = engel_logconcavity_check(2, 300, t);
    CHECK(r.all_pass);

    // n=1 and n=2 are equality cases (1,2,4,8 is geometric): the non-strict
    // check passes with margin exactly zero; a strict reading would fail
    RangeReport edge = engel_logconcavity_check(1, 2, t);
    CHECK(edge.all_pass);
    for (const auto& rec : edge.records) {
        CHECK(rec.margin.value.is_zero());
        CHECK(rec.pass_lower);
    }
    // n=3: 64 >= 4*14 = 56 with margin 8
    RangeReport n3 = engel_logconcavity_check(3, 3, t);
    CHECK(n3.records.front().margin.value == 8);
}

TEST_CASE("asymptotic sample rows") {
    PrecisionContext ctx{120, 20};
    OverpartitionTable t = sparse_table(1001);
    AsymptoticReport rep = asymptotic_table(0, {100, 400, 1000}, t, ctx, kSerial);
    REQUIRE(rep.rows.size() == 3);
    Real prev_dist;
    bool first = true;
    for (const auto& row : rep.rows) {
        REQUIRE(row.inside.has_value());
        CHECK(*row.inside);
        CHECK(row.bracket_lower->value < row.scaled.value);
        CHECK(row.scaled.value < row.bracket_upper->value);
        if (!first) CHECK(row.limit_distance.value < prev_dist);
        prev_dist = row.limit_distance.value;
        first = false;
    }
    CHECK(close_to(rep.rows.back().scaled.value, "1.88146049587", 10));
    CHECK_THROWS_AS(asymptotic_table(0, {1}, t, ctx, kSerial), std::invalid_argument);
}

TEST_CASE("a genuinely undecidable strict inequality escalates, then reports indeterminate") {
    // p(1..3) = 2,4,8 is geometric, so D2 log r_0 at center 2 is exactly 0;
    // deciding "> 0" strictly is impossible at any precision and must end in
    // an indeterminate record after the full escalation ladder, never a
    // silent pass or fail
    PrecisionContext ctx{60, 20};
    const OverpartitionTable& t = opart_test::table600();
    RangeReport r = corollary1_check(0, 2, 2, t, ctx, {1, true});
    REQUIRE(r.records.size() == 1);
    const CheckRecord& rec = r.records.front();
    CHECK(rec.indeterminate);
    CHECK(rec.escalations == 4);
    CHECK(!r.all_pass);
    CHECK(r.any_indeterminate());
}

TEST_CASE("verdicts are stable under digit doubling (unit-scale)") {
    OverpartitionTable t = sparse_table(4531);
    RangeReport lo = theorem1_check(0, 4522, 4530, t, PrecisionContext{120, 20}, kSerial);
    RangeReport hi = theorem1_check(0, 4522, 4530, t, PrecisionContext{240, 20}, kSerial);
    CHECK(lo.all_pass == hi.all_pass);
    CHECK(margins_agree(lo, hi, 30));
}

TEST_CASE("parallel and serial runs produce identical records") {
    PrecisionContext ctx{120, 20};
    const OverpartitionTable& t = opart_test::table600();
    RangeReport serial = corollary3_check(2, 90, t, ctx, RunOptions{1, false});
    RangeReport parallel = corollary3_check(2, 90, t, ctx, RunOptions{4, false});
    REQUIRE(serial.records.size() == parallel.records.size());
    for (size_t i = 0; i < serial.records.size(); ++i) {
        CHECK(serial.records[i].middle.value == parallel.records[i].middle.value);
        CHECK(serial.records[i].margin.value == parallel.records[i].margin.value);
    }
}
