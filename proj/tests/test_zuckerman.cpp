#include <doctest.h>

#include <numeric>

#include "helpers.hpp"
#include "opart/zuckerman.hpp"

using namespace opart;
using opart_test::close_to;
using opart_test::rel_close;

namespace {

// The defining sum evaluated directly for any h >= 0 (no range reduction),
// as an independent reference for the reduced implementation.
mpq_class omega_r_reference(long h, long k) {
    mpq_class s = 0;
    for (long j = 1; j < k; ++j) {
        mpz_class hj = mpz_class(h) * j;
        mpz_class fl = hj / k;  // h, j >= 0 so truncation == floor
        s += mpq_class(j, k) * (mpq_class(hj, k) - fl - mpq_class(1, 2));
    }
    mpz_class twice_den = 2 * s.get_den();
    mpz_class m = s.get_num() % twice_den;
    if (m < 0) m += twice_den;
    mpq_class out(m, s.get_den());
    out.canonicalize();
    return out;
}

}  // namespace

TEST_CASE("omega exponent anchors") {
    CHECK(omega_exponent(0, 1).r == 0);
    CHECK(omega_exponent(1, 3).r == mpq_class(1, 18));
    CHECK(omega_exponent(2, 3).r == mpq_class(35, 18));
    CHECK(omega_exponent(1, 5).r == mpq_class(1, 5));
    CHECK(omega_exponent(2, 5).r == 0);
    CHECK(omega_exponent(4, 5).r == mpq_class(9, 5));
    CHECK(omega_exponent(1, 7).r == mpq_class(5, 14));
    CHECK(omega_exponent(2, 9).r == mpq_class(4, 27));
    CHECK(omega_exponent(5, 11).r == mpq_class(39, 22));
}

TEST_CASE("omega exponent rejects bad arguments") {
    CHECK_THROWS_AS(omega_exponent(1, 4), std::invalid_argument);   // even k
    CHECK_THROWS_AS(omega_exponent(3, 3), std::invalid_argument);   // h out of range
    CHECK_THROWS_AS(omega_exponent(-1, 3), std::invalid_argument);
    CHECK_THROWS_AS(omega_exponent(3, 9), std::invalid_argument);   // gcd != 1
    CHECK_THROWS_AS(omega_exponent(0, 3), std::invalid_argument);   // h=0 only with k=1
}

TEST_CASE("omega exponent properties at small k") {
    for (long k = 1; k <= 25; k += 2) {
        for (long h = (k == 1 ? 0 : 1); h < k; ++h) {
            if (k > 1 && std::gcd(h, k) != 1) continue;
            mpq_class r = omega_exponent(h, k).r;
            CHECK(r >= 0);
            CHECK(r < 2);
            // denominator divides 2k^2 (hence the conservative 6k^2)
            CHECK(mpz_class(2 * k * k) % r.get_den() == 0);
            // matches the defining sum, and is invariant under h -> h + k
            CHECK(r == omega_r_reference(h, k));
            CHECK(r == omega_r_reference(h + k, k));
        }
    }
}

TEST_CASE("kernel derivative matches a finite difference") {
    // central difference of g(x) = sinh(pi sqrt(x)/k)/sqrt(x) at step 1e-30,
    // 120-digit working precision; agreement demanded to 1e-50 relative
    mpfr_prec_t prec = bits_for_digits(120);
    auto g = [&](const Real& x, long k) {
        Real sq = sqrt(x);
        return sinh(const_pi(prec) * sq / k) / sq;
    };
    for (auto [n, k] : {std::pair<long, long>{10, 1}, {10, 3}, {100, 5}}) {
        Real h = Real::pow10(-30, prec);
        Real x = Real::of_long(n, prec);
        Real fd = (g(x + h, k) - g(x - h, k)) / (2 * h);
        CHECK(rel_close(kernel_derivative(n, k, prec), fd, 50));
    }
}

TEST_CASE("k=1 term is the single h=0 contribution") {
    PrecisionContext ctx{120, 20};
    AuditedReal term = zuckerman_term(3, 1, ctx);
    mpfr_prec_t prec = ctx.working_bits();
    Real expected = kernel_derivative(3, 1, prec) / (2 * const_pi(prec));
    CHECK(rel_close(term.value, expected, ctx.digits - 5));
}

TEST_CASE("k=1 structural identity with the main-term split") {
    // term(n,1) = T(n) + (1/8n)(1 + 1/mu) e^{-mu}, exactly, for every n
    PrecisionContext ctx{120, 20};
    mpfr_prec_t prec = ctx.working_bits();
    for (long n = 1; n <= 500; ++n) {
        Real m = mu(n, prec);
        Real rhs = main_term(n, prec) +
                   (1 + Real::of_long(1, prec) / m) * exp(-m) / Real::of_long(8 * n, prec);
        CHECK(rel_close(zuckerman_term(n, 1, ctx).value, rhs, 100));
    }
}

TEST_CASE("assembled terms are real for k > 1") {
    PrecisionContext ctx{80, 20};
    for (long k : {3L, 5L, 7L, 9L, 11L, 13L, 15L}) {
        for (long n = 1; n <= 30; ++n) {
            CHECK_NOTHROW(zuckerman_term(n, k, ctx));
        }
    }
}

TEST_CASE("certified estimates: frozen anchors") {
    PrecisionContext ctx{120, 20};

    CertifiedEstimate e33 = zuckerman_estimate(3, 3, ctx);
    CHECK(close_to(e33.value.value, "7.9735663404204517777133503189510536872370740605723", 40));
    CHECK(close_to(e33.error_radius.value, "2.8507867806757937036939173078393375290487427630605", 40));
    CHECK(abs(e33.value.value - 8) < e33.error_radius.value);

    CertifiedEstimate e11 = zuckerman_estimate(1, 1, ctx);
    CHECK(close_to(e11.value.value, "1.97896884128663572676401364013", 28));
    CHECK(abs(e11.value.value - 2) < e11.error_radius.value);

    CertifiedEstimate e100 = zuckerman_estimate(100, 11, ctx);
    CHECK(abs(e100.value.value - Real::of_mpz(mpz_class("53287424374"), ctx.working_bits())) <
          e100.error_radius.value);
}

TEST_CASE("certified containment across n and truncation choices") {
    PrecisionContext ctx{120, 20};
    const OverpartitionTable& t = opart_test::table600();
    Real half = Real::of_long(1, 64) / 2;
    for (long n = 1; n <= 200; ++n) {
        long r = 1;
        while (r * r < n) ++r;
        long odd_sqrt = (r % 2 == 1) ? r : r + 1;
        for (long terms : {1L, 3L, odd_sqrt}) {
            CertifiedEstimate est = zuckerman_estimate(n, terms, ctx);
            Real pn = Real::of_mpz(t.at(n), ctx.working_bits());
            CHECK(abs(est.value.value - pn) < est.error_radius.value);
            if (est.error_radius.value < half) {
                mpz_class rounded;
                mpfr_get_z(rounded.get_mpz_t(), est.value.value.raw(), MPFR_RNDN);
                CHECK(rounded == t.at(n));
            }
        }
    }
}

TEST_CASE("certified recovery when the radius drops below 1/2") {
    PrecisionContext ctx{120, 20};
    OverpartitionTable t = sparse_table(3000);
    CertifiedEstimate est = zuckerman_estimate(3000, 55, ctx);
    Real half = Real::of_long(1, ctx.bits()) / 2;
    REQUIRE(est.error_radius.value < half);
    mpz_class rounded;
    mpfr_get_z(rounded.get_mpz_t(), est.value.value.raw(), MPFR_RNDN);
    CHECK(rounded == t.at(3000));
    CHECK(rounded == mpz_class("22244778146822050439977821626778207116259703660204722853496310111431520"));
}

TEST_CASE("decomposition at n=1") {
    PrecisionContext ctx{120, 20};
    const OverpartitionTable& t = opart_test::table600();
    Decomposition d = decompose(1, t, ctx);
    CHECK(close_to(d.main_term.value, "1.971847674328152073315569506191703109804474599301", 45));
    CHECK(close_to(d.rel_residual.value, "0.014277130043242304151605843151", 28));
    CHECK(close_to(d.log_ratio.value, "0.014176171618493755531667092683", 28));
    // residual recovers p(1) - T(1)
    Real back = d.main_term.value + d.residual.value;
    CHECK(rel_close(back, Real::of_long(2, ctx.bits()), ctx.digits - 5));
}

TEST_CASE("decomposition rejects n=0 and short tables") {
    PrecisionContext ctx{60, 20};
    const OverpartitionTable& t = opart_test::table600();
    CHECK_THROWS_AS(decompose(0, t, ctx), DomainError);
    OverpartitionTable tiny = series_table(3);
    CHECK_THROWS_AS(decompose(10, tiny, ctx), std::out_of_range);
}

TEST_CASE("relative residual obeys the proof bounds at desk scale") {
    PrecisionContext ctx{120, 20};
    const OverpartitionTable& t = opart_test::table600();
    mpfr_prec_t prec = ctx.bits();
    Real fifth = Real::of_long(1, prec) / 5;
    for (long n = 7; n <= 600; ++n) {
        Real e = rel_residual_raw(n, t, ctx.digits);
        CHECK(abs(e) < exp(-(mu(n, prec) / 12)));
        if (n >= 38) CHECK(abs(e) < fifth);
    }
}

TEST_CASE("standalone tail bound diagnostic") {
    PrecisionContext ctx{120, 20};
    CHECK(close_to(engel_tail_bound(1, ctx).value, "7.06993443700574695479771494613924256385139", 40));
    CHECK(close_to(engel_tail_bound(10, ctx).value, "2.15180158485340502284874529898812069082938", 40));
}
