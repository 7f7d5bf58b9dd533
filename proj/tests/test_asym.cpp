#include "doctest.h"
#include "qhankel/asym.hpp"
#include "qhankel/errors.hpp"

using namespace qhankel;

namespace {
// |ball - pi^2 / k| small, certified
bool matches_pi_square_over(const BigFloat& x, unsigned long k,
                            mpfr_prec_t prec) {
    BigFloat p = BigFloat::pi(prec);
    BigFloat want = (p * p).mul_rational(Rational(1, static_cast<long>(k)));
    return x.agrees_with(want);
}

Rational frac(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}
}  // namespace

TEST_CASE("inverse square sums against classical values") {
    // sum 1/m^2 = pi^2/6
    CHECK(matches_pi_square_over(inverse_square_sum(Rational(1), Rational(0), 128),
                                 6, 160));
    // sum 1/(2m-1)^2 = pi^2/8
    CHECK(matches_pi_square_over(inverse_square_sum(Rational(2), Rational(1), 128),
                                 8, 160));
    // sum 1/(3m)^2 = pi^2/54
    CHECK(matches_pi_square_over(inverse_square_sum(Rational(3), Rational(0), 128),
                                 54, 160));
    // residue split of pi^2/6: full = classes c=0,1,2 of a=3
    BigFloat s0 = inverse_square_sum(Rational(3), Rational(0), 128);
    BigFloat s1 = inverse_square_sum(Rational(3), Rational(1), 128);
    BigFloat s2 = inverse_square_sum(Rational(3), Rational(2), 128);
    CHECK(matches_pi_square_over(s0 + s1 + s2, 6, 160));
    CHECK_THROWS_AS(inverse_square_sum(Rational(0), Rational(0), 64),
                    UsageError);
    CHECK_THROWS_AS(inverse_square_sum(Rational(2), Rational(2), 64),
                    UsageError);
}

TEST_CASE("precision scales") {
    BigFloat lo = inverse_square_sum(Rational(3), Rational(1), 64);
    BigFloat hi = inverse_square_sum(Rational(3), Rational(1), 512);
    CHECK(lo.agrees_with(hi));
    CHECK(hi.err_at_most_pow2(-480));
}

TEST_CASE("dilogarithm constant") {
    BigFloat c = clausen_constant(128);
    // 16-digit reference value, checked to 1e-12
    const Rational ref = frac(6766277376064357L, 10000000000000000L);
    CHECK(c.add_rational(-ref).abs().certified_at_most(
        frac(1, 1000000000000L)));
    // nested enclosures at increasing precision
    BigFloat c64 = clausen_constant(64);
    BigFloat c128 = clausen_constant(128);
    BigFloat c256 = clausen_constant(256);
    CHECK(c128.within(c64));
    CHECK(c256.within(c128));
}

TEST_CASE("growth constants") {
    ABC z = constants_ABC(true, 128);
    ABC g = constants_ABC(false, 128);
    CHECK(z.A.contains(Rational(1, 2)));
    CHECK(g.A.contains(Rational(1, 3)));
    CHECK(z.C.contains(Rational(2, 3)));
    CHECK(g.C.contains(Rational(2, 3)));
    // B = rational - clausen/(pi^2 sqrt 3): check against components
    BigFloat corr = clausen_constant(160) /
                    (BigFloat::pi(160) * BigFloat::pi(160) *
                     BigFloat::sqrt_ui(3, 160));
    CHECK(z.B.agrees_with(BigFloat::from_rational(Rational(65, 216), 160) - corr));
    CHECK(g.B.agrees_with(BigFloat::from_rational(Rational(7, 27), 160) - corr));
    // 7/27 = 5/54 + 1/6 exactly, so the two published forms of B coincide
    CHECK(Rational(7, 27) == Rational(5, 54) + Rational(1, 6));
}

TEST_CASE("irrationality thresholds to eight decimals") {
    struct Row {
        int d;
        bool lz;
        Rational ref;
    };
    const Row rows[] = {
        {2, true, frac(327694460, 100000000)},
        {2, false, frac(943194241, 100000000)},
        {1, true, frac(153237645, 100000000)},
        {1, false, frac(180828115, 100000000)},
    };
    for (const Row& r : rows) {
        BigFloat g = threshold(r.d, r.lz, 128);
        BigFloat c = threshold_closed_form(r.d, r.lz, 128);
        CHECK(g.add_rational(-r.ref).abs().certified_at_most(
            Rational(1, 100000000)));
        CHECK(c.add_rational(-r.ref).abs().certified_at_most(
            Rational(1, 100000000)));
        CHECK(g.agrees_with(c));
    }
    CHECK_THROWS_AS(threshold(3, true, 128), UsageError);
    CHECK_THROWS_AS(threshold(3, false, 128), UsageError);
    CHECK_THROWS_AS(threshold_closed_form(3, true, 128), UsageError);
}

TEST_CASE("weighted exponent sum") {
    CHECK(weighted_exponent_sum(3).sum == 1);
    // chunking cannot change the exact integer
    WeightedExponentSum a = weighted_exponent_sum(500);
    CHECK(weighted_exponent_sum(500, 7).sum == a.sum);
    CHECK(weighted_exponent_sum(500, 64).sum == a.sum);
    CHECK(weighted_exponent_sum(500, 499).sum == a.sum);
    CHECK(a.ratio == Rational(a.sum) / Rational(125000000));
    CHECK_THROWS_AS(weighted_exponent_sum(2), UsageError);
}

TEST_CASE("floor-sum partial against its prediction") {
    SumelPartial s = sumel_partial(Rational(3), Rational(0), 3);
    CHECK(s.sum == 1);
    // ratio sanity at a moderate size: within 25% of the cubic prediction
    SumelPartial m = sumel_partial(Rational(3), Rational(1), 300);
    CHECK(m.ratio.certified_at_least(Rational(3, 4)));
    CHECK(m.ratio.certified_at_most(Rational(5, 4)));
    CHECK_THROWS_AS(sumel_partial(Rational(3), Rational(4), 10), UsageError);
}

TEST_CASE("decay experiment at a small size") {
    DecayReport r = decay_experiment(Rational(2), Rational(1), Rational(0), 8);
    CHECK(r.lambda_is_zero);
    CHECK(r.positivity_applies);
    REQUIRE(r.rows.size() == 7);  // n = 2..8
    for (const DecayRow& row : r.rows) {
        CHECK(row.sign == 1);
        CHECK(row.ratio.err_at_most(Rational(1, 2)));
    }
    CHECK(r.rows.front().n == 2);
    CHECK(r.rows.back().n == 8);
    CHECK_THROWS_AS(
        decay_experiment(Rational(1), Rational(1), Rational(0), 6),
        UsageError);
    CHECK_THROWS_AS(
        decay_experiment(Rational(2), Rational(0), Rational(0), 6),
        UsageError);
    CHECK_THROWS_AS(
        decay_experiment(Rational(2), Rational(1), Rational(0), 30),
        UsageError);  // above the default cap
}
