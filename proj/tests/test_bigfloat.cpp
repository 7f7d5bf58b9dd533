#include <map>

#include "doctest.h"
#include "qhankel/bigfloat.hpp"
#include "qhankel/errors.hpp"
#include "qhankel/multipoly.hpp"

using namespace qhankel;

TEST_CASE("exact small rationals") {
    BigFloat x = BigFloat::from_rational(Rational(3, 4), 64);
    CHECK(x.err_is_zero());  // dyadic, representable exactly
    CHECK(x.contains(Rational(3, 4)));
    CHECK(x.certified_sign() == 1);
    BigFloat t = BigFloat::from_rational(Rational(1, 3), 64);
    CHECK(!t.err_is_zero());  // non-dyadic must carry rounding error
    CHECK(t.contains(Rational(1, 3)));
}

TEST_CASE("arithmetic enclosures contain the exact result") {
    const Rational a(1, 3), b(1, 7), c(2, 5);
    BigFloat x = BigFloat::from_rational(a, 96);
    BigFloat y = BigFloat::from_rational(b, 96);
    BigFloat z = BigFloat::from_rational(c, 96);
    CHECK((x + y).contains(a + b));
    CHECK((x - y).contains(a - b));
    CHECK((x * z).contains(a * c));
    CHECK((x / z).contains(a / c));
    CHECK(x.add_rational(b).contains(a + b));
    CHECK(x.mul_rational(c).contains(a * c));
    CHECK((x * y * z + x).contains(a * b * c + a));
}

TEST_CASE("division requires a certain sign") {
    BigFloat num = BigFloat::from_long(1, 64);
    BigFloat tiny = BigFloat::from_rational_with_err(Rational(1, 2000),
                                                     Rational(1, 1000), 64);
    // tiny's enclosure straddles zero
    CHECK(!tiny.sign_certain());
    CHECK_THROWS_AS(num / tiny, PrecisionError);
    CHECK_THROWS_AS(tiny.certified_sign(), PrecisionError);
}

TEST_CASE("signs, abs, comparisons") {
    BigFloat neg = BigFloat::from_rational(Rational(-5, 2), 64);
    CHECK(neg.certified_sign() == -1);
    CHECK(neg.abs().certified_sign() == 1);
    CHECK(BigFloat(64).certified_sign() == 0);  // exact zero
    BigFloat one = BigFloat::from_long(1, 64);
    BigFloat two = BigFloat::from_long(2, 64);
    CHECK(one.certified_less_than(two));
    CHECK(!two.certified_less_than(one));
    CHECK(two.certified_at_least(Rational(2)));
    CHECK(two.certified_at_most(Rational(2)));
    CHECK(!two.certified_at_least(Rational(201, 100)));
}

TEST_CASE("sqrt and log2") {
    BigFloat two = BigFloat::from_long(2, 128);
    BigFloat r = two.sqrt();
    CHECK((r * r).contains(Rational(2)));
    BigFloat eight = BigFloat::from_long(8, 128);
    CHECK(eight.log2().contains(Rational(3)));
    CHECK_THROWS_AS(BigFloat::from_long(-1, 64).log2(), PrecisionError);
}

TEST_CASE("pi against a classical bracket") {
    BigFloat p = BigFloat::pi(128);
    CHECK(p.certified_at_least(Rational(223, 71)));
    CHECK(p.certified_at_most(Rational(22, 7)));
    CHECK(BigFloat::pi(96).agrees_with(BigFloat::pi(192)));
}

TEST_CASE("error controls") {
    BigFloat x = BigFloat::from_rational(Rational(1, 3), 128);
    CHECK(x.err_at_most_pow2(-120));
    CHECK(!x.with_doubled_err().err_is_zero());
    CHECK(x.with_doubled_err().contains(Rational(1, 3)));
    CHECK(x.within(x.with_doubled_err()));
    BigFloat e = BigFloat::from_rational_with_err(Rational(1, 2),
                                                  Rational(1, 100), 64);
    CHECK(e.contains(Rational(1, 2)));
    CHECK(e.contains(Rational(51, 100)));
    CHECK(!e.contains(Rational(3, 4)));
    CHECK(e.err_at_most(Rational(1, 50)));
}

TEST_CASE("polynomial ball evaluation matches exact evaluation") {
    const MultiPoly Q = MultiPoly::variable(Var::q);
    const MultiPoly M = MultiPoly::variable(Var::mu);
    MultiPoly p = Q * Q * M - Q.scaled(Rational(7, 3)) +
                  MultiPoly::constant(Rational(1, 9)) +
                  MultiPoly::variable(Var::q, -2);
    std::map<Var, BigFloat> at;
    at.emplace(Var::q, BigFloat::from_rational(Rational(5, 3), 128));
    at.emplace(Var::mu, BigFloat::from_rational(Rational(-2, 7), 128));
    std::array<std::optional<Rational>, kVarCount> ex{};
    ex[static_cast<int>(Var::q)] = Rational(5, 3);
    ex[static_cast<int>(Var::mu)] = Rational(-2, 7);
    CHECK(eval_ball(p, at, 128).contains(p.evaluated(ex)));
}
