#include <map>

#include "doctest.h"
#include "qhankel/bigfloat.hpp"
#include "qhankel/errors.hpp"
#include "qhankel/qseq.hpp"
#include "qhankel/series.hpp"

using namespace qhankel;

TEST_CASE("scaled power-of-q detection") {
    CHECK(is_scaled_q_power(Rational(2), Rational(1), Rational(4)));
    CHECK(is_scaled_q_power(Rational(2), Rational(1), Rational(2)));
    CHECK(!is_scaled_q_power(Rational(2), Rational(1), Rational(1)));
    CHECK(!is_scaled_q_power(Rational(2), Rational(1), Rational(3)));
    CHECK(is_scaled_q_power(Rational(2), Rational(-1, 2), Rational(-1)));
    CHECK(is_scaled_q_power(Rational(3, 2), Rational(4), Rational(9)));
    CHECK(!is_scaled_q_power(Rational(-2), Rational(1), Rational(2)));
    CHECK(is_scaled_q_power(Rational(-2), Rational(1), Rational(4)));
}

TEST_CASE("sequence preconditions") {
    CHECK_THROWS_AS(NumericSeq(Rational(1), Rational(1), Rational(0), 64),
                    UsageError);
    CHECK_THROWS_AS(NumericSeq(Rational(1, 2), Rational(1), Rational(0), 64),
                    UsageError);
    CHECK_THROWS_AS(NumericSeq(Rational(2), Rational(1), Rational(4), 64),
                    UsageError);
    CHECK_THROWS_AS(NumericSeq(Rational(2), Rational(1), Rational(0), 16),
                    UsageError);
}

TEST_CASE("numeric tails obey the recurrence") {
    const Rational q(2), alpha(3, 2), lambda(1, 3);
    NumericSeq ns(q, alpha, lambda, 192);
    for (unsigned n = 1; n <= 12; ++n) {
        BigFloat rhs = ns.v(n - 1)
                           .mul_rational(pow_rational(q, n) - lambda)
                           .add_rational(-pow_rational(alpha, n));
        CHECK(rhs.agrees_with(ns.v(n)));
    }
    CHECK(ns.v(0).agrees_with(ns.mu().add_rational(Rational(-1))));
    CHECK(ns.v(0).err_at_most_pow2(-160));
}

TEST_CASE("series satisfies its q-difference equation") {
    const Rational q(3), lambda(1, 2), z(3, 7);
    BigFloat lhs = F_eval(q, lambda, q * z, 160);
    BigFloat rhs = F_eval(q, lambda, z, 160)
                       .mul_rational(z + lambda)
                       .add_rational(Rational(1) - lambda);
    CHECK(lhs.agrees_with(rhs));
    // and with lambda = 0 as well
    BigFloat l0 = F_eval(Rational(2), Rational(0), Rational(2) * z, 160);
    BigFloat r0 = F_eval(Rational(2), Rational(0), z, 160)
                      .mul_rational(z)
                      .add_rational(Rational(1));
    CHECK(l0.agrees_with(r0));
}

TEST_CASE("mu is bracketed by the first partial sums") {
    // mu = sum_n alpha^n / prod_{k<=n} (q^k - lambda), all terms positive for
    // q = 2, alpha = 1, lambda = 1/2, so partial sums increase toward mu
    const Rational q(2), alpha(1), lambda(1, 2);
    NumericSeq ns(q, alpha, lambda, 128);
    Rational partial(1);  // n = 0 term
    Rational denom(1);
    for (unsigned n = 1; n <= 3; ++n) {
        denom *= pow_rational(q, n) - lambda;
        partial += pow_rational(alpha, n) / denom;
    }
    CHECK(ns.mu().certified_at_least(partial));
    // crude upper bound: remaining terms are below a geometric tail with
    // ratio 1/(q^4 - lambda) * (growing denominators), bounded by doubling
    // the first omitted term
    Rational omitted = pow_rational(alpha, 4) /
                       (denom * (pow_rational(q, 4) - lambda));
    CHECK(ns.mu().certified_at_most(partial + omitted * 2));
}

TEST_CASE("symbolic rows evaluated at numeric mu match the numeric rows") {
    const Rational q(2), alpha(1), lambda(1, 2);
    NumericSeq ns(q, alpha, lambda, 160);
    SeqContext ctx(alpha, lambda);
    std::map<Var, BigFloat> at;
    at.emplace(Var::q, BigFloat::from_rational(q, 200));
    at.emplace(Var::mu, ns.mu());
    for (unsigned n = 0; n <= 5; ++n)
        CHECK(eval_ball(ctx.v(static_cast<int>(n)), at, 200)
                  .agrees_with(ns.v(n)));
}
