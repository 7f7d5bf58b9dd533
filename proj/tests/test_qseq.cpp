#include <optional>

#include "doctest.h"
#include "qhankel/errors.hpp"
#include "qhankel/qseq.hpp"

using namespace qhankel;

namespace {
const MultiPoly Q = MultiPoly::variable(Var::q);
const MultiPoly A = MultiPoly::variable(Var::alpha);
const MultiPoly L = MultiPoly::variable(Var::lambda);
const MultiPoly M = MultiPoly::variable(Var::mu);
const MultiPoly One = MultiPoly::constant(Rational(1));
}  // namespace

TEST_CASE("Gaussian binomials") {
    CHECK(gauss_binomial(0, 0) == One);
    CHECK(gauss_binomial(5, 0) == One);
    CHECK(gauss_binomial(5, 5) == One);
    CHECK(gauss_binomial(2, 1) == Q + One);
    CHECK(gauss_binomial(4, 2) ==
          Q.pow(4) + Q.pow(3) + (Q * Q).scaled(Rational(2)) + Q + One);
    // q-Pascal, both variants
    for (long n = 1; n <= 8; ++n) {
        for (long k = 0; k <= n; ++k) {
            MultiPoly lhs = gauss_binomial(n, k);
            MultiPoly top = k > 0 ? gauss_binomial(n - 1, k - 1) : MultiPoly();
            MultiPoly bot = k < n ? gauss_binomial(n - 1, k) : MultiPoly();
            CHECK(lhs == top + bot.shift_q(static_cast<int>(k)));
            CHECK(lhs ==
                  top.shift_q(static_cast<int>(n - k)) + bot);
            // symmetry
            CHECK(lhs == gauss_binomial(n, n - k));
        }
    }
    // specializing q = 1 gives ordinary binomials
    std::array<std::optional<Rational>, kVarCount> at{};
    at[static_cast<int>(Var::q)] = Rational(1);
    CHECK(gauss_binomial(6, 3).evaluated(at) == Rational(20));
}

TEST_CASE("tail sequence recurrence and seed") {
    SeqContext sym(std::nullopt, std::nullopt);
    CHECK(sym.v(0) == M - One);
    for (int n = 1; n <= 6; ++n) {
        MultiPoly qn = MultiPoly::variable(Var::q, n);
        CHECK(sym.v(n) ==
              (qn - L) * sym.v(n - 1) - sym.alpha_power(n));
    }
    for (unsigned n = 0; n <= 8; ++n)
        CHECK(v_closed_form(sym, n) == sym.v(static_cast<int>(n)));
}

TEST_CASE("rational specialization is consistent with the symbolic row") {
    SeqContext sym(std::nullopt, std::nullopt);
    SeqContext rat(Rational(2), Rational(1, 3));
    std::array<std::optional<Rational>, kVarCount> at{};
    at[static_cast<int>(Var::alpha)] = Rational(2);
    at[static_cast<int>(Var::lambda)] = Rational(1, 3);
    for (int n = 0; n <= 6; ++n) {
        MultiPoly specialized = sym.v(n).substituted(at);
        CHECK(specialized == rat.v(n));
    }
}

TEST_CASE("negative indices need lambda = 0") {
    SeqContext sym(std::nullopt, std::nullopt);
    CHECK_THROWS_AS(sym.v(-1), UsageError);
    SeqContext lam(Rational(1), Rational(1, 2), Rational(3));
    CHECK_THROWS_AS(lam.v(-1), UsageError);

    SeqContext z(Rational(2), Rational(0));
    // v_0 = 1 * v_{-1} - 1 forces v_{-1} = mu
    CHECK(z.v(-1) == M);
    for (int n = 1; n <= 6; ++n) {
        // the recurrence keeps holding across the negative range
        MultiPoly qn = MultiPoly::variable(Var::q, -n + 1);
        CHECK(z.v(-n + 1) == qn * z.v(-n) - z.alpha_power(-n + 1));
        CHECK(z.v(-n).q_order() == n - 1);
    }
}

TEST_CASE("shift operator algebra") {
    SeqContext sym(std::nullopt, std::nullopt);
    ShiftOp id;
    CHECK(id.coeffs().size() == 1);
    CHECK(id.apply(sym, 4) == sym.v(4));
    CHECK(apply_D(sym, 0, 5) == sym.v(5));
    CHECK(apply_Dtilde(sym, 0, 5) == sym.v(5));

    // c1 N^2 * c2 N^3 = c1 c2 N^5
    ShiftOp t1 = ShiftOp::term(A, 2);
    ShiftOp t2 = ShiftOp::term(L + One, 3);
    ShiftOp prod = t1 * t2;
    CHECK(prod.max_shift() == 5);
    CHECK(prod.apply(sym, 7) == A * (L + One) * sym.v(2));

    // (I - alpha N)^2 = I - 2 alpha N + alpha^2 N^2
    ShiftOp lin = ShiftOp::from_coeffs({One, -A});
    ShiftOp sq = lin.pow(2);
    CHECK(sq.coeffs().size() == 3);
    CHECK(sq.coeffs()[1] == -A.scaled(Rational(2)));
    CHECK(sq.coeffs()[2] == A * A);

    // the quadratic factors of the product operator commute
    auto factor = [&](unsigned k) {
        return ShiftOp::from_coeffs(
            {One, (L - A).shift_q(static_cast<int>(k)),
             -((L * A).shift_q(static_cast<int>(2 * k)))});
    };
    ShiftOp ab = factor(0) * factor(3);
    ShiftOp ba = factor(3) * factor(0);
    for (std::size_t s = 0; s < ab.coeffs().size(); ++s)
        CHECK(ab.coeffs()[s] == ba.coeffs()[s]);
}

TEST_CASE("first product operators have the expected coefficients") {
    SeqContext sym(std::nullopt, std::nullopt);
    ShiftOp d1 = shift_op_D(sym, 1);
    REQUIRE(d1.coeffs().size() == 3);
    CHECK(d1.coeffs()[0] == One);
    CHECK(d1.coeffs()[1] == L - A);
    CHECK(d1.coeffs()[2] == -(L * A));
    ShiftOp td1 = shift_op_Dtilde(sym, 1);
    REQUIRE(td1.coeffs().size() == 2);
    CHECK(td1.coeffs()[1] == -A.shift_q(-1));
}

TEST_CASE("roots of unity product") {
    for (unsigned l = 1; l <= 6; ++l) {
        for (const Rational& lam :
             {Rational(3), Rational(1, 2), Rational(-2, 7)}) {
            Rational want = pow_rational(lam, static_cast<long>(l)) - 1;
            if (l % 2) want = -want;
            CHECK(roots_of_unity_product(l, lam) == want);
        }
    }
    CHECK(roots_of_unity_product(1, Rational(3)) == Rational(-2));
}

TEST_CASE("filtered sequence guard rails") {
    SeqContext ctx(Rational(1), Rational(1, 2));
    CHECK_THROWS_AS(apply_FG(ctx, 0, 1, 5), UsageError);
    CHECK_THROWS_AS(apply_FG(ctx, 2, 2, 3), UsageError);  // below (3m-1)l
    SeqContext sym(std::nullopt, std::nullopt);
    CHECK_THROWS_AS(apply_FG(sym, 1, 1, 5), UsageError);
    // force computes anyway; the operator reaches indices down to
    // n - (3m-1)l, so below the threshold only lambda = 0 (where negative
    // indices exist) can actually evaluate
    SeqContext tail(Rational(1), Rational(0));
    MultiPoly w = apply_FG(tail, 2, 2, 3, true);
    (void)w;
    CHECK_THROWS_AS(apply_FG(ctx, 2, 2, 3, true), UsageError);
}
