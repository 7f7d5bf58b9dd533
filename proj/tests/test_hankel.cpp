#include <array>
#include <optional>

#include "doctest.h"
#include "qhankel/errors.hpp"
#include "qhankel/hankel.hpp"

using namespace qhankel;

namespace {
const MultiPoly M = MultiPoly::variable(Var::mu);
const MultiPoly One = MultiPoly::constant(Rational(1));
}  // namespace

TEST_CASE("matrix shape") {
    SeqContext sym(std::nullopt, std::nullopt);
    PolyMatrix m = hankel_matrix(sym, 3);
    REQUIRE(m.size() == 3);
    for (const auto& row : m) REQUIRE(row.size() == 3);
    CHECK(m[0][2] == m[1][1]);
    CHECK(m[1][2] == m[2][1]);
    CHECK(m[0][0] == sym.v(0));
    CHECK(hankel_matrix(sym, 0).empty());
}

TEST_CASE("one-by-one determinant is the seed") {
    SeqContext sym(std::nullopt, std::nullopt);
    CHECK(hankel_det(sym, 1) == M - One);
}

TEST_CASE("two-by-two matches the minor formula") {
    SeqContext sym(std::nullopt, std::nullopt);
    MultiPoly want = sym.v(0) * sym.v(2) - sym.v(1) * sym.v(1);
    CHECK(hankel_det(sym, 2) == want);
}

TEST_CASE("every engine computes the same polynomial") {
    SeqContext sym(std::nullopt, std::nullopt);
    for (unsigned n : {2u, 3u, 4u}) {
        MultiPoly a = hankel_det(sym, n, DetEngine::Bareiss);
        CHECK(a == hankel_det(sym, n, DetEngine::BareissParallel));
        CHECK(a == hankel_det(sym, n, DetEngine::Cofactor));
        CHECK(a == hankel_det(sym, n, DetEngine::Condensation));
        CHECK(a == hankel_det(sym, n, DetEngine::Auto));
    }
    // rational parameters, larger sizes
    SeqContext rat(Rational(3, 2), Rational(-1, 3));
    for (unsigned n : {5u, 6u}) {
        MultiPoly a = hankel_det(rat, n, DetEngine::Bareiss);
        CHECK(a == hankel_det(rat, n, DetEngine::Condensation));
        CHECK(a == hankel_det(rat, n, DetEngine::Auto));
    }
}

TEST_CASE("runs are deterministic") {
    SeqContext sym(std::nullopt, std::nullopt);
    CHECK(hankel_det(sym, 4).serialize() == hankel_det(sym, 4).serialize());
}

TEST_CASE("fully rational evaluation agrees with the symbolic determinant") {
    const Rational q(2), alpha(3), lambda(1, 5), x(7, 2);
    SeqContext ctx(alpha, lambda, x);
    std::array<std::optional<Rational>, kVarCount> at{};
    at[static_cast<int>(Var::q)] = q;
    for (unsigned n = 1; n <= 5; ++n) {
        CHECK(hankel_det_rational(q, alpha, lambda, x, n) ==
              hankel_det(ctx, n).evaluated(at));
    }
}

TEST_CASE("rational Gaussian determinant on a known matrix") {
    // det [[1,2],[3,4]] = -2; det [[2,0,0],[0,3,0],[0,0,5]] = 30
    CHECK(det_rational({{Rational(1), Rational(2)},
                        {Rational(3), Rational(4)}}) == Rational(-2));
    CHECK(det_rational({{Rational(2), Rational(0), Rational(0)},
                        {Rational(0), Rational(3), Rational(0)},
                        {Rational(0), Rational(0), Rational(5)}}) ==
          Rational(30));
    CHECK(det_rational({{Rational(0), Rational(1)},
                        {Rational(0), Rational(2)}}) == Rational(0));
}

TEST_CASE("q-order formula small table") {
    // generic lambda: C(n,3)
    CHECK(e0_formula(1, false) == 0);
    CHECK(e0_formula(2, false) == 0);
    CHECK(e0_formula(3, false) == 1);
    CHECK(e0_formula(4, false) == 4);
    CHECK(e0_formula(5, false) == 10);
    // lambda = 0 parity split
    CHECK(e0_formula(1, true) == 0);
    CHECK(e0_formula(2, true) == 0);
    CHECK(e0_formula(3, true) == 2);
    CHECK(e0_formula(4, true) == 6);
    CHECK(e0_formula(5, true) == 15);
    CHECK(e0_formula(6, true) == 28);
}

TEST_CASE("cyclotomic exponent formulas against a direct enumeration") {
    for (unsigned l = 1; l <= 7; ++l) {
        for (unsigned n = 0; n <= 40; ++n) {
            long direct = 0;
            for (unsigned i = 0; i < n; ++i)
                direct += static_cast<long>((i + l) / (3 * l)) +
                          static_cast<long>(i / (3 * l));
            CHECK(e_l_sum_formula(l, n) == direct);
            CHECK(e_l_compact_formula(l, n) == direct);
            CHECK(e_l_formula(l, n) == direct);
        }
    }
    // vanishing threshold: no multiplicity once 2l exceeds n - 1
    CHECK(e_l_formula(5, 10) == 0);
    CHECK(e_l_formula(5, 11) > 0);
}

TEST_CASE("degree bound table") {
    const DegreeBounds b = degree_bounds(4);
    CHECK(b.deg_q == 34);
    CHECK(b.deg_mu == 4);
    CHECK(b.deg_alpha == 12);
    CHECK(b.deg_lambda == 12);
}

TEST_CASE("auxiliary determinant sequence") {
    const MultiPoly A = MultiPoly::variable(Var::alpha);
    CHECK(K_rec(0) == M - One);
    CHECK(K_rec(1) == (M - One) * (M - One) + A * M);
    for (unsigned n = 0; n <= 5; ++n) CHECK(K_det(n) == K_rec(n));
}

TEST_CASE("leading coefficient formula at small sizes") {
    SeqContext sym(std::nullopt, std::nullopt);
    for (unsigned n = 1; n <= 4; ++n) {
        MultiPoly V = hankel_det(sym, n);
        CHECK(V.q_coeff(static_cast<int>(e0_formula(n, false))) ==
              leading_coeff_formula(sym, n));
    }
    SeqContext z(std::nullopt, Rational(0));
    for (unsigned n = 1; n <= 4; ++n) {
        MultiPoly V = hankel_det(z, n);
        CHECK(V.q_coeff(static_cast<int>(e0_formula(n, true))) ==
              leading_coeff_formula(z, n));
    }
}

TEST_CASE("factorization splits and reassembles") {
    SeqContext ctx(Rational(2), Rational(1, 3), Rational(5));
    FactoredDeterminant f = factorize(ctx, 6);
    CHECK(f.n == 6);
    CHECK(f.e0_guaranteed == e0_formula(6, false));
    CHECK(f.e0_found >= f.e0_guaranteed);
    CHECK(f.cofactor.q_order() == 0);
    for (const auto& [l, e] : f.guarantees) {
        const auto it = f.cyclo_exponents.find(l);
        const long found = it == f.cyclo_exponents.end() ? 0 : it->second;
        CHECK(found >= e);
    }
    SeqContext zero_ctx(Rational(1), Rational(1), Rational(1));
    // V_1 = x - 1 = 0 at x = 1: a vanishing determinant cannot be factored
    CHECK_THROWS_AS(factorize(zero_ctx, 1), UsageError);
}

TEST_CASE("point scan preconditions and partition") {
    KroneckerScan s = kronecker_scan(Rational(1), Rational(2), Rational(1),
                                     Rational(0), 6);
    CHECK(s.dets.size() == 6);
    CHECK(s.zero.size() + s.nonzero.size() == 6);
    CHECK_THROWS_AS(kronecker_scan(Rational(1), Rational(3, 2) / Rational(2),
                                   Rational(1), Rational(0), 3),
                    UsageError);  // |q| <= 1
    CHECK_THROWS_AS(kronecker_scan(Rational(1), Rational(2), Rational(0),
                                   Rational(0), 3),
                    UsageError);  // alpha = 0
    CHECK_THROWS_AS(kronecker_scan(Rational(1), Rational(2), Rational(1),
                                   Rational(2), 3),
                    UsageError);  // lambda = q
    CHECK_THROWS_AS(kronecker_scan(Rational(1), Rational(2), Rational(-1),
                                   Rational(1, 2), 3),
                    UsageError);  // alpha = -lambda q
}

TEST_CASE("positive series bracket for the determinant") {
    const Rational q(2), alpha(1);
    BezivinSum a = bezivin_sum(q, alpha, 2, 6);
    BezivinSum b = bezivin_sum(q, alpha, 2, 8);
    CHECK(a.partial > 0);
    CHECK(a.tail > 0);
    CHECK(b.partial >= a.partial);
    // both brackets contain the same value, so they must overlap
    CHECK(b.partial <= a.partial + a.tail);
    CHECK(b.tail < a.tail);
    CHECK_THROWS_AS(bezivin_sum(Rational(2), Rational(8), 2, 1), UsageError);
}
