#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "qhankel/multipoly.hpp"
#include "qhankel/rational.hpp"

namespace qhankel {

// Parameters of the sequence v_n together with a memo table of its exact
// symbolic values.  alpha and lambda may each be a fixed rational or left
// symbolic; the seed is either the symbol mu (v_0 = mu - 1) or an explicit
// rational x (v_0 = x - 1).
//
// Thread contract: concurrent calls are safe; first computation of an index
// is idempotent.
class SeqContext {
  public:
    SeqContext(std::optional<Rational> alpha, std::optional<Rational> lambda)
        : alpha_(std::move(alpha)), lambda_(std::move(lambda)) {}
    SeqContext(std::optional<Rational> alpha, std::optional<Rational> lambda,
               const Rational& x)
        : alpha_(std::move(alpha)), lambda_(std::move(lambda)), x_(x) {}

    SeqContext(const SeqContext&) = delete;
    SeqContext& operator=(const SeqContext&) = delete;

    // v_0 = seed - 1; v_n = (q^n - lambda) v_{n-1} - alpha^n for n >= 1.
    // Negative indices extend the recurrence backwards and exist only for
    // lambda = 0 with an explicit nonzero rational alpha.
    const MultiPoly& v(int n) const;

    const std::optional<Rational>& alpha() const { return alpha_; }
    const std::optional<Rational>& lambda() const { return lambda_; }
    const std::optional<Rational>& x() const { return x_; }

    bool lambda_is_zero() const { return lambda_ && *lambda_ == 0; }

    // alpha as a polynomial (symbol or constant).
    MultiPoly alpha_poly() const;
    MultiPoly lambda_poly() const;
    // The seed symbol mu or the explicit rational x.
    MultiPoly seed_poly() const;
    // alpha^e; negative e requires an explicit nonzero rational alpha.
    MultiPoly alpha_power(long e) const;

  private:
    std::optional<Rational> alpha_, lambda_;
    std::optional<Rational> x_;

    mutable std::mutex mtx_;
    mutable std::map<int, MultiPoly> memo_;
};

// v_n by the closed form
//   v_n = seed * prod_{j=1}^n (q^j - lambda)
//         - sum_{k=0}^n alpha^k prod_{j=k+1}^n (q^j - lambda),
// computed independently of the recurrence memo (cross-check path).
MultiPoly v_closed_form(const SeqContext& ctx, unsigned n);

// The q-binomial coefficient [m over k]_q as a polynomial in q
// (Laurent for m < 0); zero when k < 0 or 0 <= m < k.
MultiPoly gauss_binomial(long m, long k);

// A polynomial in the backward shift N (N f_n = f_{n-1}): entry s of
// coeffs() multiplies f_{n-s}.
class ShiftOp {
  public:
    ShiftOp() : c_(1, MultiPoly::constant(Rational(1))) {}  // identity

    static ShiftOp term(MultiPoly c, unsigned shift);
    // Entry s of cs multiplies N^s.
    static ShiftOp from_coeffs(std::vector<MultiPoly> cs);

    ShiftOp operator*(const ShiftOp& o) const;
    ShiftOp pow(unsigned e) const;

    const std::vector<MultiPoly>& coeffs() const { return c_; }
    unsigned max_shift() const { return static_cast<unsigned>(c_.size()) - 1; }

    // sum_s coeffs()[s] * v_{n-s}
    MultiPoly apply(const SeqContext& ctx, int n) const;

  private:
    std::vector<MultiPoly> c_;
};

// prod_{k=0}^{l-1} (I + (lambda - alpha) q^k N - lambda alpha q^{2k} N^2),
// expanded into shift coefficients before use.
ShiftOp shift_op_D(const SeqContext& ctx, unsigned l);

// prod_{k=1}^{l} (I - alpha q^{-k} N); coefficients are Laurent in q.
ShiftOp shift_op_Dtilde(const SeqContext& ctx, unsigned l);

MultiPoly apply_D(const SeqContext& ctx, unsigned l, int n);
MultiPoly apply_Dtilde(const SeqContext& ctx, unsigned l, int n);

// prod over the l-th roots of unity zeta of (zeta - lambda), which equals
// (-1)^l (lambda^l - 1).
Rational roots_of_unity_product(unsigned l, const Rational& lambda);

// w_{m,n} = (I - B N^l)^{2m-1} (I - alpha^l N^l)^m v_n with
// B = roots_of_unity_product(l, lambda).  Requires rational alpha and
// lambda.  For n < (3m-1)l the divisibility guarantee does not apply and
// the call is rejected unless force is set.
MultiPoly apply_FG(const SeqContext& ctx, unsigned l, unsigned m, int n,
                   bool force = false);

}  // namespace qhankel
