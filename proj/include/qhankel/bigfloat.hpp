#pragma once

#include <mpfr.h>

#include <map>
#include <string>

#include "qhankel/multipoly.hpp"
#include "qhankel/rational.hpp"

namespace qhankel {

// Arbitrary-precision float paired with a conservative absolute error bound
// (a "ball"): the represented real number x satisfies |x - value| <= err.
// Every operation rounds the value to nearest at the working precision and
// accumulates propagated error plus a rounding-error bound into err, which is
// kept in a small always-round-up float so it can only overestimate.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 128);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    static BigFloat from_rational(const Rational& r, mpfr_prec_t prec);
    static BigFloat from_long(long v, mpfr_prec_t prec);
    // value = round(val), err = round-up(err_bound) + rounding slack.
    static BigFloat from_rational_with_err(const Rational& val,
                                           const Rational& err_bound,
                                           mpfr_prec_t prec);
    static BigFloat pi(mpfr_prec_t prec);
    static BigFloat sqrt_ui(unsigned long x, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }
    mpfr_srcptr value() const { return v_; }
    mpfr_srcptr err() const { return e_; }
    bool value_is_zero() const { return mpfr_zero_p(v_); }
    bool err_is_zero() const { return mpfr_zero_p(e_); }

    BigFloat operator+(const BigFloat& o) const;
    BigFloat operator-(const BigFloat& o) const;
    BigFloat operator*(const BigFloat& o) const;
    BigFloat operator/(const BigFloat& o) const;  // PrecisionError if o may be 0
    BigFloat operator-() const;
    BigFloat abs() const;
    BigFloat add_rational(const Rational& r) const;
    BigFloat mul_rational(const Rational& r) const;
    BigFloat sqrt() const;  // PrecisionError unless certified positive
    BigFloat log2() const;  // PrecisionError unless certified positive
    // Doubles err; value unchanged.  Used to make shrinking enclosures nest.
    BigFloat with_doubled_err() const;

    // |value| > err, so the sign of the represented number is known.
    bool sign_certain() const;
    int certified_sign() const;  // -1/0(+exact)/+1; PrecisionError if unknown
    // true number >= r (resp. <=), certified through the error bound.
    bool certified_at_least(const Rational& r) const;
    bool certified_at_most(const Rational& r) const;
    bool certified_less_than(const BigFloat& o) const;
    // |a.value - b.value| <= a.err + b.err: the balls intersect.
    bool agrees_with(const BigFloat& o) const;
    bool contains(const Rational& r) const;
    // this ball is contained in o's ball.
    bool within(const BigFloat& o) const;

    // Round-to-nearest decimal with the given significant digit count;
    // deterministic for a given value.
    std::string value_string(int digits = 20) const;
    std::string err_string() const;
    // err <= 2^k check, for tolerance assertions.
    bool err_at_most_pow2(long k) const;
    bool err_at_most(const Rational& bound) const;

  private:
    mpfr_t v_;  // working precision, round-to-nearest
    mpfr_t e_;  // 64-bit, always rounded up (toward +inf)
    mpfr_prec_t prec_;

    void bump_rounding_err(int ternary);
    friend BigFloat eval_ball(const MultiPoly&, const std::map<Var, BigFloat>&,
                              mpfr_prec_t);
};

// Evaluates a polynomial with every used variable bound to a ball.
// Rational coefficients enter exactly (up to one rounding each).
BigFloat eval_ball(const MultiPoly& p, const std::map<Var, BigFloat>& values,
                   mpfr_prec_t prec);

}  // namespace qhankel
