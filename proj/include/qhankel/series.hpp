#pragma once

#include <map>

#include "qhankel/bigfloat.hpp"
#include "qhankel/rational.hpp"

namespace qhankel {

// Exists j >= 1 with value = scale * q^j?  Requires |q| > 1; exact.
bool is_scaled_q_power(const Rational& q, const Rational& scale,
                       const Rational& value);

// Exact partial sum of a series with term ratio num/(q^e - lambda), plus a
// rigorous bound on the absolute value of the omitted tail.
struct SeriesSum {
    Rational value;  // partial sum
    Rational tail;   // |true value - partial sum| <= tail
};

// Sums T_0 + T_1 + ... where T_{i+1} = T_i * num / (q^{e0+i} - lambda),
// stopping once the geometric tail bound drops below
// 2^{-target_bits} * max(1, |partial|).  Requires |q| > 1 and
// lambda not of the form q^j (so no divisor vanishes).
SeriesSum sum_shifted_factorial_series(const Rational& t0, const Rational& num,
                                       const Rational& q,
                                       const Rational& lambda, long e0,
                                       long target_bits);

// Numeric values of the tail sequence v_n and of mu = F(alpha), each summed
// directly from its series with a certified error bound
// <= 2^{-precision} * max(1, |value|).
class NumericSeq {
  public:
    // Requires |q| > 1 and lambda != q^j for every j >= 1 (checked exactly).
    NumericSeq(const Rational& q, const Rational& alpha, const Rational& lambda,
               mpfr_prec_t precision);

    const BigFloat& v(unsigned n) const;
    const BigFloat& mu() const;

    const Rational& q() const { return q_; }
    const Rational& alpha() const { return alpha_; }
    const Rational& lambda() const { return lambda_; }
    mpfr_prec_t precision() const { return prec_; }

  private:
    Rational q_, alpha_, lambda_;
    mpfr_prec_t prec_;
    mutable std::map<unsigned, BigFloat> v_memo_;  // single-owner, no locking
    mutable std::map<int, BigFloat> mu_memo_;
};

// F(z) = sum_{n>=0} z^n / prod_{k=1}^n (q^k - lambda), evaluated with a
// certified error bound.  Same preconditions as NumericSeq.
BigFloat F_eval(const Rational& q, const Rational& lambda, const Rational& z,
                mpfr_prec_t precision);

}  // namespace qhankel
