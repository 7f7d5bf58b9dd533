#include "qhankel/series.hpp"

#include <cstdlib>

#include "qhankel/errors.hpp"

namespace qhankel {

namespace {

Rational rat_abs(const Rational& r) {
    Rational a;
    mpq_abs(a.get_mpq_t(), r.get_mpq_t());
    return a;
}

// 2^{-bits} as an exact rational
Rational pow2_neg(long bits) {
    Integer den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
    return Rational(Integer(1), den);
}

void require_valid_q_lambda(const Rational& q, const Rational& lambda) {
    if (rat_abs(q) <= 1) throw UsageError("|q| must exceed 1");
    if (is_scaled_q_power(q, Rational(1), lambda))
        throw UsageError("denominator vanishes: lambda is a positive power of q");
}

}  // namespace

bool is_scaled_q_power(const Rational& q, const Rational& scale,
                       const Rational& value) {
    if (rat_abs(q) <= 1) throw UsageError("|q| must exceed 1");
    if (scale == 0) return value == 0;
    if (value == 0) return false;
    Rational bound = rat_abs(value);
    Rational p = scale;
    for (;;) {
        p *= q;  // p = scale * q^j
        if (p == value) return true;
        if (rat_abs(p) > bound) return false;
    }
}

SeriesSum sum_shifted_factorial_series(const Rational& t0, const Rational& num,
                                       const Rational& q,
                                       const Rational& lambda, long e0,
                                       long target_bits) {
    require_valid_q_lambda(q, lambda);
    SeriesSum out;
    out.value = t0;
    out.tail = 0;
    if (num == 0 || t0 == 0) return out;  // series terminates immediately

    const Rational target = pow2_neg(target_bits);
    const Rational abs_num = rat_abs(num);
    const Rational abs_lambda = rat_abs(lambda);

    Rational term = t0;
    Rational qpow = pow_rational(q, e0);  // divisor exponent for the next step
    constexpr long kMaxTerms = 2'000'000;
    for (long i = 0; i < kMaxTerms; ++i) {
        // Geometric domination: once |q|^e >= 2|lambda|, each later divisor
        // satisfies |q^e - lambda| >= |q|^e/2, so the ratio is at most r below.
        Rational abs_qpow = rat_abs(qpow);
        if (abs_qpow >= 2 * abs_lambda && abs_qpow > 2 * abs_num) {
            Rational r = 2 * abs_num / abs_qpow;  // r < 1 here
            Rational bound = rat_abs(term) * r / (1 - r);
            Rational scale = rat_abs(out.value);
            if (scale < 1) scale = 1;
            if (bound <= target * scale) {
                out.tail = bound;
                return out;
            }
        }
        Rational div = qpow - lambda;
        if (div == 0) throw UsageError("denominator vanishes in series");
        term *= num;
        term /= div;
        out.value += term;
        qpow *= q;
    }
    throw PrecisionError("series did not meet tail target within term cap");
}

NumericSeq::NumericSeq(const Rational& q, const Rational& alpha,
                       const Rational& lambda, mpfr_prec_t precision)
    : q_(q), alpha_(alpha), lambda_(lambda), prec_(precision) {
    if (precision < 32) throw UsageError("precision must be at least 32 bits");
    require_valid_q_lambda(q, lambda);
}

const BigFloat& NumericSeq::v(unsigned n) const {
    auto it = v_memo_.find(n);
    if (it != v_memo_.end()) return it->second;
    // v_n = sum_{k>n} alpha^k / prod_{j=n+1}^k (q^j - lambda): first term has
    // k = n+1, and the step to k+1 divides by q^{k+1} - lambda.
    Rational first = pow_rational(alpha_, static_cast<long>(n) + 1) /
                     (pow_rational(q_, static_cast<long>(n) + 1) - lambda_);
    SeriesSum s = sum_shifted_factorial_series(first, alpha_, q_, lambda_,
                                               static_cast<long>(n) + 2,
                                               prec_ + 8);
    return v_memo_
        .emplace(n, BigFloat::from_rational_with_err(s.value, s.tail, prec_ + 8))
        .first->second;
}

const BigFloat& NumericSeq::mu() const {
    auto it = mu_memo_.find(0);
    if (it != mu_memo_.end()) return it->second;
    SeriesSum s = sum_shifted_factorial_series(Rational(1), alpha_, q_, lambda_,
                                               1, prec_ + 8);
    return mu_memo_
        .emplace(0, BigFloat::from_rational_with_err(s.value, s.tail, prec_ + 8))
        .first->second;
}

BigFloat F_eval(const Rational& q, const Rational& lambda, const Rational& z,
                mpfr_prec_t precision) {
    if (precision < 32) throw UsageError("precision must be at least 32 bits");
    SeriesSum s =
        sum_shifted_factorial_series(Rational(1), z, q, lambda, 1, precision + 8);
    return BigFloat::from_rational_with_err(s.value, s.tail, precision + 8);
}

}  // namespace qhankel
