#pragma once

#include <vector>

#include "qhankel/bigfloat.hpp"
#include "qhankel/rational.hpp"

namespace qhankel {

// sum_{m>=1} 1/(a m - c)^2, exactly enclosed.  Euler-Maclaurin on the tail
// keeps the term count independent of the requested precision.
// Requires a > 0 and 0 <= c < a.
BigFloat inverse_square_sum(const Rational& a, const Rational& c,
                            mpfr_prec_t prec);

// Im Li_2(e^{2 pi i/3}) = sum_{n>=1} sin(2 pi n/3)/n^2
//                       = (sqrt(3)/2) (sum (3m-2)^{-2} - sum (3m-1)^{-2}).
// The returned error bound is doubled so that enclosures at increasing
// precision form a nested chain.
BigFloat clausen_constant(mpfr_prec_t precision);

struct ABC {
    BigFloat A, B, C;
};

// Growth-rate constants of the key inequalities; B mixes an exact rational
// with the dilogarithm constant.
ABC constants_ABC(bool lambda_is_zero, mpfr_prec_t prec);

// gamma bound (A+C)/(A+C-d(C-B)) for approximation degree d in {1,2}.
// Throws UsageError when the denominator is nonpositive (d too large).
BigFloat threshold(int d, bool lambda_is_zero, mpfr_prec_t prec);
// The same bound from its published closed form in pi, sqrt(3) and the
// dilogarithm constant; used to cross-check threshold().
BigFloat threshold_closed_form(int d, bool lambda_is_zero, mpfr_prec_t prec);

struct ThresholdEntry {
    int d = 0;
    bool lambda_is_zero = false;
    BigFloat gamma;         // from (A+C)/(A+C-d(C-B))
    BigFloat gamma_closed;  // from the closed form
    bool agree = false;     // the two enclosures intersect
};

struct ConstantsReport {
    mpfr_prec_t precision = 0;
    BigFloat imLi2;
    BigFloat A_lambda0, B_lambda0;  // lambda = 0 case
    BigFloat A_general, B_general;  // lambda != 0 case
    BigFloat C;
    std::vector<ThresholdEntry> thresholds;  // all four (d, case) pairs
    BigFloat c_weighted;  // 5/54 - imLi2/(pi^2 sqrt(3)), the cubic-growth
                          // coefficient of the weighted exponent sum
    bool all_agree = false;
};

ConstantsReport constants_report(mpfr_prec_t prec);

struct WeightedExponentSum {
    unsigned n = 0;
    Integer sum;     // sum_{l>=1} e_l(n) phi(l), exact
    Rational ratio;  // sum / n^3
};

// Exact integer evaluation of the weighted cyclotomic-exponent sum.
// chunk overrides the internal accumulation block size (0 = default); the
// result is the same integer for every chunking.
WeightedExponentSum weighted_exponent_sum(unsigned n, unsigned chunk = 0);

struct SumelPartial {
    Rational a, c;
    unsigned n = 0;
    Integer sum;          // sum_{l>=1} phi(l) sum_{i=0}^{n} floor((i+cl)/(al))
    BigFloat prediction;  // (n^3/pi^2) sum_{m>=1} (am-c)^{-2}
    BigFloat ratio;       // sum / prediction
};

// Exact double sum against its leading-term prediction.
// Requires a > 0 and 0 <= c < a.
SumelPartial sumel_partial(const Rational& a, const Rational& c, unsigned n);

struct DecayRow {
    unsigned n = 0;
    BigFloat log_q_det;  // log_{|q|} |V_n|, certified enclosure
    BigFloat ratio;      // -log_{|q|} |V_n| / n^3
    int sign = 0;        // certified sign of V_n
};

struct DecayReport {
    Rational q, alpha, lambda;
    unsigned n_max = 0;
    mpfr_prec_t bits = 0;  // working precision chosen by the policy
    bool lambda_is_zero = false;
    bool positivity_applies = false;  // lambda = 0, q > 1, alpha > 0
    BigFloat ref_A;       // reference growth constant A
    BigFloat ref_AB;      // A + B
    std::vector<DecayRow> rows;  // n = 2 .. n_max
};

// Floating Hankel determinants of the numeric tail sequence with certified
// error tracking; precision policy: ceil(0.6 n_max^3 log2|q|) + 256 bits.
// Every row's determinant has certified sign, and the log enclosure is
// required to be tighter than 0.5; otherwise PrecisionError.
DecayReport decay_experiment(const Rational& q, const Rational& alpha,
                             const Rational& lambda, unsigned n_max,
                             unsigned cap = 24);

}  // namespace qhankel
