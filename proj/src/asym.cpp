#include "qhankel/asym.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

#include "qhankel/cyclotomic.hpp"
#include "qhankel/errors.hpp"
#include "qhankel/hankel.hpp"
#include "qhankel/series.hpp"

namespace qhankel {

namespace {

Rational rat_abs(const Rational& r) {
    Rational a;
    mpq_abs(a.get_mpq_t(), r.get_mpq_t());
    return a;
}

// B_index via the defining recurrence sum_j C(m+1,j) B_j = 0, extended
// lazily and cached across calls.
Rational bernoulli_number(unsigned index) {
    static std::mutex mtx;
    static std::vector<Rational> b{Rational(1)};
    std::lock_guard<std::mutex> lock(mtx);
    while (b.size() <= index) {
        const unsigned m = static_cast<unsigned>(b.size());
        Rational acc(0);
        for (unsigned j = 0; j < m; ++j) {
            Integer binom;
            mpz_bin_uiui(binom.get_mpz_t(), m + 1, j);
            acc += Rational(binom) * b[j];
        }
        b.push_back(-acc / Rational(static_cast<unsigned long>(m) + 1));
    }
    return b[index];
}

Rational pow2_neg(long k) {
    Integer den(1);
    den <<= static_cast<unsigned long>(k);
    return Rational(Integer(1), den);
}

}  // namespace

BigFloat inverse_square_sum(const Rational& a, const Rational& c,
                            mpfr_prec_t prec) {
    if (a <= 0) throw UsageError("step a must be positive");
    if (c < 0 || c >= a) throw UsageError("offset c must satisfy 0 <= c < a");
    const long work = static_cast<long>(prec) + 64;
    const long M = std::max<long>(64, static_cast<long>(prec) / 2);

    // head: the first M-1 terms, exactly
    Rational total(0);
    for (long m = 1; m < M; ++m) {
        Rational d = a * Rational(m) - c;
        total += Rational(1) / (d * d);
    }
    // tail from m = M on, by Euler-Maclaurin:
    //   integral + f(M)/2 + sum_j B_{2j} a^{2j-1} t^{-(2j+1)},  t = aM - c.
    // f is completely monotone, so the remainder is bounded by the first
    // omitted correction term (doubled here for extra safety).
    const Rational t = a * Rational(M) - c;
    total += Rational(1) / (a * t);
    total += Rational(1, 2) / (t * t);
    const Rational target = pow2_neg(work);
    constexpr unsigned kMaxJ = 400;
    Rational apow = a;                // a^{2j-1}
    Rational tpow = t * t * t;        // t^{2j+1}
    Rational remainder_bound;
    bool converged = false;
    for (unsigned j = 1; j <= kMaxJ; ++j) {
        Rational term = bernoulli_number(2 * j) * apow / tpow;
        Rational mag = rat_abs(term);
        if (mag <= target) {
            remainder_bound = mag * 2;
            converged = true;
            break;
        }
        total += term;
        apow *= a * a;
        tpow *= t * t;
    }
    if (!converged)
        throw InternalError(
            "tail expansion did not reach the requested precision");
    return BigFloat::from_rational_with_err(total, remainder_bound,
                                            static_cast<mpfr_prec_t>(work));
}

BigFloat clausen_constant(mpfr_prec_t precision) {
    if (precision < 32) throw UsageError("precision must be at least 32 bits");
    const mpfr_prec_t work = precision + 32;
    BigFloat s1 = inverse_square_sum(Rational(3), Rational(2), work);
    BigFloat s2 = inverse_square_sum(Rational(3), Rational(1), work);
    BigFloat half_sqrt3 = BigFloat::sqrt_ui(3, work).mul_rational(Rational(1, 2));
    return ((s1 - s2) * half_sqrt3).with_doubled_err();
}

ABC constants_ABC(bool lambda_is_zero, mpfr_prec_t prec) {
    const mpfr_prec_t work = prec + 32;
    BigFloat L = clausen_constant(work);
    BigFloat pi = BigFloat::pi(work);
    BigFloat corr = L / (pi * pi * BigFloat::sqrt_ui(3, work));
    ABC out;
    if (lambda_is_zero) {
        out.A = BigFloat::from_rational(Rational(1, 2), work);
        out.B = BigFloat::from_rational(Rational(65, 216), work) - corr;
    } else {
        out.A = BigFloat::from_rational(Rational(1, 3), work);
        out.B = BigFloat::from_rational(Rational(7, 27), work) - corr;
    }
    out.C = BigFloat::from_rational(Rational(2, 3), work);
    return out;
}

BigFloat threshold(int d, bool lambda_is_zero, mpfr_prec_t prec) {
    if (d < 1) throw UsageError("approximation degree must be >= 1");
    ABC abc = constants_ABC(lambda_is_zero, prec + 32);
    BigFloat num = abc.A + abc.C;
    BigFloat den = num - (abc.C - abc.B).mul_rational(Rational(d));
    if (!den.sign_certain() || den.certified_sign() <= 0)
        throw UsageError("degree " + std::to_string(d) +
                         " excluded: threshold denominator is not positive");
    return num / den;
}

BigFloat threshold_closed_form(int d, bool lambda_is_zero, mpfr_prec_t prec) {
    const mpfr_prec_t work = prec + 32;
    BigFloat L = clausen_constant(work);
    BigFloat pi = BigFloat::pi(work);
    BigFloat pi2 = pi * pi;
    BigFloat s3L = BigFloat::sqrt_ui(3, work) * L;
    long num_c, den_pi, den_s3l;
    if (lambda_is_zero && d == 2) {
        num_c = 126; den_pi = 47; den_s3l = 72;
    } else if (lambda_is_zero && d == 1) {
        num_c = 252; den_pi = 173; den_s3l = 72;
    } else if (!lambda_is_zero && d == 2) {
        num_c = 27; den_pi = 5; den_s3l = 18;
    } else if (!lambda_is_zero && d == 1) {
        num_c = 27; den_pi = 16; den_s3l = 9;
    } else {
        throw UsageError("closed form available only for degrees 1 and 2");
    }
    return pi2.mul_rational(Rational(num_c)) /
           (pi2.mul_rational(Rational(den_pi)) -
            s3L.mul_rational(Rational(den_s3l)));
}

ConstantsReport constants_report(mpfr_prec_t prec) {
    ConstantsReport rep;
    rep.precision = prec;
    rep.imLi2 = clausen_constant(prec);
    {
        ABC a0 = constants_ABC(true, prec);
        ABC a1 = constants_ABC(false, prec);
        rep.A_lambda0 = a0.A;
        rep.B_lambda0 = a0.B;
        rep.A_general = a1.A;
        rep.B_general = a1.B;
        rep.C = a0.C;
    }
    {
        const mpfr_prec_t work = prec + 32;
        BigFloat pi = BigFloat::pi(work);
        BigFloat corr =
            rep.imLi2 / (pi * pi * BigFloat::sqrt_ui(3, work));
        rep.c_weighted = BigFloat::from_rational(Rational(5, 54), work) - corr;
    }
    rep.all_agree = true;
    for (bool lz : {true, false}) {
        for (int d : {1, 2}) {
            ThresholdEntry e;
            e.d = d;
            e.lambda_is_zero = lz;
            e.gamma = threshold(d, lz, prec);
            e.gamma_closed = threshold_closed_form(d, lz, prec);
            e.agree = e.gamma.agrees_with(e.gamma_closed);
            if (!e.agree) rep.all_agree = false;
            rep.thresholds.push_back(std::move(e));
        }
    }
    return rep;
}

WeightedExponentSum weighted_exponent_sum(unsigned n, unsigned chunk) {
    if (n < 3) throw UsageError("weighted exponent sum requires n >= 3");
    if (chunk == 0) chunk = 1024;
    const std::uint32_t lmax = (n - 1) / 2;
    const std::vector<std::uint32_t> phi = totient_sieve(lmax);
    WeightedExponentSum out;
    out.n = n;
    out.sum = 0;
    for (std::uint32_t lo = 1; lo <= lmax; lo += chunk) {
        const std::uint32_t hi =
            std::min<std::uint64_t>(lmax, std::uint64_t{lo} + chunk - 1);
        Integer block(0);
        for (std::uint32_t l = lo; l <= hi; ++l) {
            const long e = e_l_formula(l, n);
            if (e > 0)
                block += Integer(static_cast<unsigned long>(e)) *
                         static_cast<unsigned long>(phi[l]);
        }
        out.sum += block;
    }
    const Integer n3 = Integer(static_cast<unsigned long>(n)) *
                       static_cast<unsigned long>(n) *
                       static_cast<unsigned long>(n);
    out.ratio = Rational(out.sum) / Rational(n3);
    return out;
}

SumelPartial sumel_partial(const Rational& a, const Rational& c, unsigned n) {
    if (a <= 0) throw UsageError("step a must be positive");
    if (c < 0 || c >= a) throw UsageError("offset c must satisfy 0 <= c < a");
    SumelPartial out;
    out.a = a;
    out.c = c;
    out.n = n;
    // inner terms vanish once (n + c l) < a l, i.e. for l > n/(a-c)
    const Rational width = a - c;
    Integer lmax;
    mpz_fdiv_q(lmax.get_mpz_t(),
               Integer(Integer(static_cast<unsigned long>(n)) *
                       width.get_den()).get_mpz_t(),
               width.get_num().get_mpz_t());
    if (lmax > 50'000'000)
        throw UsageError("partial sum range too large for the totient sieve");
    const std::uint32_t L = static_cast<std::uint32_t>(lmax.get_ui());
    const std::vector<std::uint32_t> phi = totient_sieve(L);
    out.sum = 0;
    for (std::uint32_t l = 1; l <= L; ++l) {
        const Rational al = a * Rational(static_cast<unsigned long>(l));
        const Rational cl = c * Rational(static_cast<unsigned long>(l));
        // floor((i + cl)/(al)) = floor((A i + B)/M) over a common denominator
        const Integer A = al.get_den() * cl.get_den();
        const Integer B = al.get_den() * cl.get_num();
        const Integer M = cl.get_den() * al.get_num();
        Integer inner =
            floor_sum(Integer(static_cast<unsigned long>(n) + 1), A, B, M);
        out.sum += Integer(static_cast<unsigned long>(phi[l])) * inner;
    }
    const mpfr_prec_t work = 96;
    BigFloat s = inverse_square_sum(a, c, work);
    BigFloat pi = BigFloat::pi(work);
    const Integer n3 = Integer(static_cast<unsigned long>(n)) *
                       static_cast<unsigned long>(n) *
                       static_cast<unsigned long>(n);
    out.prediction = s.mul_rational(Rational(n3)) / (pi * pi);
    out.ratio = BigFloat::from_rational(Rational(out.sum), work) / out.prediction;
    return out;
}

DecayReport decay_experiment(const Rational& q, const Rational& alpha,
                             const Rational& lambda, unsigned n_max,
                             unsigned cap) {
    if (n_max < 2) throw UsageError("n_max must be at least 2");
    if (n_max > cap)
        throw UsageError("n_max exceeds the configured cap of " +
                         std::to_string(cap));
    if (alpha == 0) throw UsageError("alpha must be nonzero");
    DecayReport rep;
    rep.q = q;
    rep.alpha = alpha;
    rep.lambda = lambda;
    rep.n_max = n_max;
    rep.lambda_is_zero = (lambda == 0);
    rep.positivity_applies = rep.lambda_is_zero && q > 1 && alpha > 0;
    // precision policy: worst-case |V_n| ~ |q|^{-n^3/2}, with headroom
    double lg;
    {
        mpfr_t t;
        mpfr_init2(t, 64);
        mpfr_set_q(t, rat_abs(q).get_mpq_t(), MPFR_RNDN);
        mpfr_log2(t, t, MPFR_RNDN);
        lg = mpfr_get_d(t, MPFR_RNDN);
        mpfr_clear(t);
    }
    const double need = 0.6 * std::pow(static_cast<double>(n_max), 3.0) * lg;
    if (!(need < 16'000'000.0))
        throw UsageError("precision policy exceeds practical limits");
    rep.bits = static_cast<mpfr_prec_t>(std::ceil(need)) + 256;
    NumericSeq seq(q, alpha, lambda, rep.bits);  // validates q and lambda
    BigFloat log2q =
        BigFloat::from_rational(rat_abs(q), 256).log2();
    for (unsigned n = 2; n <= n_max; ++n) {
        std::vector<std::vector<BigFloat>> m(
            n, std::vector<BigFloat>(n, BigFloat(rep.bits)));
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) m[i][j] = seq.v(i + j);
        BigFloat det = det_ball(std::move(m), rep.bits);
        const int sign = det.certified_sign();
        if (sign == 0)
            throw InternalError("determinant vanished exactly at n = " +
                                std::to_string(n));
        if (rep.positivity_applies && sign < 0)
            throw InternalError(
                "determinant negative where positivity is guaranteed, n = " +
                std::to_string(n));
        DecayRow row;
        row.n = n;
        row.sign = sign;
        row.log_q_det = det.abs().log2() / log2q;
        if (!row.log_q_det.err_at_most(Rational(1, 2)))
            throw PrecisionError(
                "log enclosure wider than 0.5 at n = " + std::to_string(n) +
                "; increase working precision");
        const Integer n3 = Integer(static_cast<unsigned long>(n)) *
                           static_cast<unsigned long>(n) *
                           static_cast<unsigned long>(n);
        row.ratio = (-row.log_q_det).mul_rational(Rational(Integer(1), n3));
        rep.rows.push_back(std::move(row));
    }
    ABC abc = constants_ABC(rep.lambda_is_zero, 64);
    rep.ref_A = abc.A;
    rep.ref_AB = abc.A + abc.B;
    return rep;
}

}  // namespace qhankel
