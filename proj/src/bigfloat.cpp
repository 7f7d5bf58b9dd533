#include "qhankel/bigfloat.hpp"

#include <cstdio>
#include <vector>

#include "qhankel/errors.hpp"

namespace qhankel {

namespace {

constexpr mpfr_prec_t kErrPrec = 64;

// t = |x| rounded up at error precision.
void abs_up(mpfr_t t, mpfr_srcptr x) { mpfr_abs(t, x, MPFR_RNDU); }

}  // namespace

BigFloat::BigFloat(mpfr_prec_t prec) : prec_(prec) {
    if (prec < 32) throw UsageError("precision must be at least 32 bits");
    mpfr_init2(v_, prec_);
    mpfr_set_zero(v_, 1);
    mpfr_init2(e_, kErrPrec);
    mpfr_set_zero(e_, 1);
}

BigFloat::BigFloat(const BigFloat& o) : prec_(o.prec_) {
    mpfr_init2(v_, prec_);
    mpfr_set(v_, o.v_, MPFR_RNDN);
    mpfr_init2(e_, kErrPrec);
    mpfr_set(e_, o.e_, MPFR_RNDU);
}

BigFloat::BigFloat(BigFloat&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(v_, 32);
    mpfr_init2(e_, kErrPrec);
    mpfr_swap(v_, o.v_);
    mpfr_swap(e_, o.e_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec_);
        mpfr_set(v_, o.v_, MPFR_RNDN);
        mpfr_set(e_, o.e_, MPFR_RNDU);
        prec_ = o.prec_;
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    mpfr_swap(e_, o.e_);
    prec_ = o.prec_;
    return *this;
}

BigFloat::~BigFloat() {
    mpfr_clear(v_);
    mpfr_clear(e_);
}

void BigFloat::bump_rounding_err(int ternary) {
    if (ternary == 0) return;  // exact result, no rounding error
    if (mpfr_zero_p(v_))
        throw PrecisionError("underflow to zero with inexact rounding");
    // |rounding error| <= ulp <= 2^(exp - prec); exp per MPFR's 0.5<=m<1 scale.
    mpfr_t ulp;
    mpfr_init2(ulp, kErrPrec);
    mpfr_set_ui_2exp(ulp, 1, mpfr_get_exp(v_) - prec_, MPFR_RNDU);
    mpfr_add(e_, e_, ulp, MPFR_RNDU);
    mpfr_clear(ulp);
}

BigFloat BigFloat::from_rational(const Rational& r, mpfr_prec_t prec) {
    BigFloat x(prec);
    int t = mpfr_set_q(x.v_, r.get_mpq_t(), MPFR_RNDN);
    x.bump_rounding_err(t);
    return x;
}

BigFloat BigFloat::from_long(long v, mpfr_prec_t prec) {
    BigFloat x(prec);
    int t = mpfr_set_si(x.v_, v, MPFR_RNDN);
    x.bump_rounding_err(t);
    return x;
}

BigFloat BigFloat::from_rational_with_err(const Rational& val,
                                          const Rational& err_bound,
                                          mpfr_prec_t prec) {
    if (err_bound < 0) throw UsageError("negative error bound");
    BigFloat x = from_rational(val, prec);
    mpfr_t eb;
    mpfr_init2(eb, kErrPrec);
    mpfr_set_q(eb, err_bound.get_mpq_t(), MPFR_RNDU);
    mpfr_add(x.e_, x.e_, eb, MPFR_RNDU);
    mpfr_clear(eb);
    return x;
}

BigFloat BigFloat::pi(mpfr_prec_t prec) {
    BigFloat x(prec);
    int t = mpfr_const_pi(x.v_, MPFR_RNDN);
    x.bump_rounding_err(t);
    return x;
}

BigFloat BigFloat::sqrt_ui(unsigned long v, mpfr_prec_t prec) {
    BigFloat x(prec);
    int t = mpfr_sqrt_ui(x.v_, v, MPFR_RNDN);
    x.bump_rounding_err(t);
    return x;
}

BigFloat BigFloat::operator+(const BigFloat& o) const {
    BigFloat out(std::max(prec_, o.prec_));
    int t = mpfr_add(out.v_, v_, o.v_, MPFR_RNDN);
    mpfr_add(out.e_, e_, o.e_, MPFR_RNDU);
    out.bump_rounding_err(t);
    return out;
}

BigFloat BigFloat::operator-(const BigFloat& o) const {
    BigFloat out(std::max(prec_, o.prec_));
    int t = mpfr_sub(out.v_, v_, o.v_, MPFR_RNDN);
    mpfr_add(out.e_, e_, o.e_, MPFR_RNDU);
    out.bump_rounding_err(t);
    return out;
}

BigFloat BigFloat::operator*(const BigFloat& o) const {
    BigFloat out(std::max(prec_, o.prec_));
    int t = mpfr_mul(out.v_, v_, o.v_, MPFR_RNDN);
    // |a||eb| + |b||ea| + ea*eb
    mpfr_t va, vb, term;
    mpfr_init2(va, kErrPrec);
    mpfr_init2(vb, kErrPrec);
    mpfr_init2(term, kErrPrec);
    abs_up(va, v_);
    abs_up(vb, o.v_);
    mpfr_mul(term, va, o.e_, MPFR_RNDU);
    mpfr_add(out.e_, out.e_, term, MPFR_RNDU);
    mpfr_mul(term, vb, e_, MPFR_RNDU);
    mpfr_add(out.e_, out.e_, term, MPFR_RNDU);
    mpfr_mul(term, e_, o.e_, MPFR_RNDU);
    mpfr_add(out.e_, out.e_, term, MPFR_RNDU);
    mpfr_clears(va, vb, term, static_cast<mpfr_ptr>(nullptr));
    out.bump_rounding_err(t);
    return out;
}

BigFloat BigFloat::operator/(const BigFloat& o) const {
    if (!o.sign_certain())
        throw PrecisionError("division by a ball that may contain zero");
    BigFloat out(std::max(prec_, o.prec_));
    int t = mpfr_div(out.v_, v_, o.v_, MPFR_RNDN);
    // (|a| eb + |b| ea) / (|b| (|b| - eb))
    mpfr_t va, vb, num, den, term;
    mpfr_init2(va, kErrPrec);
    mpfr_init2(vb, kErrPrec);
    mpfr_init2(num, kErrPrec);
    mpfr_init2(den, kErrPrec);
    mpfr_init2(term, kErrPrec);
    abs_up(va, v_);
    abs_up(vb, o.v_);
    mpfr_mul(num, va, o.e_, MPFR_RNDU);
    mpfr_mul(term, vb, e_, MPFR_RNDU);
    mpfr_add(num, num, term, MPFR_RNDU);
    mpfr_abs(den, o.v_, MPFR_RNDD);  // round |b| down for a larger quotient
    mpfr_sub(den, den, o.e_, MPFR_RNDD);
    mpfr_mul(term, den, den, MPFR_RNDD);
    // den*(actually |b|*(|b|-eb)); using (|b|-eb)^2 <= |b|(|b|-eb) keeps it safe
    mpfr_div(num, num, term, MPFR_RNDU);
    mpfr_add(out.e_, out.e_, num, MPFR_RNDU);
    mpfr_clears(va, vb, num, den, term, static_cast<mpfr_ptr>(nullptr));
    out.bump_rounding_err(t);
    return out;
}

BigFloat BigFloat::operator-() const {
    BigFloat out(*this);
    mpfr_neg(out.v_, out.v_, MPFR_RNDN);
    return out;
}

BigFloat BigFloat::abs() const {
    BigFloat out(*this);
    mpfr_abs(out.v_, out.v_, MPFR_RNDN);
    return out;
}

BigFloat BigFloat::add_rational(const Rational& r) const {
    BigFloat out(prec_);
    int t = mpfr_add_q(out.v_, v_, r.get_mpq_t(), MPFR_RNDN);
    mpfr_set(out.e_, e_, MPFR_RNDU);
    out.bump_rounding_err(t);
    return out;
}

BigFloat BigFloat::mul_rational(const Rational& r) const {
    BigFloat out(prec_);
    int t = mpfr_mul_q(out.v_, v_, r.get_mpq_t(), MPFR_RNDN);
    mpfr_t ra, term;
    mpfr_init2(ra, kErrPrec);
    mpfr_init2(term, kErrPrec);
    mpfr_set_q(ra, r.get_mpq_t(), MPFR_RNDU);
    mpfr_abs(ra, ra, MPFR_RNDU);
    mpfr_mul(term, ra, e_, MPFR_RNDU);
    mpfr_set(out.e_, term, MPFR_RNDU);
    mpfr_clears(ra, term, static_cast<mpfr_ptr>(nullptr));
    out.bump_rounding_err(t);
    return out;
}

BigFloat BigFloat::sqrt() const {
    if (!certified_at_least(Rational(0)) || !sign_certain())
        throw PrecisionError("sqrt of a ball not certified positive");
    BigFloat out(prec_);
    int t = mpfr_sqrt(out.v_, v_, MPFR_RNDN);
    // |sqrt(x) - sqrt(y)| <= |x-y| / (2 sqrt(lower))
    mpfr_t low, den;
    mpfr_init2(low, kErrPrec);
    mpfr_init2(den, kErrPrec);
    mpfr_sub(low, v_, e_, MPFR_RNDD);
    mpfr_sqrt(den, low, MPFR_RNDD);
    mpfr_mul_ui(den, den, 2, MPFR_RNDD);
    mpfr_div(out.e_, e_, den, MPFR_RNDU);
    mpfr_clears(low, den, static_cast<mpfr_ptr>(nullptr));
    out.bump_rounding_err(t);
    return out;
}

BigFloat BigFloat::log2() const {
    if (mpfr_sgn(v_) <= 0 || !sign_certain())
        throw PrecisionError("log2 of a ball not certified positive");
    BigFloat out(prec_);
    int t = mpfr_log2(out.v_, v_, MPFR_RNDN);
    // |log2 x - log2 y| <= |x-y| / (lower * ln 2)
    mpfr_t low, ln2;
    mpfr_init2(low, kErrPrec);
    mpfr_init2(ln2, kErrPrec);
    mpfr_sub(low, v_, e_, MPFR_RNDD);
    mpfr_const_log2(ln2, MPFR_RNDD);
    mpfr_mul(low, low, ln2, MPFR_RNDD);
    mpfr_div(out.e_, e_, low, MPFR_RNDU);
    mpfr_clears(low, ln2, static_cast<mpfr_ptr>(nullptr));
    out.bump_rounding_err(t);
    return out;
}

BigFloat BigFloat::with_doubled_err() const {
    BigFloat out(*this);
    mpfr_mul_ui(out.e_, out.e_, 2, MPFR_RNDU);
    return out;
}

bool BigFloat::sign_certain() const {
    if (mpfr_zero_p(v_)) return mpfr_zero_p(e_);
    mpfr_t va;
    mpfr_init2(va, kErrPrec);
    mpfr_abs(va, v_, MPFR_RNDD);
    bool ok = mpfr_cmp(va, e_) > 0;
    mpfr_clear(va);
    return ok;
}

int BigFloat::certified_sign() const {
    if (mpfr_zero_p(v_) && mpfr_zero_p(e_)) return 0;
    if (!sign_certain())
        throw PrecisionError("sign not certified at current precision");
    return mpfr_sgn(v_);
}

bool BigFloat::certified_at_least(const Rational& r) const {
    // value - err >= r
    mpfr_t low;
    mpfr_init2(low, prec_ + 64);
    mpfr_sub(low, v_, e_, MPFR_RNDD);
    bool ok = mpfr_cmp_q(low, r.get_mpq_t()) >= 0;
    mpfr_clear(low);
    return ok;
}

bool BigFloat::certified_at_most(const Rational& r) const {
    mpfr_t high;
    mpfr_init2(high, prec_ + 64);
    mpfr_add(high, v_, e_, MPFR_RNDU);
    bool ok = mpfr_cmp_q(high, r.get_mpq_t()) <= 0;
    mpfr_clear(high);
    return ok;
}

bool BigFloat::certified_less_than(const BigFloat& o) const {
    mpfr_t high, low;
    mpfr_init2(high, prec_ + 64);
    mpfr_init2(low, o.prec_ + 64);
    mpfr_add(high, v_, e_, MPFR_RNDU);
    mpfr_sub(low, o.v_, o.e_, MPFR_RNDD);
    bool ok = mpfr_cmp(high, low) < 0;
    mpfr_clears(high, low, static_cast<mpfr_ptr>(nullptr));
    return ok;
}

bool BigFloat::agrees_with(const BigFloat& o) const {
    mpfr_t diff, tol;
    mpfr_init2(diff, std::max(prec_, o.prec_) + 64);
    mpfr_init2(tol, kErrPrec);
    mpfr_sub(diff, v_, o.v_, MPFR_RNDA);
    mpfr_abs(diff, diff, MPFR_RNDU);
    mpfr_add(tol, e_, o.e_, MPFR_RNDU);
    bool ok = mpfr_cmp(diff, tol) <= 0;
    mpfr_clears(diff, tol, static_cast<mpfr_ptr>(nullptr));
    return ok;
}

bool BigFloat::contains(const Rational& r) const {
    mpfr_t diff;
    mpfr_init2(diff, prec_ + 64);
    mpfr_sub_q(diff, v_, r.get_mpq_t(), MPFR_RNDA);
    mpfr_abs(diff, diff, MPFR_RNDU);
    bool ok = mpfr_cmp(diff, e_) <= 0;
    mpfr_clear(diff);
    return ok;
}

bool BigFloat::within(const BigFloat& o) const {
    // [v-e, v+e] subset of [ov-oe, ov+oe]
    mpfr_t a, b;
    mpfr_init2(a, std::max(prec_, o.prec_) + 64);
    mpfr_init2(b, std::max(prec_, o.prec_) + 64);
    mpfr_sub(a, v_, e_, MPFR_RNDD);
    mpfr_sub(b, o.v_, o.e_, MPFR_RNDD);
    bool lo_ok = mpfr_cmp(a, b) >= 0;
    mpfr_add(a, v_, e_, MPFR_RNDU);
    mpfr_add(b, o.v_, o.e_, MPFR_RNDU);
    bool hi_ok = mpfr_cmp(a, b) <= 0;
    mpfr_clears(a, b, static_cast<mpfr_ptr>(nullptr));
    return lo_ok && hi_ok;
}

std::string BigFloat::value_string(int digits) const {
    char buf[256];
    mpfr_snprintf(buf, sizeof buf, "%.*Re", digits - 1, v_);
    return buf;
}

std::string BigFloat::err_string() const {
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.2Re", e_);
    return buf;
}

bool BigFloat::err_at_most_pow2(long k) const {
    mpfr_t b;
    mpfr_init2(b, kErrPrec);
    mpfr_set_ui_2exp(b, 1, k, MPFR_RNDD);
    bool ok = mpfr_cmp(e_, b) <= 0;
    mpfr_clear(b);
    return ok;
}

bool BigFloat::err_at_most(const Rational& bound) const {
    return mpfr_cmp_q(e_, bound.get_mpq_t()) <= 0;
}

BigFloat eval_ball(const MultiPoly& p, const std::map<Var, BigFloat>& values,
                   mpfr_prec_t prec) {
    BigFloat acc(prec);
    if (p.is_zero()) return acc;
    // per-variable power tables
    std::map<Var, std::vector<BigFloat>> pows;
    auto degs = p.degrees();
    int qmin = p.q_order();
    for (const auto& [v, x] : values) {
        auto& tab = pows[v];
        tab.push_back(BigFloat::from_long(1, prec));
        for (int e = 1; e <= std::max(0, degs[static_cast<int>(v)]); ++e)
            tab.push_back(tab.back() * x);
    }
    std::vector<BigFloat> qneg;  // inverse powers for Laurent terms
    if (qmin < 0) {
        auto it = values.find(Var::q);
        if (it == values.end()) throw UsageError("Laurent term needs a q value");
        BigFloat inv = BigFloat::from_long(1, prec) / it->second;
        qneg.push_back(BigFloat::from_long(1, prec));
        for (int e = 1; e <= -qmin; ++e) qneg.push_back(qneg.back() * inv);
    }
    for (const auto& t : p.terms()) {
        Monomial m{t.key};
        BigFloat term = BigFloat::from_rational(t.coeff, prec);
        for (int v = 0; v < kVarCount; ++v) {
            int e = m.exp(static_cast<Var>(v));
            if (e == 0) continue;
            auto it = values.find(static_cast<Var>(v));
            if (it == values.end())
                throw UsageError(std::string("no value bound for ") + kVarName[v]);
            term = term * (e > 0 ? pows[static_cast<Var>(v)][e] : qneg[-e]);
        }
        acc = acc + term;
    }
    return acc;
}

}  // namespace qhankel
