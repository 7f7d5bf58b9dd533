#include "qhankel/qseq.hpp"

#include <string>

#include "qhankel/errors.hpp"

namespace qhankel {

namespace {

const MultiPoly kOne = MultiPoly::constant(Rational(1));

// q^j - lambda
MultiPoly q_power_minus_lambda(const SeqContext& ctx, long j) {
    return MultiPoly::monomial(Rational(1), static_cast<int>(j)) -
           ctx.lambda_poly();
}

}  // namespace

MultiPoly SeqContext::alpha_poly() const {
    return alpha_ ? MultiPoly::constant(*alpha_) : MultiPoly::variable(Var::alpha);
}

MultiPoly SeqContext::lambda_poly() const {
    return lambda_ ? MultiPoly::constant(*lambda_)
                   : MultiPoly::variable(Var::lambda);
}

MultiPoly SeqContext::seed_poly() const {
    return x_ ? MultiPoly::constant(*x_) : MultiPoly::variable(Var::mu);
}

MultiPoly SeqContext::alpha_power(long e) const {
    if (e >= 0) {
        if (alpha_) return MultiPoly::constant(pow_rational(*alpha_, e));
        return MultiPoly::variable(Var::alpha, static_cast<int>(e));
    }
    if (!alpha_ || *alpha_ == 0)
        throw UsageError(
            "negative alpha powers require an explicit nonzero rational alpha");
    return MultiPoly::constant(pow_rational(*alpha_, e));
}

const MultiPoly& SeqContext::v(int n) const {
    std::lock_guard<std::mutex> lock(mtx_);
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    if (n < 0) {
        if (!lambda_is_zero())
            throw UsageError("negative indices undefined for lambda != 0");
        if (!alpha_ || *alpha_ == 0)
            throw UsageError("negative indices require explicit nonzero alpha");
    }
    if (!memo_.count(0)) memo_.emplace(0, seed_poly() - kOne);
    if (n >= 0) {
        for (int k = 1; k <= n; ++k) {
            if (memo_.count(k)) continue;
            MultiPoly val = q_power_minus_lambda(*this, k) * memo_.at(k - 1) -
                            alpha_power(k);
            memo_.emplace(k, std::move(val));
        }
    } else {
        // v_k = q^{-k-1} (v_{k+1} + alpha^{k+1}) going downward (lambda = 0).
        for (int k = -1; k >= n; --k) {
            if (memo_.count(k)) continue;
            MultiPoly val = (memo_.at(k + 1) + alpha_power(k + 1)).shift_q(-k - 1);
            memo_.emplace(k, std::move(val));
        }
    }
    return memo_.at(n);
}

MultiPoly v_closed_form(const SeqContext& ctx, unsigned n) {
    // suffix[k] = prod_{j=k+1}^{n} (q^j - lambda)
    std::vector<MultiPoly> suffix(n + 1, kOne);
    for (long k = static_cast<long>(n) - 1; k >= 0; --k)
        suffix[k] = q_power_minus_lambda(ctx, k + 1) * suffix[k + 1];
    MultiPoly result = ctx.seed_poly() * suffix[0];
    for (unsigned k = 0; k <= n; ++k) result -= ctx.alpha_power(k) * suffix[k];
    return result;
}

MultiPoly gauss_binomial(long m, long k) {
    if (k < 0) return MultiPoly();
    if (k == 0) return kOne;
    if (m < 0) {
        // [m,k] = (-1)^k q^{mk - k(k-1)/2} [k-m-1, k]
        MultiPoly base = gauss_binomial(k - m - 1, k);
        base = base.shift_q(static_cast<int>(m * k - k * (k - 1) / 2));
        return (k % 2) ? -base : base;
    }
    if (m < k) return MultiPoly();
    MultiPoly num = kOne, den = kOne;
    for (long i = 0; i < k; ++i)
        num *= kOne - MultiPoly::monomial(Rational(1), static_cast<int>(m - i));
    for (long i = 1; i <= k; ++i)
        den *= kOne - MultiPoly::monomial(Rational(1), static_cast<int>(i));
    auto quot = num.divided_exact_q(den);
    if (!quot)
        throw InternalError("q-binomial division not exact at m=" +
                            std::to_string(m) + " k=" + std::to_string(k));
    return *quot;
}

ShiftOp ShiftOp::term(MultiPoly c, unsigned shift) {
    ShiftOp op;
    op.c_.assign(shift + 1, MultiPoly());
    op.c_[shift] = std::move(c);
    return op;
}

ShiftOp ShiftOp::from_coeffs(std::vector<MultiPoly> cs) {
    if (cs.empty()) cs.push_back(MultiPoly());
    ShiftOp op;
    op.c_ = std::move(cs);
    return op;
}

ShiftOp ShiftOp::operator*(const ShiftOp& o) const {
    std::vector<MultiPoly> out(c_.size() + o.c_.size() - 1, MultiPoly());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            out[i + j] += c_[i] * o.c_[j];
        }
    }
    return from_coeffs(std::move(out));
}

ShiftOp ShiftOp::pow(unsigned e) const {
    ShiftOp out;
    for (unsigned i = 0; i < e; ++i) out = out * *this;
    return out;
}

MultiPoly ShiftOp::apply(const SeqContext& ctx, int n) const {
    MultiPoly out;
    for (std::size_t s = 0; s < c_.size(); ++s) {
        if (c_[s].is_zero()) continue;
        out += c_[s] * ctx.v(n - static_cast<int>(s));
    }
    return out;
}

ShiftOp shift_op_D(const SeqContext& ctx, unsigned l) {
    ShiftOp op;
    const MultiPoly lam_minus_alpha = ctx.lambda_poly() - ctx.alpha_poly();
    const MultiPoly neg_lam_alpha = -(ctx.lambda_poly() * ctx.alpha_poly());
    for (unsigned k = 0; k < l; ++k) {
        // I + (lambda - alpha) q^k N - lambda alpha q^{2k} N^2
        op = op * ShiftOp::from_coeffs(
                      {kOne, lam_minus_alpha.shift_q(static_cast<int>(k)),
                       neg_lam_alpha.shift_q(static_cast<int>(2 * k))});
    }
    return op;
}

ShiftOp shift_op_Dtilde(const SeqContext& ctx, unsigned l) {
    ShiftOp op;
    for (unsigned k = 1; k <= l; ++k) {
        // I - alpha q^{-k} N
        op = op * ShiftOp::from_coeffs(
                      {kOne, -(ctx.alpha_poly().shift_q(-static_cast<int>(k)))});
    }
    return op;
}

MultiPoly apply_D(const SeqContext& ctx, unsigned l, int n) {
    return shift_op_D(ctx, l).apply(ctx, n);
}

MultiPoly apply_Dtilde(const SeqContext& ctx, unsigned l, int n) {
    return shift_op_Dtilde(ctx, l).apply(ctx, n);
}

Rational roots_of_unity_product(unsigned l, const Rational& lambda) {
    Rational p = pow_rational(lambda, l) - 1;
    return (l % 2) ? Rational(-p) : p;
}

MultiPoly apply_FG(const SeqContext& ctx, unsigned l, unsigned m, int n,
                   bool force) {
    if (l == 0 || m == 0) throw UsageError("filter orders l, m must be positive");
    if (!ctx.alpha() || !ctx.lambda())
        throw UsageError("filtered sequence requires rational alpha and lambda");
    const long threshold = static_cast<long>(3 * m - 1) * l;
    if (n < threshold && !force)
        throw UsageError("divisibility not guaranteed below (3m-1)l = " +
                         std::to_string(threshold) +
                         " (pass force to compute anyway)");
    const Rational B = roots_of_unity_product(l, *ctx.lambda());
    const Rational al = pow_rational(*ctx.alpha(), l);
    // (I - B N^l)
    std::vector<MultiPoly> lin(l + 1, MultiPoly());
    lin[0] = kOne;
    lin[l] = MultiPoly::constant(-B);
    ShiftOp ib = ShiftOp::from_coeffs(lin);
    // (I - alpha^l N^l)
    lin.assign(l + 1, MultiPoly());
    lin[0] = kOne;
    lin[l] = MultiPoly::constant(-al);
    ShiftOp ia = ShiftOp::from_coeffs(lin);
    ShiftOp w = ib.pow(2 * m - 1) * ia.pow(m);
    return w.apply(ctx, n);
}

}  // namespace qhankel
