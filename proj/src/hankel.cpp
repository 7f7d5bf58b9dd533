#include "qhankel/hankel.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <string>
#include <utility>

#include "qhankel/cyclotomic.hpp"
#include "qhankel/errors.hpp"
#include "qhankel/series.hpp"

namespace qhankel {

namespace {

const MultiPoly kOne = MultiPoly::constant(Rational(1));

Rational rat_abs(const Rational& r) {
    Rational a;
    mpq_abs(a.get_mpq_t(), r.get_mpq_t());
    return a;
}

PolyMatrix hankel_block(const std::vector<MultiPoly>& h, unsigned a,
                        unsigned k) {
    PolyMatrix m(k, std::vector<MultiPoly>(k));
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) m[i][j] = h[a + i + j];
    return m;
}

}  // namespace

MultiPoly det_bareiss(PolyMatrix m, bool parallel) {
    const long n = static_cast<long>(m.size());
    if (n == 0) return kOne;
    for (long i = 0; i < n; ++i)
        if (static_cast<long>(m[i].size()) != n)
            throw UsageError("determinant of a non-square matrix");
    int sign = 1;
    MultiPoly prev = kOne;
    for (long k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            long r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return MultiPoly();  // whole pivot column vanished
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        const bool first_step = (k == 0);
        std::atomic<bool> bad{false};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
        for (long i = k + 1; i < n; ++i) {
            if (bad.load(std::memory_order_relaxed)) continue;
            for (long j = k + 1; j < n; ++j) {
                MultiPoly num =
                    MultiPoly::mul_sub(m[k][k], m[i][j], m[i][k], m[k][j]);
                if (first_step) {
                    m[i][j] = std::move(num);
                    continue;
                }
                auto quot = num.divided_exact(prev);
                if (!quot) {
                    bad.store(true, std::memory_order_relaxed);
                    break;
                }
                m[i][j] = std::move(*quot);
            }
        }
        if (bad.load())
            throw InternalError(
                "fraction-free elimination hit an inexact division at step " +
                std::to_string(k));
        for (long i = k + 1; i < n; ++i) m[i][k] = MultiPoly();
        prev = m[k][k];
    }
    MultiPoly det = std::move(m[n - 1][n - 1]);
    return sign < 0 ? -det : det;
}

MultiPoly det_cofactor(const PolyMatrix& m) {
    const unsigned n = static_cast<unsigned>(m.size());
    if (n == 0) return kOne;
    if (n > 12) throw UsageError("cofactor expansion limited to n <= 12");
    // f[mask] = det of the first popcount(mask) rows on the columns in mask
    std::vector<MultiPoly> f(std::size_t{1} << n);
    f[0] = kOne;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const unsigned r = static_cast<unsigned>(std::popcount(mask)) - 1;
        MultiPoly acc;
        unsigned pos = 0;
        for (unsigned j = 0; j < n; ++j) {
            if (!((mask >> j) & 1u)) continue;
            if (!m[r][j].is_zero()) {
                MultiPoly contrib = m[r][j] * f[mask ^ (1u << j)];
                if ((r + pos) % 2)
                    acc -= contrib;
                else
                    acc += contrib;
            }
            ++pos;
        }
        f[mask] = std::move(acc);
    }
    return f[(std::size_t{1} << n) - 1];
}

MultiPoly det_hankel_condensation(const std::vector<MultiPoly>& h, unsigned n) {
    if (n == 0) return kOne;
    if (h.size() < 2 * n - 1)
        throw UsageError("condensation needs 2n-1 Hankel entries");
    if (n == 1) return h[0];
    // level k holds the k x k contiguous-minor determinants D(a, k)
    std::vector<MultiPoly> prev2(2 * n - 1, kOne);             // D(a, 0) = 1
    std::vector<MultiPoly> prev(h.begin(), h.begin() + (2 * n - 1));  // D(a,1)
    for (unsigned k = 1; k < n; ++k) {
        const unsigned cells = 2 * (n - k) - 1;  // a = 0 .. cells-1
        std::vector<MultiPoly> cur(cells);
        for (unsigned a = 0; a < cells; ++a) {
            // D(a,k+1) D(a+2,k-1) = D(a,k) D(a+2,k) - D(a+1,k)^2
            const MultiPoly& den = prev2[a + 2];
            if (den.is_zero()) {
                cur[a] = det_bareiss(hankel_block(h, a, k + 1), false);
                continue;
            }
            MultiPoly num =
                MultiPoly::mul_sub(prev[a], prev[a + 2], prev[a + 1], prev[a + 1]);
            if (num.is_zero()) {
                cur[a] = MultiPoly();
                continue;
            }
            auto quot = num.divided_exact(den);
            if (!quot)
                throw InternalError("condensation division failed at level " +
                                    std::to_string(k + 1));
            cur[a] = std::move(*quot);
        }
        prev2 = std::move(prev);
        prev = std::move(cur);
    }
    return prev[0];
}

Rational det_rational(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t r = k;
        while (r < n && m[r][k] == 0) ++r;
        if (r == n) return Rational(0);
        if (r != k) {
            std::swap(m[k], m[r]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Rational f = m[i][k] / m[k][k];
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] -= f * m[k][j];
            m[i][k] = 0;
        }
    }
    return det;
}

BigFloat det_ball(std::vector<std::vector<BigFloat>> m, mpfr_prec_t prec) {
    const std::size_t n = m.size();
    BigFloat det = BigFloat::from_long(1, prec);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t best = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (mpfr_cmpabs(m[r][k].value(), m[best][k].value()) > 0) best = r;
        if (best != k) {
            std::swap(m[k], m[best]);
            det = -det;
        }
        if (!m[k][k].sign_certain())
            throw PrecisionError(
                "pivot ball may contain zero; increase working precision");
        det = det * m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            BigFloat f = m[i][k] / m[k][k];
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = m[i][j] - f * m[k][j];
        }
    }
    return det;
}

PolyMatrix hankel_matrix(const SeqContext& ctx, unsigned n) {
    if (n == 0) return PolyMatrix{};
    std::vector<MultiPoly> h;
    h.reserve(2 * n - 1);
    for (unsigned m = 0; m < 2 * n - 1; ++m)
        h.push_back(ctx.v(static_cast<int>(m)));
    return hankel_block(h, 0, n);
}

namespace {

// denominator of the j-th Lagrange basis on nodes 0..D: prod_{i!=j} (j-i)
Rational lagrange_denominator(long j, long D) {
    Integer a, b;
    mpz_fac_ui(a.get_mpz_t(), static_cast<unsigned long>(j));
    mpz_fac_ui(b.get_mpz_t(), static_cast<unsigned long>(D - j));
    Integer d = a * b;
    if ((D - j) % 2) d = -d;
    return Rational(d);
}

MultiPoly lagrange_combine(Var t, const std::vector<MultiPoly>& vals) {
    const long D = static_cast<long>(vals.size()) - 1;
    if (D == 0) return vals[0];
    const MultiPoly tvar = MultiPoly::variable(t);
    MultiPoly full = kOne;  // prod_{i=0}^{D} (t - i)
    for (long i = 0; i <= D; ++i)
        full *= tvar - MultiPoly::constant(Rational(i));
    MultiPoly acc;
    for (long j = 0; j <= D; ++j) {
        if (vals[j].is_zero()) continue;
        auto numer = full.divided_exact(tvar - MultiPoly::constant(Rational(j)));
        if (!numer) throw InternalError("interpolation basis division failed");
        acc += (*numer * vals[j]).scaled(1 / lagrange_denominator(j, D));
    }
    return acc;
}

MultiPoly interp_det(const std::vector<MultiPoly>& h, unsigned n,
                     const std::vector<std::pair<Var, long>>& plan,
                     std::size_t depth, bool parallel) {
    if (depth == plan.size()) return det_hankel_condensation(h, n);
    const Var var = plan[depth].first;
    const long D = plan[depth].second;
    std::vector<MultiPoly> vals(D + 1);
    std::atomic<bool> bad{false};
    std::string bad_what;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long j = 0; j <= D; ++j) {
        if (bad.load(std::memory_order_relaxed)) continue;
        try {
            std::vector<MultiPoly> hs;
            hs.reserve(h.size());
            for (const auto& p : h) hs.push_back(p.substituted(var, Rational(j)));
            vals[j] = interp_det(hs, n, plan, depth + 1, false);
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
            bad_what = e.what();
            bad.store(true, std::memory_order_relaxed);
        }
    }
    if (bad.load()) throw InternalError("interpolation node failed: " + bad_what);
    return lagrange_combine(var, vals);
}

}  // namespace

MultiPoly hankel_det(const SeqContext& ctx, unsigned n, DetEngine engine) {
    if (n == 0) return kOne;
    std::vector<MultiPoly> h;
    h.reserve(2 * n - 1);
    for (unsigned m = 0; m < 2 * n - 1; ++m)
        h.push_back(ctx.v(static_cast<int>(m)));
    MultiPoly result;
    switch (engine) {
        case DetEngine::Bareiss:
            result = det_bareiss(hankel_block(h, 0, n), false);
            break;
        case DetEngine::BareissParallel:
            result = det_bareiss(hankel_block(h, 0, n), true);
            break;
        case DetEngine::Cofactor:
            result = det_cofactor(hankel_block(h, 0, n));
            break;
        case DetEngine::Condensation:
            result = det_hankel_condensation(h, n);
            break;
        case DetEngine::Auto: {
            // Symbolic lambda/mu/alpha are removed by exact interpolation at
            // integer nodes (structural degree bounds n(n-1), n and n(n-1)),
            // leaving a univariate-in-q core where the condensation engine's
            // dense arithmetic is cheapest; alpha is innermost so the most
            // frequent recombinations act on the smallest polynomials.
            std::vector<std::pair<Var, long>> plan;
            if (!ctx.lambda())
                plan.emplace_back(Var::lambda,
                                  static_cast<long>(n) * (n - 1));
            if (!ctx.x()) plan.emplace_back(Var::mu, static_cast<long>(n));
            if (!ctx.alpha())
                plan.emplace_back(Var::alpha,
                                  static_cast<long>(n) * (n - 1));
            if (n <= 3 || plan.empty())
                result = det_hankel_condensation(h, n);
            else
                result = interp_det(h, n, plan, 0, true);
            break;
        }
    }
    if (n <= 4) {
        MultiPoly check = det_cofactor(hankel_block(h, 0, n));
        if (check != result)
            throw InternalError("determinant engines disagree at n = " +
                                std::to_string(n));
    }
    return result;
}

Rational hankel_det_rational(const Rational& q, const Rational& alpha,
                             const Rational& lambda, const Rational& x,
                             unsigned n) {
    if (n == 0) return Rational(1);
    std::vector<Rational> v(2 * n - 1);
    v[0] = x - 1;
    Rational qpow(1), apow(1);
    for (unsigned k = 1; k < 2 * n - 1; ++k) {
        qpow *= q;
        apow *= alpha;
        v[k] = (qpow - lambda) * v[k - 1] - apow;
    }
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) m[i][j] = v[i + j];
    return det_rational(std::move(m));
}

long e0_formula(unsigned n, bool lambda_is_zero) {
    const long N = n;
    if (!lambda_is_zero) return N * (N - 1) * (N - 2) / 6;
    if (n % 2 == 0) return N * (N - 2) * (5 * N - 2) / 24;
    return N * (N - 1) * (5 * N - 7) / 24;
}

long e_l_sum_formula(unsigned l, unsigned n) {
    if (l == 0) throw UsageError("cyclotomic index must be >= 1");
    const Integer N(static_cast<unsigned long>(n));
    const Integer m(static_cast<unsigned long>(3 * l));
    Integer s = floor_sum(N, Integer(1), Integer(static_cast<unsigned long>(l)), m) +
                floor_sum(N, Integer(1), Integer(0), m);
    return static_cast<long>(s.get_si());
}

long e_l_compact_formula(unsigned l, unsigned n) {
    if (l == 0) throw UsageError("cyclotomic index must be >= 1");
    const long N = n, L = l;
    const long j = N % (3 * L);
    long val = (N - j) * (N + j - 2 * L) / (3 * L);
    if (j >= 2 * L) val += j - 2 * L;
    return val;
}

long e_l_formula(unsigned l, unsigned n) {
    const long a = e_l_sum_formula(l, n);
    const long b = e_l_compact_formula(l, n);
    if (a != b)
        throw InternalError("cyclotomic exponent formulas disagree at l=" +
                            std::to_string(l) + " n=" + std::to_string(n));
    return a;
}

DegreeBounds degree_bounds(unsigned n) {
    const long N = n;
    return DegreeBounds{N * (N - 1) * (4 * N + 1) / 6, N, N * (N - 1),
                        N * (N - 1)};
}

FactoredDeterminant factorize(const SeqContext& ctx, unsigned n,
                              unsigned probe_limit) {
    if (probe_limit == 0) probe_limit = (n + 1) / 2 + 2;
    MultiPoly V = hankel_det(ctx, n);
    if (V.is_zero()) throw UsageError("zero determinant cannot be factorized");
    FactoredDeterminant out;
    out.n = n;
    out.e0_found = V.q_order();
    out.e0_guaranteed = e0_formula(n, ctx.lambda_is_zero());
    MultiPoly rest = V.shift_q(static_cast<int>(-out.e0_found));
    for (unsigned l = 1; l <= probe_limit; ++l) {
        long mult = 0;
        const MultiPoly& phi = cyclotomic(l);
        for (;;) {
            auto quot = rest.divided_exact_q(phi);
            if (!quot) break;
            rest = std::move(*quot);
            ++mult;
        }
        out.cyclo_exponents[l] = mult;
    }
    for (unsigned l = 1; 2 * l < n; ++l) out.guarantees[l] = e_l_formula(l, n);
    out.cofactor = rest;
    // reassembly identity, checked exactly
    MultiPoly back = rest;
    for (const auto& [l, mult] : out.cyclo_exponents)
        if (mult > 0) back *= cyclotomic(l).pow(static_cast<unsigned long>(mult));
    back = back.shift_q(static_cast<int>(out.e0_found));
    if (back != V) throw InternalError("factorization reassembly failed");
    return out;
}

MultiPoly K_det(unsigned n) {
    const unsigned size = n + 1;
    const MultiPoly mu = MultiPoly::variable(Var::mu);
    PolyMatrix m(size, std::vector<MultiPoly>(size));
    for (unsigned i = 0; i < size; ++i) {
        for (unsigned j = 0; j < size; ++j) {
            if (j == i)
                m[i][j] = mu - kOne;
            else if (j + 1 == i)
                m[i][j] = mu;
            else if (j > i)
                m[i][j] = -MultiPoly::variable(Var::alpha, static_cast<int>(j - i));
        }
    }
    return det_bareiss(std::move(m), false);
}

MultiPoly K_rec(unsigned n) {
    const MultiPoly mu = MultiPoly::variable(Var::mu);
    const MultiPoly alpha = MultiPoly::variable(Var::alpha);
    MultiPoly k0 = mu - kOne;
    if (n == 0) return k0;
    MultiPoly k1 = k0 * k0 + alpha * mu;
    if (n == 1) return k1;
    const MultiPoly c1 = mu - kOne - alpha * mu;
    const MultiPoly c0 = alpha * mu * mu;
    for (unsigned i = 2; i <= n; ++i) {
        MultiPoly k2 = c1 * k1 + c0 * k0;
        k0 = std::move(k1);
        k1 = std::move(k2);
    }
    return k1;
}

MultiPoly leading_coeff_formula(const SeqContext& ctx, unsigned n) {
    if (n == 0) return kOne;
    const long N = n;
    const MultiPoly a = ctx.alpha_poly();
    const MultiPoly seed = ctx.seed_poly();
    if (ctx.lambda_is_zero()) {
        if (n % 2 == 0) {
            const long sign_exp = N * (N + 2) / 8;
            MultiPoly r = a.pow(static_cast<unsigned long>(N * (5 * N - 2) / 8)) *
                          seed.pow(n / 2);
            return (sign_exp % 2) ? -r : r;
        }
        const long sign_exp = (N - 1) * (N - 3) / 8;
        std::array<std::optional<Rational>, kVarCount> sub{};
        if (ctx.alpha()) sub[static_cast<int>(Var::alpha)] = *ctx.alpha();
        if (ctx.x()) sub[static_cast<int>(Var::mu)] = *ctx.x();
        MultiPoly K = K_rec((n - 1) / 2).substituted(sub);
        MultiPoly r =
            a.pow(static_cast<unsigned long>((N - 1) * (5 * N + 1) / 8)) * K;
        return (sign_exp % 2) ? -r : r;
    }
    const MultiPoly lam = ctx.lambda_poly();
    const MultiPoly core = lam - (lam + a) * seed;
    const MultiPoly apow = a.pow(static_cast<unsigned long>(N * (N - 1) / 2));
    if (n % 2 == 0)
        return apow * lam.pow(static_cast<unsigned long>(N * (N - 2) / 4)) *
               core.pow(n / 2);
    return apow * lam.pow(static_cast<unsigned long>((N - 1) * (N - 1) / 4)) *
           (seed - kOne) * core.pow((n - 1) / 2);
}

ConjectureLambda1Report conjecture_lambda1(unsigned n, const Rational& alpha,
                                           const Rational& mu) {
    if (n < 2) throw UsageError("conjecture check requires n >= 2");
    ConjectureLambda1Report rep;
    rep.n = n;
    rep.alpha = alpha;
    rep.mu = mu;
    SeqContext ctx(alpha, Rational(1), mu);
    const unsigned probe = n + 1;
    FactoredDeterminant fd = factorize(ctx, n, probe);
    // convert cyclotomic exponents e_d = sum_{d | l} te_l to te_l, greedily
    // from the largest l down (the divisor lattice is triangular this way)
    std::map<unsigned, long> te;
    rep.pattern_valid = true;
    for (unsigned l = probe; l >= 1; --l) {
        long value = fd.cyclo_exponents.count(l) ? fd.cyclo_exponents.at(l) : 0;
        for (unsigned L = 2 * l; L <= probe; L += l) value -= te[L];
        te[l] = value;
        if (value < 0) rep.pattern_valid = false;
    }
    rep.exponents_agree = true;
    long weighted = 0;
    for (unsigned l = 1; l <= probe; ++l) {
        long expected = 2 * std::max(0L, static_cast<long>(n) - 2 * static_cast<long>(l));
        ConjectureRow row{l, expected, te[l]};
        if (row.found != row.expected) rep.exponents_agree = false;
        weighted += te[l] * static_cast<long>(l);
        rep.rows.push_back(row);
    }
    rep.deg_delta_found = fd.e0_found + weighted;
    const long N = n;
    rep.deg_delta_expected =
        (n % 2) ? N * (N - 1) * (N - 1) / 4 : N * N * (N - 2) / 4;
    rep.degree_agrees = (rep.deg_delta_found == rep.deg_delta_expected);
    return rep;
}

KroneckerScan kronecker_scan(const Rational& x, const Rational& q,
                             const Rational& alpha, const Rational& lambda,
                             unsigned n_max) {
    if (rat_abs(q) <= 1) throw UsageError("|q| must exceed 1");
    if (alpha == 0) throw UsageError("precondition failed: alpha = 0");
    if (is_scaled_q_power(q, Rational(1), lambda))
        throw UsageError(
            "precondition failed: lambda is a positive power of q");
    if (is_scaled_q_power(q, -lambda, alpha))
        throw UsageError(
            "precondition failed: alpha = -lambda * (positive power of q)");
    KroneckerScan scan;
    scan.q = q;
    scan.alpha = alpha;
    scan.lambda = lambda;
    scan.x = x;
    for (unsigned n = 1; n <= n_max; ++n) {
        Rational d = hankel_det_rational(q, alpha, lambda, x, n);
        if (d == 0)
            scan.zero.push_back(n);
        else
            scan.nonzero.push_back(n);
        scan.dets.push_back(std::move(d));
    }
    return scan;
}

BezivinSum bezivin_sum(const Rational& q, const Rational& alpha, unsigned n,
                       unsigned J) {
    if (q <= 1) throw UsageError("positive-sum expansion requires q > 1");
    if (alpha <= 0) throw UsageError("positive-sum expansion requires alpha > 0");
    if (n == 0 || J < n) throw UsageError("need J >= n >= 1");
    // u_j = alpha^j q^{-j(j+1)/2}, s_j = q^{-j}
    std::vector<Rational> u(J + 1), s(J + 1);
    {
        Rational apow(1), qinv = Rational(1) / q, qfac(1);
        for (unsigned j = 1; j <= J; ++j) {
            apow *= alpha;
            qfac *= pow_rational(qinv, static_cast<long>(j));
            u[j] = apow * qfac;
            s[j] = pow_rational(qinv, static_cast<long>(j));
        }
    }
    Rational total(0);
    std::vector<unsigned> tuple(n);
    // enumerate 1 <= j_1 < ... < j_n <= J
    auto rec = [&](auto&& self, unsigned idx, unsigned lo) -> void {
        if (idx == n) {
            Rational term(1);
            for (unsigned i = 0; i < n; ++i) term *= u[tuple[i]];
            for (unsigned a = 0; a < n; ++a)
                for (unsigned b = a + 1; b < n; ++b) {
                    Rational d = s[tuple[a]] - s[tuple[b]];
                    term *= d * d;
                }
            total += term;
            return;
        }
        for (unsigned j = lo; j + (n - idx) <= J + 1; ++j) {
            tuple[idx] = j;
            self(self, idx + 1, j + 1);
        }
    };
    rec(rec, 0, 1);
    const Rational prefactor =
        pow_rational(alpha, static_cast<long>(n) * (static_cast<long>(n) - 1));
    BezivinSum out;
    out.n = n;
    out.J = J;
    out.partial = prefactor * total;
    // tail: every omitted tuple contains an index > J; Vandermonde^2 < 1.
    Rational r = alpha / pow_rational(q, static_cast<long>(J) + 1);
    if (r >= 1)
        throw UsageError("truncation too small for a geometric tail bound");
    Rational tail_u = u[J] * r / (1 - r);  // bounds sum_{j>J} u_j
    Rational total_u = tail_u;
    for (unsigned j = 1; j <= J; ++j) total_u += u[j];
    Rational bound = tail_u;
    for (unsigned i = 1; i < n; ++i) bound *= total_u;
    out.tail = prefactor * bound;
    return out;
}

}  // namespace qhankel
