#pragma once

#include <map>
#include <vector>

#include "qhankel/bigfloat.hpp"
#include "qhankel/multipoly.hpp"
#include "qhankel/qseq.hpp"

namespace qhankel {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

// ---------------------------------------------------------------- engines

enum class DetEngine {
    Auto,             // interpolation + condensation dispatch
    Bareiss,          // serial fraction-free elimination (reference)
    BareissParallel,  // same algorithm, OpenMP row updates
    Condensation,     // Hankel two-term condensation with Bareiss fallback
    Cofactor,         // subset-DP cofactor expansion (small n oracle)
};

// Fraction-free elimination with row pivoting; every division is exact and
// an inexact one aborts with diagnostics.
MultiPoly det_bareiss(PolyMatrix m, bool parallel = false);

// Cofactor expansion over column subsets; n <= 12.
MultiPoly det_cofactor(const PolyMatrix& m);

// Determinant of the n x n Hankel matrix with entries h[i+j]
// (h.size() == 2n-1), by two-term condensation over contiguous minors;
// falls back to elimination when an interior minor vanishes.
MultiPoly det_hankel_condensation(const std::vector<MultiPoly>& h, unsigned n);

// Exact determinant over the rationals (Gaussian elimination).
Rational det_rational(std::vector<std::vector<Rational>> m);

// Ball-arithmetic LU determinant with partial pivoting by |value|.
// Throws PrecisionError when a pivot ball contains zero.
BigFloat det_ball(std::vector<std::vector<BigFloat>> m, mpfr_prec_t prec);

// ------------------------------------------------- Hankel determinants V_n

// The n x n matrix with (i,j) entry v_{i+j}.
PolyMatrix hankel_matrix(const SeqContext& ctx, unsigned n);

// Exact V_n.  Auto substitutes integer nodes for symbolic lambda/mu
// (degree bounds n(n-1) and n are structural), runs the condensation core
// on each node, and recombines by Lagrange interpolation; n <= 4 results
// are cross-checked against cofactor expansion.
MultiPoly hankel_det(const SeqContext& ctx, unsigned n,
                     DetEngine engine = DetEngine::Auto);

// V_n(x) with every parameter rational: exact rational value.
Rational hankel_det_rational(const Rational& q, const Rational& alpha,
                             const Rational& lambda, const Rational& x,
                             unsigned n);

// ------------------------------------------------------ exponent formulas

// Guaranteed q-order of V_n: C(n,3) generically, with the lambda = 0
// parity-split refinement.
long e0_formula(unsigned n, bool lambda_is_zero);

// Guaranteed multiplicity of the l-th cyclotomic polynomial in V_n,
// by the direct double-floor sum.
long e_l_sum_formula(unsigned l, unsigned n);
// The same value by the closed residue-class form.
long e_l_compact_formula(unsigned l, unsigned n);
// Computes both and insists they agree.
long e_l_formula(unsigned l, unsigned n);

struct DegreeBounds {
    long deg_q;       // n(n-1)(4n+1)/6
    long deg_mu;      // n
    long deg_alpha;   // n(n-1)
    long deg_lambda;  // n(n-1)
};
DegreeBounds degree_bounds(unsigned n);

// ----------------------------------------------------------- factorization

struct FactoredDeterminant {
    unsigned n = 0;
    long e0_found = 0;
    long e0_guaranteed = 0;
    // actual multiplicity of the l-th cyclotomic polynomial, every probed l
    std::map<unsigned, long> cyclo_exponents;
    // guaranteed exponents e_l(n) for 1 <= l < n/2
    std::map<unsigned, long> guarantees;
    MultiPoly cofactor;  // q-order 0, free of every probed cyclotomic factor
};

// Splits V_n into q^{e0} * prod Phi_l^{m_l} * cofactor, probing
// l = 1..probe_limit (default ceil(n/2)+2); the reassembly identity is
// re-multiplied and checked exactly.
FactoredDeterminant factorize(const SeqContext& ctx, unsigned n,
                              unsigned probe_limit = 0);

// --------------------------------------- leading coefficients, K sequence

// K_n as the (n+1) x (n+1) determinant: mu-1 on the diagonal, mu on the
// subdiagonal, -alpha^{j-i} above.
MultiPoly K_det(unsigned n);
// K_n by the three-term recurrence K_{n+2} = (mu-1-alpha mu)K_{n+1}
// + alpha mu^2 K_n.
MultiPoly K_rec(unsigned n);

// Predicted coefficient of q^{e0(n)} in V_n (the parity-split closed forms;
// the lambda = 0 odd case uses K_{(n-1)/2}).
MultiPoly leading_coeff_formula(const SeqContext& ctx, unsigned n);

// ------------------------------------------------ lambda = 1 conjecture

struct ConjectureRow {
    unsigned l;
    long expected;  // 2 max{0, n-2l}
    long found;     // (q^l - 1)-basis exponent recovered from the factorization
};

struct ConjectureLambda1Report {
    unsigned n = 0;
    Rational alpha, mu;
    bool pattern_valid = false;   // basis conversion gave no negative exponent
    bool exponents_agree = false;
    bool degree_agrees = false;
    long deg_delta_found = 0;
    long deg_delta_expected = 0;
    std::vector<ConjectureRow> rows;
    bool agreed() const {
        return pattern_valid && exponents_agree && degree_agrees;
    }
};

// Empirical check of the lambda = 1 exponent pattern at one rational
// (alpha, mu) point; never a proof.
ConjectureLambda1Report conjecture_lambda1(unsigned n, const Rational& alpha,
                                           const Rational& mu);

// ---------------------------------------------------------- Kronecker scan

struct KroneckerScan {
    Rational q, alpha, lambda, x;
    std::vector<unsigned> nonzero;   // n with V_n(x) != 0
    std::vector<unsigned> zero;      // n with V_n(x) == 0
    std::vector<Rational> dets;      // dets[n-1] = V_n(x)
};

// Exact rational evaluation of V_n(x) for n = 1..n_max.  Preconditions
// (checked exactly): |q| > 1, alpha != 0, lambda not in {q, q^2, ...},
// alpha not in {-lambda q, -lambda q^2, ...}.
KroneckerScan kronecker_scan(const Rational& x, const Rational& q,
                             const Rational& alpha, const Rational& lambda,
                             unsigned n_max);

// --------------------------------------------- positive-sum partial sums

struct BezivinSum {
    unsigned n = 0, J = 0;
    Rational partial;  // increasing in J; partial <= V_n exactly
    Rational tail;     // V_n < partial + tail
};

// lambda = 0, q > 1, alpha > 0: V_n as a sum of positive terms over index
// tuples 1 <= j_1 < ... < j_n; partial sums all tuples with j_n <= J and
// brackets the rest rigorously.
BezivinSum bezivin_sum(const Rational& q, const Rational& alpha, unsigned n,
                       unsigned J);

}  // namespace qhankel
