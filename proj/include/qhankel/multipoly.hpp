#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhankel/rational.hpp"

namespace qhankel {

// The four symbols, in the canonical global order used everywhere (term
// ordering, serialization, evaluation maps).  mu doubles as the generic
// seed symbol x.
enum class Var : int { q = 0, alpha = 1, lambda = 2, mu = 3 };

inline constexpr int kVarCount = 4;
inline constexpr const char* kVarName[kVarCount] = {"q", "alpha", "lambda", "mu"};

std::optional<Var> var_from_name(const std::string& name);

// Exponent vectors are packed into one 64-bit key:
//   [q+kQBias : 16][alpha : 16][lambda : 16][mu : 16]
// The q slot is biased so q may carry negative (Laurent) exponents; the
// other three are non-negative.  Unsigned comparison of keys is exactly
// lexicographic comparison of (e_q, e_alpha, e_lambda, e_mu).
inline constexpr int kQBias = 1 << 15;
inline constexpr std::uint64_t kQBiasKey = static_cast<std::uint64_t>(kQBias) << 48;

struct Monomial {
    std::uint64_t key = kQBiasKey;  // the constant monomial

    static Monomial pack(int eq, int ea, int el, int em);
    int exp(Var v) const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Sparse multivariate Laurent-in-q polynomial with exact rational
// coefficients.  Terms are kept sorted by packed key (ascending) with no
// zero coefficients; two polynomials are equal iff their term vectors are.
class MultiPoly {
  public:
    struct Term {
        std::uint64_t key;
        Rational coeff;
    };

    MultiPoly() = default;

    static MultiPoly constant(const Rational& c);
    static MultiPoly variable(Var v, int exp = 1);
    // c * q^eq * alpha^ea * lambda^el * mu^em
    static MultiPoly monomial(const Rational& c, int eq, int ea = 0, int el = 0,
                              int em = 0);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // The constant value; requires is_constant().
    Rational constant_value() const;
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);

    MultiPoly scaled(const Rational& c) const;
    // Non-negative exponent only (negative powers of polynomials do not exist
    // in this ring); use shift_q for Laurent monomial factors.
    MultiPoly pow(unsigned long e) const;
    // Multiplies by q^k (k may be negative).
    MultiPoly shift_q(int k) const;

    // a*b - c*d with a single accumulation pass (the Bareiss inner update).
    static MultiPoly mul_sub(const MultiPoly& a, const MultiPoly& b,
                             const MultiPoly& c, const MultiPoly& d);

    // Exact division; nullopt when o does not divide *this.
    // Throws UsageError when o is zero.
    std::optional<MultiPoly> divided_exact(const MultiPoly& o) const;
    // Same, restricted contract: o must involve only q.
    std::optional<MultiPoly> divided_exact_q(const MultiPoly& o) const;

    // Degree/order in one variable.  Zero polynomial -> UsageError.
    int degree(Var v) const;
    int q_degree() const { return degree(Var::q); }
    int q_order() const;  // smallest q-exponent present
    // Coefficient of q^k: a polynomial in the remaining variables.
    MultiPoly q_coeff(int k) const;
    // All per-variable degrees in one scan (zero poly -> all -1, q_order 0).
    std::array<int, kVarCount> degrees() const;

    // Bitmask of variables appearing with nonzero exponent.
    unsigned used_mask() const;
    bool uses(Var v) const { return (used_mask() >> static_cast<int>(v)) & 1u; }

    // Substitutes rational values for a subset of variables.
    MultiPoly substituted(
        const std::array<std::optional<Rational>, kVarCount>& values) const;
    MultiPoly substituted(Var v, const Rational& value) const;
    // Full evaluation; every used variable must have a value.
    Rational evaluated(
        const std::array<std::optional<Rational>, kVarCount>& values) const;

    // Canonical structured-text (JSON) form:
    //   {"vars":[...], "terms":[{"coeff":"p/q","exp":[...]}, ...]}
    // vars = used variables in global order; terms sorted ascending by
    // exponent vector (lexicographic).  parse(serialize(p)) == p, and
    // serialize(parse(s)) == s for canonical s.
    nlohmann::ordered_json to_json() const;
    std::string serialize() const;  // compact one-line JSON
    static MultiPoly from_json(const nlohmann::json& j);
    static MultiPoly parse(const std::string& text);

    // Human-readable rendering for logs/failure messages.
    std::string to_string() const;

    // Builds from unsorted (key, coeff) pairs, combining duplicates.
    static MultiPoly from_terms(std::vector<Term>&& raw);

  private:
    std::vector<Term> terms_;

    void check_mul_bounds(const MultiPoly& o) const;
};

// Dense view of a polynomial as coefficients of powers of q.
// coeff(k) for min_exp() <= k <= max_exp(); reassemble() restores the
// original polynomial exactly.
class QPolyView {
  public:
    explicit QPolyView(const MultiPoly& p);

    int min_exp() const { return min_; }
    int max_exp() const { return max_; }
    const MultiPoly& coeff(int k) const;
    MultiPoly reassemble() const;

  private:
    int min_ = 0, max_ = -1;
    std::vector<MultiPoly> coeffs_;
    static const MultiPoly kZero;
};

}  // namespace qhankel
