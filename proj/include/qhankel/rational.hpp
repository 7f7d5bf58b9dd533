#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "qhankel/errors.hpp"

namespace qhankel {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "num", "-num", or "num/den" into a canonical rational.
// Throws UsageError on malformed input or zero denominator.
Rational parse_rational(const std::string& s);

// Parses either a rational or the literal "sym" (=> nullopt, meaning symbolic).
std::optional<Rational> parse_rational_or_sym(const std::string& s);

// Canonical text form: "num" when den == 1, otherwise "num/den".
std::string to_string(const Rational& r);

// r^e for any integer e; e < 0 requires r != 0.
Rational pow_rational(const Rational& r, long e);

// floor(num/den) for den != 0, exact.
Integer floor_div(const Integer& num, const Integer& den);

// sum_{i=0}^{n-1} floor((a*i + b) / m) for m > 0, a,b >= 0, computed in
// O(log) arithmetic operations by the Euclidean-style reduction.
Integer floor_sum(const Integer& n, Integer a, Integer b, Integer m);

// splitmix64: tiny, well-known, platform-independent PRNG.  Used for all
// seeded draws so reports are byte-identical across standard libraries.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi] via rejection-free modulo (bias negligible and,
    // more importantly, deterministic).
    std::uint64_t next_in(std::uint64_t lo, std::uint64_t hi) {
        return lo + next() % (hi - lo + 1);
    }

  private:
    std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSeed = 20080812ull;

// Draws positive rationals num/den with num, den uniform in [1, 40].
class RationalDraw {
  public:
    explicit RationalDraw(std::uint64_t seed) : rng_(seed) {}

    Rational next() {
        Rational r(static_cast<unsigned long>(rng_.next_in(1, 40)),
                   static_cast<unsigned long>(rng_.next_in(1, 40)));
        r.canonicalize();
        return r;
    }

  private:
    SplitMix64 rng_;
};

}  // namespace qhankel
