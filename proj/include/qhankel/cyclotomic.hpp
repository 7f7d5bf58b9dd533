#pragma once

#include <cstdint>
#include <vector>

#include "qhankel/multipoly.hpp"

namespace qhankel {

// l-th cyclotomic polynomial in q, built by exact division of q^l - 1 by all
// lower-index cyclotomic factors.  Integer coefficients; memoized.
// Requires l >= 1.
const MultiPoly& cyclotomic(unsigned l);

// Euler's totient, by trial-division factorization.
std::uint64_t totient(std::uint64_t n);

// phi(0..n) in one linear sieve.
std::vector<std::uint32_t> totient_sieve(std::uint32_t n);

// Totient summatory function: sum_{l<=x} phi(l); asymptotically 3x^2/pi^2.
Integer mertens_sigma(std::uint64_t x);

}  // namespace qhankel
