#include "qhankel/cyclotomic.hpp"

#include <mutex>
#include <unordered_map>

#include "qhankel/errors.hpp"

namespace qhankel {

namespace {

MultiPoly q_pow_minus_one(unsigned l) {
    return MultiPoly::monomial(Rational(1), static_cast<int>(l)) -
           MultiPoly::constant(Rational(1));
}

}  // namespace

const MultiPoly& cyclotomic(unsigned l) {
    if (l == 0) throw UsageError("cyclotomic index must be >= 1");
    static std::mutex mtx;
    static std::unordered_map<unsigned, MultiPoly> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
    // Phi_l = (q^l - 1) / prod_{d | l, d < l} Phi_d, computed bottom-up so the
    // recursion below always hits the cache.
    for (unsigned m = 1; m <= l; ++m) {
        if (cache.count(m)) continue;
        MultiPoly p = q_pow_minus_one(m);
        for (unsigned d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            auto quot = p.divided_exact_q(cache.at(d));
            if (!quot)
                throw InternalError("cyclotomic division failed at l=" +
                                    std::to_string(m));
            p = std::move(*quot);
        }
        cache.emplace(m, std::move(p));
    }
    return cache.at(l);
}

std::uint64_t totient(std::uint64_t n) {
    if (n == 0) throw UsageError("totient(0) undefined");
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        result -= result / p;
        while (n % p == 0) n /= p;
    }
    if (n > 1) result -= result / n;
    return result;
}

std::vector<std::uint32_t> totient_sieve(std::uint32_t n) {
    std::vector<std::uint32_t> phi(n + 1);
    for (std::uint32_t i = 0; i <= n; ++i) phi[i] = i;
    for (std::uint32_t p = 2; p <= n; ++p) {
        if (phi[p] != p) continue;  // p composite
        for (std::uint32_t k = p; k <= n; k += p) phi[k] -= phi[k] / p;
    }
    return phi;
}

Integer mertens_sigma(std::uint64_t x) {
    if (x > (1ull << 26)) throw UsageError("mertens_sigma argument too large");
    auto phi = totient_sieve(static_cast<std::uint32_t>(x));
    Integer sum = 0;
    std::uint64_t chunk = 0;
    for (std::uint64_t l = 1; l <= x; ++l) {
        chunk += phi[l];
        if ((l & 0xffff) == 0) {  // keep the running total in one word
            sum += Integer(static_cast<unsigned long>(chunk));
            chunk = 0;
        }
    }
    sum += Integer(static_cast<unsigned long>(chunk));
    return sum;
}

}  // namespace qhankel
