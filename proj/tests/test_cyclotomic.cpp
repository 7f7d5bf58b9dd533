#include "doctest.h"
#include "qhankel/cyclotomic.hpp"
#include "qhankel/multipoly.hpp"

using namespace qhankel;

namespace {
const MultiPoly Q = MultiPoly::variable(Var::q);
const MultiPoly One = MultiPoly::constant(Rational(1));
}  // namespace

TEST_CASE("small cyclotomic polynomials") {
    CHECK(cyclotomic(1) == Q - One);
    CHECK(cyclotomic(2) == Q + One);
    CHECK(cyclotomic(3) == Q * Q + Q + One);
    CHECK(cyclotomic(4) == Q * Q + One);
    CHECK(cyclotomic(6) == Q * Q - Q + One);
}

TEST_CASE("product over divisors gives q^l - 1") {
    for (unsigned l = 1; l <= 30; ++l) {
        MultiPoly prod = One;
        for (unsigned d = 1; d <= l; ++d)
            if (l % d == 0) prod *= cyclotomic(d);
        CHECK(prod == MultiPoly::variable(Var::q, static_cast<int>(l)) - One);
    }
}

TEST_CASE("degrees equal the totient") {
    const auto phi = totient_sieve(40);
    for (unsigned l = 1; l <= 40; ++l)
        CHECK(cyclotomic(l).q_degree() == static_cast<int>(phi[l]));
}

TEST_CASE("totient sieve sums") {
    {
        const auto phi = totient_sieve(10);
        unsigned long s = 0;
        for (unsigned l = 1; l <= 10; ++l) s += phi[l];
        CHECK(s == 32);
    }
    {
        const auto phi = totient_sieve(1000);
        unsigned long s = 0;
        for (unsigned l = 1; l <= 1000; ++l) s += phi[l];
        CHECK(s == 304192);
    }
}

TEST_CASE("single totients match the sieve") {
    const auto phi = totient_sieve(100);
    for (std::uint64_t n = 1; n <= 100; ++n) CHECK(totient(n) == phi[n]);
    CHECK(totient(1) == 1);
    CHECK(totient(12) == 4);
    CHECK(totient(97) == 96);
}

TEST_CASE("totient summatory function") {
    CHECK(mertens_sigma(10) == 32);
    CHECK(mertens_sigma(1000) == 304192);
    const auto phi = totient_sieve(123);
    Integer s = 0;
    for (unsigned l = 1; l <= 123; ++l) s += phi[l];
    CHECK(mertens_sigma(123) == s);
}
