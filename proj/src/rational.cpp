#include "qhankel/rational.hpp"

namespace qhankel {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw UsageError("empty rational literal");
    // mpq_class accepts "a/b" and "a" but also tolerates whitespace and
    // leading '+'; validate strictly first so CLI errors are crisp.
    std::size_t i = 0;
    auto digits = [&](std::size_t& j) {
        std::size_t start = j;
        while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
        return j > start;
    };
    if (s[i] == '-') ++i;
    if (!digits(i)) throw UsageError("malformed rational: '" + s + "'");
    if (i < s.size()) {
        if (s[i] != '/') throw UsageError("malformed rational: '" + s + "'");
        ++i;
        if (!digits(i) || i != s.size())
            throw UsageError("malformed rational: '" + s + "'");
    }
    Rational r;
    if (r.set_str(s, 10) != 0) throw UsageError("malformed rational: '" + s + "'");
    if (r.get_den() == 0) throw UsageError("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

std::optional<Rational> parse_rational_or_sym(const std::string& s) {
    if (s == "sym") return std::nullopt;
    return parse_rational(s);
}

std::string to_string(const Rational& r) {
    return r.get_str();
}

Rational pow_rational(const Rational& r, long e) {
    if (e == 0) return Rational(1);
    if (r == 0 && e < 0) throw UsageError("0 cannot be raised to a negative power");
    Rational base = e < 0 ? Rational(1) / r : r;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), k);
    // num/den were coprime, so the powers are as well; no canonicalize needed.
    return out;
}

Integer floor_div(const Integer& num, const Integer& den) {
    if (den == 0) throw UsageError("floor_div by zero");
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

Integer floor_sum(const Integer& n, Integer a, Integer b, Integer m) {
    if (n <= 0) return 0;
    if (m <= 0) throw UsageError("floor_sum requires m > 0");
    if (a < 0 || b < 0) throw UsageError("floor_sum requires a, b >= 0");
    Integer ans = 0;
    Integer nn = n, aa = a, bb = b, mm = m;
    while (true) {
        if (aa >= mm) {
            // sum over the linear part: (a/m) * n(n-1)/2
            ans += (nn - 1) * nn / 2 * (aa / mm);
            aa %= mm;
        }
        if (bb >= mm) {
            ans += nn * (bb / mm);
            bb %= mm;
        }
        Integer y_max = aa * nn + bb;
        if (y_max < mm) break;
        // swap roles (classical Euclidean descent)
        nn = y_max / mm;
        bb = y_max % mm;
        std::swap(mm, aa);
    }
    return ans;
}

}  // namespace qhankel
