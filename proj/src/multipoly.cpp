#include "qhankel/multipoly.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "qhankel/errors.hpp"

namespace qhankel {

std::optional<Var> var_from_name(const std::string& name) {
    for (int i = 0; i < kVarCount; ++i)
        if (name == kVarName[i]) return static_cast<Var>(i);
    return std::nullopt;
}

Monomial Monomial::pack(int eq, int ea, int el, int em) {
    if (eq < -kQBias || eq >= kQBias)
        throw UsageError("q exponent out of range: " + std::to_string(eq));
    if (ea < 0 || el < 0 || em < 0 || ea > 0xffff || el > 0xffff || em > 0xffff)
        throw UsageError("exponent out of range");
    Monomial m;
    m.key = (static_cast<std::uint64_t>(eq + kQBias) << 48) |
            (static_cast<std::uint64_t>(ea) << 32) |
            (static_cast<std::uint64_t>(el) << 16) | static_cast<std::uint64_t>(em);
    return m;
}

int Monomial::exp(Var v) const {
    switch (v) {
        case Var::q: return static_cast<int>(key >> 48) - kQBias;
        case Var::alpha: return static_cast<int>((key >> 32) & 0xffff);
        case Var::lambda: return static_cast<int>((key >> 16) & 0xffff);
        case Var::mu: return static_cast<int>(key & 0xffff);
    }
    throw InternalError("bad Var");
}

namespace {

int key_exp(std::uint64_t key, Var v) {
    Monomial m;
    m.key = key;
    return m.exp(v);
}

std::uint64_t key_mul(std::uint64_t a, std::uint64_t b) {
    return a + b - kQBiasKey;
}

}  // namespace

MultiPoly MultiPoly::constant(const Rational& c) {
    MultiPoly p;
    if (c != 0) p.terms_.push_back({Monomial{}.key, c});
    return p;
}

MultiPoly MultiPoly::variable(Var v, int exp) {
    return monomial(Rational(1), v == Var::q ? exp : 0, v == Var::alpha ? exp : 0,
                    v == Var::lambda ? exp : 0, v == Var::mu ? exp : 0);
}

MultiPoly MultiPoly::monomial(const Rational& c, int eq, int ea, int el, int em) {
    MultiPoly p;
    if (c != 0) p.terms_.push_back({Monomial::pack(eq, ea, el, em).key, c});
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].key == Monomial{}.key);
}

Rational MultiPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw UsageError("not a constant polynomial");
    return terms_[0].coeff;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].key != o.terms_[i].key || terms_[i].coeff != o.terms_[i].coeff)
            return false;
    return true;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly p(*this);
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly out;
    out.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].key < o.terms_[j].key) {
            out.terms_.push_back(terms_[i++]);
        } else if (terms_[i].key > o.terms_[j].key) {
            out.terms_.push_back(o.terms_[j++]);
        } else {
            Rational c = terms_[i].coeff + o.terms_[j].coeff;
            if (c != 0) out.terms_.push_back({terms_[i].key, std::move(c)});
            ++i, ++j;
        }
    }
    for (; i < terms_.size(); ++i) out.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) out.terms_.push_back(o.terms_[j]);
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    *this = *this + o;
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    *this = *this - o;
    return *this;
}

void MultiPoly::check_mul_bounds(const MultiPoly& o) const {
    if (is_zero() || o.is_zero()) return;
    auto da = degrees();
    auto db = o.degrees();
    int qa_min = q_order(), qb_min = o.q_order();
    if (da[0] + db[0] >= kQBias || qa_min + qb_min < -kQBias)
        throw UsageError("q exponent overflow in multiplication");
    for (int v = 1; v < kVarCount; ++v)
        if (da[v] + db[v] > 0xffff)
            throw UsageError(std::string("exponent overflow in ") + kVarName[v]);
}

namespace {

// Shared accumulation core for mul and mul_sub.
struct Accumulator {
    std::unordered_map<std::uint64_t, Rational> acc;
    Rational prod;  // reused scratch

    void add_product(const std::vector<MultiPoly::Term>& a,
                     const std::vector<MultiPoly::Term>& b, bool negate) {
        for (const auto& ta : a) {
            for (const auto& tb : b) {
                mpq_mul(prod.get_mpq_t(), ta.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
                auto [it, fresh] = acc.try_emplace(key_mul(ta.key, tb.key));
                if (fresh) {
                    if (negate)
                        mpq_neg(it->second.get_mpq_t(), prod.get_mpq_t());
                    else
                        mpq_swap(it->second.get_mpq_t(), prod.get_mpq_t());
                } else if (negate) {
                    mpq_sub(it->second.get_mpq_t(), it->second.get_mpq_t(),
                            prod.get_mpq_t());
                } else {
                    mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(),
                            prod.get_mpq_t());
                }
            }
        }
    }

    MultiPoly finish() {
        std::vector<MultiPoly::Term> out;
        out.reserve(acc.size());
        for (auto& [k, c] : acc)
            if (c != 0) out.push_back({k, std::move(c)});
        std::sort(out.begin(), out.end(),
                  [](const auto& x, const auto& y) { return x.key < y.key; });
        MultiPoly p;
        p = MultiPoly::from_terms(std::move(out));
        return p;
    }
};

}  // namespace

MultiPoly MultiPoly::from_terms(std::vector<Term>&& raw) {
    std::sort(raw.begin(), raw.end(),
              [](const auto& x, const auto& y) { return x.key < y.key; });
    MultiPoly p;
    p.terms_.reserve(raw.size());
    for (auto& t : raw) {
        if (!p.terms_.empty() && p.terms_.back().key == t.key) {
            p.terms_.back().coeff += t.coeff;
            if (p.terms_.back().coeff == 0) p.terms_.pop_back();
        } else if (t.coeff != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (is_zero() || o.is_zero()) return MultiPoly();
    check_mul_bounds(o);
    // single-term fast path: shift + scale
    if (terms_.size() == 1 || o.terms_.size() == 1) {
        const MultiPoly& big = terms_.size() == 1 ? o : *this;
        const Term& mono = terms_.size() == 1 ? terms_[0] : o.terms_[0];
        MultiPoly out;
        out.terms_.reserve(big.terms_.size());
        for (const auto& t : big.terms_) {
            Rational c = t.coeff * mono.coeff;
            out.terms_.push_back({key_mul(t.key, mono.key), std::move(c)});
        }
        return out;  // key order preserved under monomial shift
    }
    Accumulator acc;
    acc.acc.reserve(terms_.size() + o.terms_.size());
    acc.add_product(terms_, o.terms_, false);
    return acc.finish();
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
    *this = *this * o;
    return *this;
}

MultiPoly MultiPoly::mul_sub(const MultiPoly& a, const MultiPoly& b,
                             const MultiPoly& c, const MultiPoly& d) {
    if (a.is_zero() || b.is_zero()) return -(c * d);
    if (c.is_zero() || d.is_zero()) return a * b;
    a.check_mul_bounds(b);
    c.check_mul_bounds(d);
    Accumulator acc;
    acc.acc.reserve(a.terms_.size() + b.terms_.size() + c.terms_.size() +
                    d.terms_.size());
    acc.add_product(a.terms_, b.terms_, false);
    acc.add_product(c.terms_, d.terms_, true);
    return acc.finish();
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    if (c == 0) return MultiPoly();
    MultiPoly p(*this);
    for (auto& t : p.terms_) t.coeff *= c;
    return p;
}

MultiPoly MultiPoly::pow(unsigned long e) const {
    MultiPoly out = constant(Rational(1));
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1ul) out *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return out;
}

MultiPoly MultiPoly::shift_q(int k) const {
    if (k == 0 || is_zero()) return *this;
    int lo = q_order() + k, hi = degree(Var::q) + k;
    if (lo < -kQBias || hi >= kQBias) throw UsageError("q exponent overflow in shift");
    MultiPoly p(*this);
    std::int64_t delta = static_cast<std::int64_t>(k) << 48;
    for (auto& t : p.terms_) t.key = static_cast<std::uint64_t>(t.key + delta);
    return p;
}

std::optional<MultiPoly> MultiPoly::divided_exact(const MultiPoly& o) const {
    if (o.is_zero()) throw UsageError("division by zero polynomial");
    if (is_zero()) return MultiPoly();
    const Term& dlead = o.terms_.back();  // lex-leading term
    std::map<std::uint64_t, Rational> rem;
    for (const auto& t : terms_) rem.emplace(t.key, t.coeff);
    std::vector<Term> quot;  // produced with strictly decreasing keys
    Rational qc, tmp;
    while (!rem.empty()) {
        auto lead = std::prev(rem.end());
        // monomial divisibility: subtract exponents, checking bounds
        int eq = key_exp(lead->first, Var::q) - key_exp(dlead.key, Var::q);
        int ea = key_exp(lead->first, Var::alpha) - key_exp(dlead.key, Var::alpha);
        int el = key_exp(lead->first, Var::lambda) - key_exp(dlead.key, Var::lambda);
        int em = key_exp(lead->first, Var::mu) - key_exp(dlead.key, Var::mu);
        if (ea < 0 || el < 0 || em < 0 || eq < -kQBias || eq >= kQBias)
            return std::nullopt;
        std::uint64_t qkey = Monomial::pack(eq, ea, el, em).key;
        mpq_div(qc.get_mpq_t(), lead->second.get_mpq_t(), dlead.coeff.get_mpq_t());
        for (const auto& t : o.terms_) {
            std::uint64_t k = key_mul(qkey, t.key);
            mpq_mul(tmp.get_mpq_t(), qc.get_mpq_t(), t.coeff.get_mpq_t());
            auto [it, fresh] = rem.try_emplace(k);
            mpq_sub(it->second.get_mpq_t(), it->second.get_mpq_t(), tmp.get_mpq_t());
            (void)fresh;
            if (it->second == 0) rem.erase(it);
        }
        quot.push_back({qkey, qc});
    }
    std::reverse(quot.begin(), quot.end());
    MultiPoly p;
    p.terms_ = std::move(quot);
    return p;
}

std::optional<MultiPoly> MultiPoly::divided_exact_q(const MultiPoly& o) const {
    if ((o.used_mask() & ~1u) != 0)
        throw UsageError("divisor must involve only q");
    return divided_exact(o);
}

int MultiPoly::degree(Var v) const {
    if (is_zero()) throw UsageError("degree of zero polynomial");
    if (v == Var::q) return key_exp(terms_.back().key, Var::q);
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, key_exp(t.key, v));
    return d;
}

int MultiPoly::q_order() const {
    if (is_zero()) throw UsageError("q_order of zero polynomial");
    return key_exp(terms_.front().key, Var::q);
}

MultiPoly MultiPoly::q_coeff(int k) const {
    MultiPoly out;
    std::int64_t delta = static_cast<std::int64_t>(k) << 48;
    for (const auto& t : terms_)
        if (key_exp(t.key, Var::q) == k)
            out.terms_.push_back({static_cast<std::uint64_t>(t.key - delta), t.coeff});
    return out;  // order preserved: removing a fixed q-power keeps lex order
}

std::array<int, kVarCount> MultiPoly::degrees() const {
    std::array<int, kVarCount> d{-1, -1, -1, -1};
    if (is_zero()) return d;
    d[0] = key_exp(terms_.back().key, Var::q);
    for (const auto& t : terms_)
        for (int v = 1; v < kVarCount; ++v)
            d[v] = std::max(d[v], key_exp(t.key, static_cast<Var>(v)));
    return d;
}

unsigned MultiPoly::used_mask() const {
    unsigned m = 0;
    for (const auto& t : terms_) {
        for (int v = 0; v < kVarCount; ++v)
            if (key_exp(t.key, static_cast<Var>(v)) != 0) m |= 1u << v;
        if (m == 0xf) break;
    }
    return m;
}

MultiPoly MultiPoly::substituted(
    const std::array<std::optional<Rational>, kVarCount>& values) const {
    if (is_zero()) return MultiPoly();
    // power tables per substituted variable; q may need negative powers
    std::array<std::vector<Rational>, kVarCount> pows;
    std::vector<Rational> qneg;  // qneg[e] = value^-e
    auto degs = degrees();
    int qmin = q_order();
    for (int v = 0; v < kVarCount; ++v) {
        if (!values[v]) continue;
        int top = std::max(0, degs[v]);
        pows[v].reserve(top + 1);
        pows[v].push_back(Rational(1));
        for (int e = 1; e <= top; ++e) pows[v].push_back(pows[v].back() * (*values[v]));
    }
    if (values[0] && qmin < 0) {
        if (*values[0] == 0)
            throw UsageError("Laurent polynomial cannot be evaluated at q = 0");
        Rational inv = Rational(1) / *values[0];
        qneg.reserve(-qmin + 1);
        qneg.push_back(Rational(1));
        for (int e = 1; e <= -qmin; ++e) qneg.push_back(qneg.back() * inv);
    }
    std::vector<Term> raw;
    raw.reserve(terms_.size());
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        int eq = key_exp(t.key, Var::q), ea = key_exp(t.key, Var::alpha),
            el = key_exp(t.key, Var::lambda), em = key_exp(t.key, Var::mu);
        if (values[0]) c *= (eq >= 0 ? pows[0][eq] : qneg[-eq]), eq = 0;
        if (values[1]) c *= pows[1][ea], ea = 0;
        if (values[2]) c *= pows[2][el], el = 0;
        if (values[3]) c *= pows[3][em], em = 0;
        raw.push_back({Monomial::pack(eq, ea, el, em).key, std::move(c)});
    }
    return from_terms(std::move(raw));
}

MultiPoly MultiPoly::substituted(Var v, const Rational& value) const {
    std::array<std::optional<Rational>, kVarCount> values;
    values[static_cast<int>(v)] = value;
    return substituted(values);
}

Rational MultiPoly::evaluated(
    const std::array<std::optional<Rational>, kVarCount>& values) const {
    MultiPoly s = substituted(values);
    if (!s.is_constant()) throw UsageError("evaluation left free variables");
    return s.constant_value();
}

nlohmann::ordered_json MultiPoly::to_json() const {
    unsigned mask = used_mask();
    std::vector<int> vars;
    nlohmann::ordered_json jvars = nlohmann::ordered_json::array();
    for (int v = 0; v < kVarCount; ++v)
        if ((mask >> v) & 1u) {
            vars.push_back(v);
            jvars.push_back(kVarName[v]);
        }
    nlohmann::ordered_json jterms = nlohmann::ordered_json::array();
    for (const auto& t : terms_) {
        nlohmann::ordered_json jt;
        jt["coeff"] = t.coeff.get_str();
        nlohmann::ordered_json je = nlohmann::ordered_json::array();
        for (int v : vars) je.push_back(key_exp(t.key, static_cast<Var>(v)));
        jt["exp"] = je;
        jterms.push_back(std::move(jt));
    }
    nlohmann::ordered_json j;
    j["vars"] = std::move(jvars);
    j["terms"] = std::move(jterms);
    return j;
}

std::string MultiPoly::serialize() const { return to_json().dump(); }

MultiPoly MultiPoly::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
        throw UsageError("polynomial record needs 'vars' and 'terms'");
    std::vector<Var> vars;
    for (const auto& v : j.at("vars")) {
        auto var = var_from_name(v.get<std::string>());
        if (!var) throw UsageError("unknown variable '" + v.get<std::string>() + "'");
        if (!vars.empty() && static_cast<int>(*var) <= static_cast<int>(vars.back()))
            throw UsageError("variables must be listed in canonical order");
        vars.push_back(*var);
    }
    std::vector<Term> raw;
    for (const auto& jt : j.at("terms")) {
        Rational c = parse_rational(jt.at("coeff").get<std::string>());
        const auto& je = jt.at("exp");
        if (je.size() != vars.size())
            throw UsageError("exponent vector length mismatch");
        int e[kVarCount] = {0, 0, 0, 0};
        for (std::size_t i = 0; i < vars.size(); ++i) {
            int x = je[i].get<int>();
            if (vars[i] != Var::q && x < 0)
                throw UsageError("negative exponent only allowed for q");
            e[static_cast<int>(vars[i])] = x;
        }
        raw.push_back({Monomial::pack(e[0], e[1], e[2], e[3]).key, std::move(c)});
    }
    return from_terms(std::move(raw));
}

MultiPoly MultiPoly::parse(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad polynomial text: ") + e.what());
    }
    return from_json(j);
}

std::string MultiPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = terms_.size(); i-- > 0;) {  // descending: leading first
        const Term& t = terms_[i];
        Rational c = t.coeff;
        bool neg = c < 0;
        if (neg) c = -c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string mono;
        for (int v = 0; v < kVarCount; ++v) {
            int e = key_exp(t.key, static_cast<Var>(v));
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += kVarName[v];
            if (e != 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            out += c.get_str();
        } else {
            if (c != 1) out += c.get_str() + "*";
            out += mono;
        }
    }
    return out;
}

const MultiPoly QPolyView::kZero;

QPolyView::QPolyView(const MultiPoly& p) {
    if (p.is_zero()) return;
    min_ = p.q_order();
    max_ = p.q_degree();
    coeffs_.resize(max_ - min_ + 1);
    for (int k = min_; k <= max_; ++k) coeffs_[k - min_] = p.q_coeff(k);
}

const MultiPoly& QPolyView::coeff(int k) const {
    if (k < min_ || k > max_) return kZero;
    return coeffs_[k - min_];
}

MultiPoly QPolyView::reassemble() const {
    MultiPoly out;
    for (int k = min_; k <= max_; ++k) out += coeffs_[k - min_].shift_q(k);
    return out;
}

}  // namespace qhankel
