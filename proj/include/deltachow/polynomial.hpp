#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "deltachow/errors.hpp"
#include "deltachow/symbol.hpp"

namespace deltachow {

using Rational = mpq_class;
using Integer = mpz_class;

/// Power product of symbols. Factors are kept sorted from the highest to the
/// lowest canonical precedence, with no zero exponents.
class Monomial {
public:
    using Factor = std::pair<Symbol, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(Symbol s, std::uint32_t exponent = 1) {
        if (exponent > 0) factors_.emplace_back(s, exponent);
    }

    /// Builds a monomial from an arbitrary factor list, merging repeats.
    static Monomial from_factors(std::vector<Factor> factors) {
        std::sort(factors.begin(), factors.end(),
                  [](const Factor& a, const Factor& b) { return precedes(b.first, a.first); });
        Monomial m;
        for (const auto& [s, e] : factors) {
            if (e == 0) continue;
            if (!m.factors_.empty() && m.factors_.back().first == s)
                m.factors_.back().second += e;
            else
                m.factors_.emplace_back(s, e);
        }
        return m;
    }

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    bool empty() const noexcept { return factors_.empty(); }

    std::uint32_t degree() const {
        std::uint32_t d = 0;
        for (const auto& f : factors_) d += f.second;
        return d;
    }

    std::uint32_t degree_in(const Symbol& s) const {
        for (const auto& f : factors_)
            if (f.first == s) return f.second;
        return 0;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial m;
        m.factors_.reserve(a.factors_.size() + b.factors_.size());
        auto i = a.factors_.begin();
        auto j = b.factors_.begin();
        while (i != a.factors_.end() || j != b.factors_.end()) {
            if (j == b.factors_.end() || (i != a.factors_.end() && precedes(j->first, i->first))) {
                m.factors_.push_back(*i++);
            } else if (i == a.factors_.end() || precedes(i->first, j->first)) {
                m.factors_.push_back(*j++);
            } else {
                m.factors_.emplace_back(i->first, i->second + j->second);
                ++i;
                ++j;
            }
        }
        return m;
    }

    /// Exact quotient a / b, or nullopt when b does not divide a.
    friend std::optional<Monomial> divide(const Monomial& a, const Monomial& b) {
        Monomial q;
        auto i = a.factors_.begin();
        for (const auto& [s, e] : b.factors_) {
            while (i != a.factors_.end() && precedes(s, i->first)) q.factors_.push_back(*i++);
            if (i == a.factors_.end() || i->first != s || i->second < e) return std::nullopt;
            if (i->second > e) q.factors_.emplace_back(s, i->second - e);
            ++i;
        }
        q.factors_.insert(q.factors_.end(), i, a.factors_.end());
        return q;
    }

    /// The monomial with the factor in `s` removed.
    Monomial without(const Symbol& s) const {
        Monomial m;
        for (const auto& f : factors_)
            if (f.first != s) m.factors_.push_back(f);
        return m;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Factor> factors_;
};

/// Lexicographic order over canonical symbol precedence; `a` before `b` when
/// `a` is the larger monomial.
struct LexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const auto& fa = a.factors();
        const auto& fb = b.factors();
        std::size_t i = 0;
        for (; i < fa.size() && i < fb.size(); ++i) {
            if (fa[i].first != fb[i].first) return precedes(fb[i].first, fa[i].first);
            if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
        }
        return i < fa.size() && i == fb.size();
    }
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are stored by decreasing canonical lex order, so the first term is
/// the leading term used by `normalized()`.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, LexGreater>;

    Polynomial() = default;
    Polynomial(const Rational& c) {  // NOLINT(google-explicit-constructor)
        if (c != 0) terms_.emplace(Monomial{}, c);
    }
    Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    Polynomial(int c) : Polynomial(Rational(c)) {}   // NOLINT(google-explicit-constructor)

    static Polynomial symbol(const Symbol& s, std::uint32_t exponent = 1) {
        return term(Rational(1), Monomial(s, exponent));
    }
    static Polynomial term(const Rational& c, const Monomial& m) {
        Polynomial p;
        p.add_term(m, c);
        return p;
    }

    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

    Rational constant_term() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    const Monomial& leading_monomial() const {
        if (terms_.empty()) throw DomainError("leading monomial of the zero polynomial");
        return terms_.begin()->first;
    }
    const Rational& leading_coefficient() const {
        if (terms_.empty()) throw DomainError("leading coefficient of the zero polynomial");
        return terms_.begin()->second;
    }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.first.degree());
        return d;
    }

    std::uint32_t degree_in(const Symbol& s) const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.first.degree_in(s));
        return d;
    }

    /// Every symbol occurring, highest precedence first.
    std::vector<Symbol> symbols() const {
        std::vector<Symbol> out;
        for (const auto& t : terms_)
            for (const auto& f : t.first.factors()) out.push_back(f.first);
        sort_by_precedence_desc(out);
        return out;
    }

    bool contains(const Symbol& s) const {
        for (const auto& t : terms_)
            if (t.first.degree_in(s) > 0) return true;
        return false;
    }

    /// Coefficient of s^k when the polynomial is viewed as univariate in s.
    Polynomial coefficient(const Symbol& s, std::uint32_t k) const {
        Polynomial out;
        for (const auto& [m, c] : terms_)
            if (m.degree_in(s) == k) out.add_term(m.without(s), c);
        return out;
    }

    /// ∂/∂s.
    Polynomial partial(const Symbol& s) const {
        Polynomial out;
        for (const auto& [m, c] : terms_) {
            const std::uint32_t e = m.degree_in(s);
            if (e == 0) continue;
            out.add_term(m.without(s) * Monomial(s, e - 1), c * e);
        }
        return out;
    }

    /// Replaces every occurrence of s by q.
    Polynomial substitute(const Symbol& s, const Polynomial& q) const {
        Polynomial out;
        std::vector<Polynomial> powers{Polynomial(1)};
        for (const auto& [m, c] : terms_) {
            const std::uint32_t e = m.degree_in(s);
            while (powers.size() <= e) powers.push_back(powers.back() * q);
            out += term(c, m.without(s)) * powers[e];
        }
        return out;
    }

    /// Applies a symbol renaming; `fn` must be injective on the symbols present.
    template <class Fn>
    Polynomial map_symbols(Fn&& fn) const {
        Polynomial out;
        for (const auto& [m, c] : terms_) {
            std::vector<Monomial::Factor> fs;
            fs.reserve(m.factors().size());
            for (const auto& [s, e] : m.factors()) fs.emplace_back(fn(s), e);
            out.add_term(Monomial::from_factors(std::move(fs)), c);
        }
        return out;
    }

    /// Integer, content-free multiple with a positive leading coefficient.
    Polynomial normalized() const {
        if (terms_.empty()) return {};
        Integer den = 1;
        Integer num = 0;
        for (const auto& t : terms_) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.second.get_den_mpz_t());
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.second.get_num_mpz_t());
        }
        Rational scale(den, num);
        scale.canonicalize();
        if (terms_.begin()->second < 0) scale = -scale;
        return *this * scale;
    }

    /// Scaled so that the leading coefficient is one.
    Polynomial monic() const {
        if (terms_.empty()) return {};
        return *this * Rational(1 / leading_coefficient());
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, Rational(-c));
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) { return a * Rational(-1); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
        return out;
    }
    friend Polynomial operator*(const Polynomial& a, const Rational& c) {
        if (c == 0) return {};
        Polynomial out = a;
        for (auto& t : out.terms_) t.second *= c;
        return out;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial pow(std::uint32_t e) const {
        Polynomial result(1);
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1u) result *= base;
            e >>= 1u;
            if (e > 0) base *= base;
        }
        return result;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

private:
    TermMap terms_;
};

/// Canonical total order on polynomials (by terms, leading first); used for
/// deterministic sorting of generator lists.
inline bool canonical_less(const Polynomial& a, const Polynomial& b) {
    LexGreater greater;
    auto i = a.terms().begin();
    auto j = b.terms().begin();
    for (; i != a.terms().end() && j != b.terms().end(); ++i, ++j) {
        if (i->first != j->first) return greater(j->first, i->first);
        if (i->second != j->second) return i->second < j->second;
    }
    return i == a.terms().end() && j != b.terms().end();
}

/// True when a and b differ by a nonzero rational factor.
inline bool associated(const Polynomial& a, const Polynomial& b) { return a.normalized() == b.normalized(); }

/// Union of the symbols of several polynomials, highest precedence first.
inline std::vector<Symbol> symbols_of(const std::vector<Polynomial>& polys) {
    std::vector<Symbol> out;
    for (const auto& p : polys)
        for (const auto& s : p.symbols()) out.push_back(s);
    sort_by_precedence_desc(out);
    return out;
}

}  // namespace deltachow
