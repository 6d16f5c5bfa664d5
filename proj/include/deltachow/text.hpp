#pragma once

#include <cctype>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "deltachow/errors.hpp"
#include "deltachow/polynomial.hpp"

namespace deltachow {

/// Names of the declared differential variables, x_i for i = 0..n-1.
///
/// Names of the form u<i><k>, u<i>_<k>, v<i><j>, v<i>_<j> and _t<k> are
/// reserved for hyperplane coefficients and auxiliary symbols.
class VariableNames {
public:
    VariableNames() = default;
    explicit VariableNames(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!is_identifier(names_[i])) throw DomainError("invalid variable name '" + names_[i] + "'");
            if (is_reserved(names_[i]) || names_[i] == "D")
                throw DomainError("variable name '" + names_[i] + "' is reserved");
            for (std::size_t j = 0; j < i; ++j)
                if (names_[j] == names_[i]) throw DomainError("variable '" + names_[i] + "' declared twice");
        }
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<std::uint32_t> find(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<std::uint32_t>(i);
        return std::nullopt;
    }

    const std::string& name(std::uint32_t i) const {
        if (i >= names_.size()) throw DomainError("no name for variable #" + std::to_string(i));
        return names_[i];
    }

    static bool is_identifier(std::string_view s) {
        if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
        for (char c : s)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
        return true;
    }

    /// Decodes a reserved name into its base (order-zero) symbol.
    static std::optional<Symbol> reserved_symbol(const std::string& s) {
        static const std::regex two_digit("^([uv])([0-9])([0-9])$");
        static const std::regex long_form("^([uv])([0-9]+)_([0-9]+)$");
        static const std::regex aux_form("^_t([0-9]+)$");
        std::smatch m;
        if (std::regex_match(s, m, two_digit) || std::regex_match(s, m, long_form)) {
            const auto block = static_cast<std::uint32_t>(std::stoul(m[2]));
            const auto index = static_cast<std::uint32_t>(std::stoul(m[3]));
            return m[1] == "u" ? Symbol::u(block, index) : Symbol::v(block, index);
        }
        if (std::regex_match(s, m, aux_form)) return Symbol::aux(static_cast<std::uint32_t>(std::stoul(m[1])));
        return std::nullopt;
    }
    static bool is_reserved(const std::string& s) { return reserved_symbol(s).has_value(); }

private:
    std::vector<std::string> names_;
};

namespace detail {

inline std::string base_name(const Symbol& s, const VariableNames& names) {
    auto pair_name = [](char prefix, std::uint32_t a, std::uint32_t b) {
        if (a < 10 && b < 10) return std::string(1, prefix) + std::to_string(a) + std::to_string(b);
        return std::string(1, prefix) + std::to_string(a) + "_" + std::to_string(b);
    };
    switch (s.kind) {
        case SymbolKind::jet: return names.name(s.index);
        case SymbolKind::chow_u: return pair_name('u', s.block, s.index);
        case SymbolKind::chow_v: return pair_name('v', s.block, s.index);
        case SymbolKind::aux: return "_t" + std::to_string(s.index);
    }
    return "?";
}

inline std::string rational_text(const Rational& c) {
    return c.get_den() == 1 ? c.get_num().get_str() : c.get_str();
}

}  // namespace detail

/// Text form of one symbol: apostrophes up to third order, D(name, k) above.
inline std::string to_string(const Symbol& s, const VariableNames& names) {
    const std::string base = detail::base_name(s, names);
    if (s.order <= 3) return base + std::string(s.order, '\'');
    return "D(" + base + "," + std::to_string(s.order) + ")";
}

inline std::string to_string(const Monomial& m, const VariableNames& names) {
    auto factors = m.factors();
    std::sort(factors.begin(), factors.end(),
              [](const auto& a, const auto& b) { return display_less(a.first, b.first); });
    std::string out;
    for (const auto& [s, e] : factors) {
        if (!out.empty()) out += '*';
        out += to_string(s, names);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

/// Canonical text form, e.g. "u00^2*u01*u00' - u00^3*u01' - u01^4".
inline std::string to_string(const Polynomial& p, const VariableNames& names) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        if (m.empty()) {
            out += detail::rational_text(mag);
        } else if (mag == 1) {
            out += to_string(m, names);
        } else {
            out += detail::rational_text(mag) + "*" + to_string(m, names);
        }
    }
    return out;
}

namespace detail {

/// Recursive-descent parser for polynomial expressions.
///
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := primary ['^' integer]
///   primary := number | symbol | 'D' '(' symbol ',' integer ')' | '(' expr ')' | '-' factor
///   symbol  := identifier "'"*
class ExpressionParser {
public:
    ExpressionParser(std::string_view text, const VariableNames& names, std::size_t line = 1,
                     std::size_t column = 1)
        : text_(text), names_(names), line0_(line), column0_(column) {}

    Polynomial parse_all() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected character '" + current_char() + "'");
        return p;
    }

private:
    std::string_view text_;
    const VariableNames& names_;
    std::size_t line0_;
    std::size_t column0_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        std::size_t line = line0_;
        std::size_t col = column0_;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            const auto byte = static_cast<unsigned char>(text_[i]);
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else if ((byte & 0xC0u) != 0x80u) {
                ++col;
            }
        }
        throw SyntaxError(what, line, col);
    }

    std::string current_char() const {
        if (pos_ >= text_.size()) return "end of input";
        std::size_t len = 1;
        const auto byte = static_cast<unsigned char>(text_[pos_]);
        if (byte >= 0xF0u)
            len = 4;
        else if (byte >= 0xE0u)
            len = 3;
        else if (byte >= 0xC0u)
            len = 2;
        return std::string(text_.substr(pos_, len));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "' but found '" + current_char() + "'");
    }

    std::uint32_t integer() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer but found '" + current_char() + "'");
        const std::string digits(text_.substr(start, pos_ - start));
        if (digits.size() > 9) fail("integer too large");
        return static_cast<std::uint32_t>(std::stoul(digits));
    }

    std::string identifier() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Symbol base_symbol(const std::string& name, std::size_t at) {
        if (auto idx = names_.find(name)) return Symbol::jet(*idx);
        if (auto s = VariableNames::reserved_symbol(name)) return *s;
        pos_ = at;
        fail("undeclared variable '" + name + "'");
    }

    Polynomial expr() {
        skip_ws();
        Polynomial acc;
        if (accept('-'))
            acc = -term();
        else {
            accept('+');
            acc = term();
        }
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        for (;;) {
            if (accept('*')) {
                acc *= factor();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                Polynomial d = factor();
                if (!d.is_constant() || d.is_zero()) {
                    pos_ = at;
                    fail("division is only allowed by a nonzero constant");
                }
                acc = acc * Rational(1 / d.constant_term());
            } else {
                return acc;
            }
        }
    }

    Polynomial factor() {
        Polynomial base = primary();
        if (accept('^')) return base.pow(integer());
        return base;
    }

    Polynomial primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            expect(')');
            return p;
        }
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return Polynomial(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t at = pos_;
            const std::string name = identifier();
            if (name == "D") {
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == '(') {
                    ++pos_;
                    const std::size_t name_at = pos_;
                    const std::string inner = identifier();
                    if (inner.empty()) fail("expected a variable name");
                    Symbol s = base_symbol(inner, name_at);
                    skip_ws();
                    std::uint32_t extra = 0;
                    while (pos_ < text_.size() && text_[pos_] == '\'') {
                        ++extra;
                        ++pos_;
                    }
                    expect(',');
                    const std::uint32_t k = integer();
                    expect(')');
                    if (!s.is_differential()) fail("D() applied to a non-differential symbol");
                    return apostrophes(s.derived(k + extra));
                }
            }
            Symbol s = base_symbol(name, at);
            std::uint32_t order = 0;
            while (pos_ < text_.size() && text_[pos_] == '\'') {
                ++order;
                ++pos_;
            }
            if (order > 0 && !s.is_differential()) {
                pos_ = at;
                fail("derivative of a non-differential symbol");
            }
            return apostrophes(s.derived(order));
        }
        fail("unexpected character '" + current_char() + "'");
    }

    Polynomial apostrophes(Symbol s) {
        std::uint32_t more = 0;
        while (pos_ < text_.size() && text_[pos_] == '\'') {
            ++more;
            ++pos_;
        }
        return Polynomial::symbol(s.derived(more));
    }
};

}  // namespace detail

/// Parses an expression over the declared variables (plus reserved names).
inline Polynomial parse_polynomial(std::string_view text, const VariableNames& names, std::size_t line = 1,
                                   std::size_t column = 1) {
    return detail::ExpressionParser(text, names, line, column).parse_all();
}

}  // namespace deltachow
