#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "deltachow/errors.hpp"
#include "deltachow/polynomial.hpp"

namespace deltachow {

/// A differential ranking on derivative symbols.
///
/// The orderly ranking compares derivative order first and then the variable
/// index: x_i^{(j)} < x_k^{(l)} iff j < l, or j = l and i < k. The
/// elimination ranking compares the position of the variable in a
/// user-supplied sequence (lowest first) and then the order. Non-jet symbols
/// are compared by canonical precedence in both kinds.
class Ranking {
public:
    enum class Kind { orderly, elimination };

    static Ranking orderly() { return Ranking(Kind::orderly, {}); }
    static Ranking elimination(std::vector<std::uint32_t> lowest_first) {
        return Ranking(Kind::elimination, std::move(lowest_first));
    }

    Kind kind() const noexcept { return kind_; }

    /// Strict "a ranks below b".
    bool less(const Symbol& a, const Symbol& b) const {
        if (kind_ == Kind::elimination && a.kind == SymbolKind::jet && b.kind == SymbolKind::jet) {
            const auto pa = position(a.index);
            const auto pb = position(b.index);
            return std::tie(pa, a.order) < std::tie(pb, b.order);
        }
        return precedes(a, b);
    }

    /// Symbols sorted from highest to lowest rank.
    std::vector<Symbol> sorted_desc(std::vector<Symbol> symbols) const {
        std::sort(symbols.begin(), symbols.end(), [this](const Symbol& a, const Symbol& b) { return less(b, a); });
        symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
        return symbols;
    }

    friend bool operator==(const Ranking&, const Ranking&) = default;

private:
    Ranking(Kind k, std::vector<std::uint32_t> seq) : kind_(k), sequence_(std::move(seq)) {}

    std::size_t position(std::uint32_t var) const {
        auto it = std::find(sequence_.begin(), sequence_.end(), var);
        // Variables missing from the sequence rank above the listed ones, by index.
        if (it == sequence_.end()) return sequence_.size() + var;
        return static_cast<std::size_t>(it - sequence_.begin());
    }

    Kind kind_;
    std::vector<std::uint32_t> sequence_;
};

/// One application of the formal derivation δ (Leibniz rule, δ = 0 on Q and
/// on non-differential symbols).
inline Polynomial derive_once(const Polynomial& f) {
    Polynomial out;
    for (const auto& [m, c] : f.terms()) {
        for (const auto& [s, e] : m.factors()) {
            if (!s.is_differential()) continue;
            Monomial rest = m.without(s);
            if (e > 1) rest = rest * Monomial(s, e - 1);
            out.add_term(rest * Monomial(s.derived()), Rational(c * e));
        }
    }
    return out;
}

/// δ^k f.
inline Polynomial derive(const Polynomial& f, std::uint32_t k) {
    Polynomial out = f;
    for (std::uint32_t i = 0; i < k; ++i) out = derive_once(out);
    return out;
}

/// Highest derivative order of a differential symbol in f (0 for constants).
inline std::uint32_t order_of(const Polynomial& f) {
    std::uint32_t o = 0;
    for (const auto& s : f.symbols())
        if (s.is_differential()) o = std::max(o, s.order);
    return o;
}

/// Highest derivative order of `family` occurring in f, if any.
inline std::optional<std::uint32_t> order_in(const Polynomial& f, const Symbol& family) {
    std::optional<std::uint32_t> o;
    for (const auto& s : f.symbols())
        if (s.same_family(family)) o = std::max(o.value_or(0), s.order);
    return o;
}

inline Symbol leader(const Polynomial& f, const Ranking& ranking = Ranking::orderly()) {
    if (f.is_constant()) throw DomainError("constant polynomial has no leader");
    auto syms = f.symbols();
    return *std::max_element(syms.begin(), syms.end(),
                             [&](const Symbol& a, const Symbol& b) { return ranking.less(a, b); });
}

inline Polynomial initial(const Polynomial& f, const Ranking& ranking = Ranking::orderly()) {
    const Symbol v = leader(f, ranking);
    return f.coefficient(v, f.degree_in(v));
}

inline Polynomial separant(const Polynomial& f, const Ranking& ranking = Ranking::orderly()) {
    return f.partial(leader(f, ranking));
}

struct LeaderData {
    Symbol leader;
    Polynomial initial;
    Polynomial separant;
};

inline LeaderData leader_initial_separant(const Polynomial& f, const Ranking& ranking = Ranking::orderly()) {
    const Symbol v = leader(f, ranking);
    return {v, f.coefficient(v, f.degree_in(v)), f.partial(v)};
}

enum class RankOrder { lower, same, higher };

/// Compares (leader, degree in leader) lexicographically.
inline RankOrder rank_compare(const Polynomial& f, const Polynomial& g, const Ranking& ranking = Ranking::orderly()) {
    const Symbol lf = leader(f, ranking);
    const Symbol lg = leader(g, ranking);
    if (ranking.less(lf, lg)) return RankOrder::lower;
    if (ranking.less(lg, lf)) return RankOrder::higher;
    const auto df = f.degree_in(lf);
    const auto dg = g.degree_in(lg);
    if (df < dg) return RankOrder::lower;
    if (df > dg) return RankOrder::higher;
    return RankOrder::same;
}

/// Reduction modes: algebraic reduction treats every symbol as independent
/// and only lowers leader degrees; differential reduction first removes
/// proper derivatives of leaders.
enum class ReductionMode { algebraic, differential };

/// Record of a Ritt reduction: H·g − remainder = Σ quotient_k · δ^{derivative_k} A_{chain_index_k}.
struct RittReduction {
    struct Multiplier {
        std::size_t chain_index;
        bool separant;  ///< false: initial of A_i; true: separant of A_i
        std::uint32_t exponent;
    };
    struct Term {
        std::size_t chain_index;
        std::uint32_t derivative;
        Polynomial quotient;
    };

    Polynomial remainder;
    Polynomial multiplier = Polynomial(1);
    std::vector<Multiplier> factors;
    std::vector<Term> terms;
    std::uint32_t max_order = 0;  ///< highest order of any δ^k A_i used

    /// Expands the combination and checks the identity exactly.
    bool verifies(const Polynomial& g, const std::vector<Polynomial>& chain) const {
        Polynomial lhs = multiplier * g - remainder;
        Polynomial rhs;
        for (const auto& t : terms) rhs += t.quotient * derive(chain.at(t.chain_index), t.derivative);
        return lhs == rhs;
    }
};

namespace detail {

/// Pseudo-division of r by p with respect to v; updates the certificate.
inline void pseudo_reduce(Polynomial& r, const Polynomial& p, const Symbol& v, std::size_t chain_index,
                          std::uint32_t derivative, bool by_separant, RittReduction& cert) {
    const std::uint32_t dp = p.degree_in(v);
    const Polynomial lead = p.coefficient(v, dp);
    std::uint32_t count = 0;
    Polynomial quotient;
    while (!r.is_zero() && r.degree_in(v) >= dp) {
        const std::uint32_t dr = r.degree_in(v);
        const Polynomial t = r.coefficient(v, dr) * Polynomial::symbol(v, dr - dp);
        r = lead * r - t * p;
        for (auto& term : cert.terms) term.quotient = lead * term.quotient;
        quotient = lead * quotient + t;
        cert.multiplier = lead * cert.multiplier;
        ++count;
    }
    if (count == 0) return;
    cert.terms.push_back({chain_index, derivative, quotient});
    cert.factors.push_back({chain_index, by_separant, count});
}

}  // namespace detail

/// Ritt reduction of g by an auto-reduced chain.
///
/// Repeatedly takes the highest-ranked offending symbol of the current
/// remainder: a proper derivative δ^k ld(A_i) is removed by pseudo-division
/// with δ^k A_i (whose initial is the separant of A_i); a leader whose degree
/// reaches that of A_i is lowered by pseudo-division with A_i.
inline RittReduction ritt_reduce(const Polynomial& g, const std::vector<Polynomial>& chain,
                                 ReductionMode mode = ReductionMode::differential,
                                 const Ranking& ranking = Ranking::orderly()) {
    RittReduction cert;
    cert.remainder = g;
    std::vector<Symbol> leaders;
    std::vector<std::uint32_t> degrees;
    for (const auto& a : chain) {
        if (a.is_constant()) {
            // A nonzero constant in the chain reduces everything to zero.
            if (a.is_zero()) throw DomainError("zero polynomial in a chain");
            cert.multiplier = a;
            cert.terms.push_back({static_cast<std::size_t>(&a - chain.data()), 0, g});
            cert.remainder = Polynomial();
            cert.factors.push_back({static_cast<std::size_t>(&a - chain.data()), false, 1});
            return cert;
        }
        leaders.push_back(leader(a, ranking));
        degrees.push_back(a.degree_in(leaders.back()));
    }
    for (const auto& a : chain) cert.max_order = std::max(cert.max_order, order_of(a));

    for (;;) {
        Polynomial& r = cert.remainder;
        if (r.is_zero()) break;
        std::optional<std::tuple<Symbol, std::size_t, std::uint32_t>> best;  // symbol, chain idx, k
        for (const auto& s : r.symbols()) {
            if (best && !ranking.less(std::get<0>(*best), s)) continue;
            for (std::size_t i = 0; i < leaders.size(); ++i) {
                const Symbol& v = leaders[i];
                if (mode == ReductionMode::differential && v.is_differential() && s.same_family(v) &&
                    s.order > v.order) {
                    best = std::make_tuple(s, i, s.order - v.order);
                    break;
                }
                if (s == v && r.degree_in(s) >= degrees[i]) {
                    best = std::make_tuple(s, i, 0u);
                    break;
                }
            }
        }
        if (!best) break;
        const auto& [sym, i, k] = *best;
        if (k > 0) {
            const Polynomial p = derive(chain[i], k);
            cert.max_order = std::max(cert.max_order, order_of(p));
            detail::pseudo_reduce(r, p, sym, i, k, true, cert);
        } else {
            detail::pseudo_reduce(r, chain[i], sym, i, 0, false, cert);
        }
    }
    return cert;
}

/// True when f is reduced with respect to a (no proper derivative of ld(a) in
/// differential mode, and degree in ld(a) below that of a).
inline bool is_reduced_wrt(const Polynomial& f, const Polynomial& a, ReductionMode mode,
                           const Ranking& ranking = Ranking::orderly()) {
    if (a.is_constant()) return false;
    const Symbol v = leader(a, ranking);
    if (f.degree_in(v) >= a.degree_in(v)) return false;
    if (mode == ReductionMode::differential && v.is_differential())
        for (const auto& s : f.symbols())
            if (s.same_family(v) && s.order > v.order) return false;
    return true;
}

}  // namespace deltachow
