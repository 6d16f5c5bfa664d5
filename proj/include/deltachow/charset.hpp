#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "deltachow/diffpoly.hpp"
#include "deltachow/errors.hpp"
#include "deltachow/ideal.hpp"

namespace deltachow {

enum class ChainMode { algebraic, differential };

/// An ascending chain A_1 < ... < A_r, stored content-free and sorted by rank.
///
/// Algebraic chains have strictly increasing leaders and
/// deg(A_j, ld(A_i)) < deg(A_i, ld(A_i)) for j > i. Differential chains are
/// auto-reduced: each element is reduced with respect to every other one.
class AscendingChain {
public:
    AscendingChain() = default;

    AscendingChain(std::vector<Polynomial> elements, ChainMode mode, Ranking ranking = Ranking::orderly())
        : mode_(mode), ranking_(std::move(ranking)) {
        for (auto& e : elements) {
            if (e.is_zero()) continue;
            if (e.is_constant()) throw DomainError("chain contains a nonzero constant");
            elements_.push_back(e.normalized());
        }
        std::stable_sort(elements_.begin(), elements_.end(), [this](const Polynomial& a, const Polynomial& b) {
            return rank_compare(a, b, ranking_) == RankOrder::lower;
        });
        validate();
    }

    const std::vector<Polynomial>& elements() const noexcept { return elements_; }
    ChainMode mode() const noexcept { return mode_; }
    const Ranking& ranking() const noexcept { return ranking_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    const Polynomial& operator[](std::size_t i) const { return elements_.at(i); }

    std::vector<Symbol> leaders() const {
        std::vector<Symbol> out;
        for (const auto& e : elements_) out.push_back(leader(e, ranking_));
        return out;
    }

    std::vector<Polynomial> initials() const {
        std::vector<Polynomial> out;
        for (const auto& e : elements_) out.push_back(initial(e, ranking_));
        return out;
    }

    std::vector<Polynomial> separants() const {
        std::vector<Polynomial> out;
        for (const auto& e : elements_) out.push_back(separant(e, ranking_));
        return out;
    }

    std::uint32_t max_order() const {
        std::uint32_t o = 0;
        for (const auto& e : elements_) o = std::max(o, order_of(e));
        return o;
    }

    /// The same elements reinterpreted in another mode (validated again).
    AscendingChain as(ChainMode mode) const { return AscendingChain(elements_, mode, ranking_); }

    friend bool operator==(const AscendingChain& a, const AscendingChain& b) {
        return a.mode_ == b.mode_ && a.elements_ == b.elements_;
    }

private:
    void validate() const {
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            const Symbol vi = leader(elements_[i], ranking_);
            const auto di = elements_[i].degree_in(vi);
            for (std::size_t j = 0; j < elements_.size(); ++j) {
                if (i == j) continue;
                if (mode_ == ChainMode::algebraic) {
                    if (j > i && !ranking_.less(vi, leader(elements_[j], ranking_)))
                        throw DomainError("not an ascending chain: repeated leader");
                    if (j > i && elements_[j].degree_in(vi) >= di)
                        throw DomainError("not an ascending chain: degree condition fails");
                } else if (!is_reduced_wrt(elements_[j], elements_[i], ReductionMode::differential, ranking_)) {
                    throw DomainError("not an auto-reduced set");
                }
            }
        }
    }

    std::vector<Polynomial> elements_;
    ChainMode mode_ = ChainMode::algebraic;
    Ranking ranking_ = Ranking::orderly();
};

/// Ritt reduction by a chain in the reduction mode matching its chain mode.
inline RittReduction reduce_by(const Polynomial& g, const AscendingChain& chain) {
    return ritt_reduce(g, chain.elements(),
                       chain.mode() == ChainMode::algebraic ? ReductionMode::algebraic : ReductionMode::differential,
                       chain.ranking());
}

namespace detail {

/// Rank order with the deterministic tie-breaks: total degree, then canonical order.
inline bool chain_candidate_less(const Polynomial& a, const Polynomial& b, const Ranking& ranking) {
    switch (rank_compare(a, b, ranking)) {
        case RankOrder::lower: return true;
        case RankOrder::higher: return false;
        case RankOrder::same: break;
    }
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    return canonical_less(a, b);
}

/// A basic (lowest-rank) algebraic chain extracted from a polynomial set.
inline std::vector<Polynomial> basic_set(std::vector<Polynomial> set, const Ranking& ranking) {
    std::sort(set.begin(), set.end(),
              [&](const Polynomial& a, const Polynomial& b) { return chain_candidate_less(a, b, ranking); });
    std::vector<Polynomial> chain;
    for (const auto& f : set) {
        if (f.is_zero()) continue;
        if (f.is_constant()) throw DomainError("improper ideal");
        const Symbol v = leader(f, ranking);
        if (!chain.empty() && !ranking.less(leader(chain.back(), ranking), v)) continue;
        bool reduced = true;
        for (const auto& a : chain)
            if (!is_reduced_wrt(f, a, ReductionMode::algebraic, ranking)) {
                reduced = false;
                break;
            }
        if (reduced) chain.push_back(f);
    }
    return chain;
}

}  // namespace detail

/// Algebraic characteristic set of a proper ideal.
///
/// Starts from the reduced lex basis (variables in ranking order), takes a
/// basic set, and adds nonzero pseudo-remainders until every generator and
/// every basis element reduces to zero.
inline AscendingChain charset_of(const TruncatedIdeal& ideal, const Ranking& ranking = Ranking::orderly(),
                                 const Limits& limits = {}) {
    if (ideal.is_unit(limits)) throw DomainError("improper ideal");
    std::vector<Symbol> vars = ranking.sorted_desc(ideal.ambient());
    std::vector<Polynomial> pool = gb(ideal, MonomialOrder::lex(vars), limits);
    std::vector<Polynomial> targets = pool;
    targets.insert(targets.end(), ideal.generators().begin(), ideal.generators().end());
    for (;;) {
        std::vector<Polynomial> chain = detail::basic_set(pool, ranking);
        bool changed = false;
        for (const auto& g : targets) {
            Polynomial r = ritt_reduce(g, chain, ReductionMode::algebraic, ranking).remainder;
            if (r.is_zero()) continue;
            if (r.is_constant()) throw DomainError("improper ideal");
            pool.push_back(r.normalized());
            changed = true;
            break;
        }
        if (!changed) return AscendingChain(std::move(chain), ChainMode::algebraic, ranking);
    }
}

/// asat(A) = (A) : (∏ initials)^∞ in the given ambient ring.
inline TruncatedIdeal asat(const AscendingChain& chain, std::vector<Symbol> ambient, const Limits& limits = {}) {
    TruncatedIdeal ideal(std::move(ambient), chain.elements());
    for (const auto& i : chain.initials()) ideal = saturate(ideal, i, limits);
    return ideal;
}

/// asat over the symbols occurring in the chain.
inline TruncatedIdeal asat(const AscendingChain& chain, const Limits& limits = {}) {
    return asat(chain, symbols_of(chain.elements()), limits);
}

/// The algebraic chain {δ^k f : f ∈ A, ord(f) + k ≤ h}, sorted by rank.
///
/// A proper derivative can contain a lower leader of another class to a
/// degree the chain condition forbids; such an element is replaced by its
/// algebraic pseudo-remainder by the lower elements, which keeps its leader.
inline AscendingChain diff_charset_of_chain(const AscendingChain& chain, std::uint32_t h) {
    const Ranking& ranking = chain.ranking();
    std::vector<Polynomial> out;
    for (const auto& f : chain.elements()) {
        const std::uint32_t o = order_of(f);
        for (std::uint32_t k = 0; o + k <= h; ++k) out.push_back(derive(f, k).normalized());
    }
    std::stable_sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
        return rank_compare(a, b, ranking) == RankOrder::lower;
    });
    for (std::size_t i = 1; i < out.size(); ++i) {
        const std::vector<Polynomial> lower(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(i));
        out[i] = ritt_reduce(out[i], lower, ReductionMode::algebraic, ranking).remainder.normalized();
    }
    return AscendingChain(std::move(out), ChainMode::algebraic, ranking);
}

/// Outcome of the bounded irreducibility test.
struct IrreducibilityVerdict {
    enum class Kind { yes, no, unknown };
    Kind kind = Kind::unknown;
    std::uint32_t bound = 0;
    std::optional<Polynomial> p;  ///< witnesses when kind == no
    std::optional<Polynomial> q;
    std::string note;

    std::string label() const {
        switch (kind) {
            case Kind::yes: return "yes";
            case Kind::no: return "no";
            case Kind::unknown: return "unknown(" + std::to_string(bound) + ")";
        }
        return "unknown";
    }
};

namespace detail {

/// Square root of f over Q when f = s^2 for some s in Q[...]; nullopt otherwise.
inline std::optional<Polynomial> exact_sqrt(const Polynomial& f) {
    if (f.is_zero()) return Polynomial();
    const Rational lc = f.leading_coefficient();
    if (lc < 0) return std::nullopt;
    if (mpz_perfect_square_p(lc.get_num_mpz_t()) == 0 || mpz_perfect_square_p(lc.get_den_mpz_t()) == 0)
        return std::nullopt;
    std::vector<Monomial::Factor> half;
    for (const auto& [s, e] : f.leading_monomial().factors()) {
        if (e % 2 != 0) return std::nullopt;
        half.emplace_back(s, e / 2);
    }
    const Monomial lead = Monomial::from_factors(half);
    Rational root(Integer(sqrt(lc.get_num())), Integer(sqrt(lc.get_den())));
    Polynomial s = Polynomial::term(root, lead);
    const std::uint32_t half_degree = f.total_degree() / 2;
    const LexGreater greater;
    Monomial last = lead;
    for (;;) {
        const Polynomial r = f - s * s;
        if (r.is_zero()) return s;
        auto t = divide(r.leading_monomial(), lead);
        if (!t || t->degree() > half_degree || !greater(last, *t)) return std::nullopt;
        last = *t;
        s.add_term(*t, Rational(r.leading_coefficient() / (2 * root)));
    }
}

/// Kernel of a dense rational matrix (rows x cols), as a list of basis vectors.
inline std::vector<std::vector<Rational>> kernel(std::vector<std::vector<Rational>> rows, std::size_t cols) {
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        const Rational inv = 1 / rows[rank][c];
        for (auto& x : rows[rank]) x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            const Rational k = rows[r][c];
            for (std::size_t j = 0; j < cols; ++j) rows[r][j] -= k * rows[rank][j];
        }
        pivot_cols.push_back(c);
        ++rank;
    }
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
        std::vector<Rational> v(cols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Monomials of total degree ≤ bound over `vars` that are reduced w.r.t. the chain.
inline std::vector<Monomial> reduced_monomials(const std::vector<Symbol>& vars, const AscendingChain& chain,
                                               std::uint32_t bound) {
    const auto leaders = chain.leaders();
    std::vector<std::uint32_t> caps(vars.size(), bound);
    for (std::size_t i = 0; i < leaders.size(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), leaders[i]);
        if (it != vars.end()) {
            const std::uint32_t d = chain[i].degree_in(leaders[i]);
            caps[static_cast<std::size_t>(it - vars.begin())] = std::min(bound, d - 1);
        }
    }
    std::vector<Monomial> out{Monomial{}};
    for (std::size_t v = 0; v < vars.size(); ++v) {
        std::vector<Monomial> next;
        for (const auto& m : out)
            for (std::uint32_t e = 0; e <= caps[v] && m.degree() + e <= bound; ++e)
                next.push_back(m * Monomial(vars[v], e));
        out = std::move(next);
    }
    return out;
}

}  // namespace detail

/// Bounded semi-decision for irreducibility of an algebraic chain over Q.
///
/// A single element of leader degree one is irreducible; for leader degree
/// two the discriminant of its primitive part is tested for being a square.
/// Otherwise reduced witnesses P (a monomial) and Q (degree ≤ bound) with
/// PQ ∈ asat(A) are searched by linear algebra; failing that the verdict is
/// unknown(bound).
inline IrreducibilityVerdict is_irreducible_chain(const AscendingChain& chain, std::uint32_t bound,
                                                  const Limits& limits = {}) {
    IrreducibilityVerdict verdict;
    verdict.bound = bound;
    if (chain.empty()) {
        verdict.kind = IrreducibilityVerdict::Kind::yes;
        return verdict;
    }
    const Ranking& ranking = chain.ranking();
    if (chain.size() == 1) {
        const Polynomial& f = chain[0];
        const Symbol v = leader(f, ranking);
        const std::uint32_t deg = f.degree_in(v);
        if (deg == 1) {
            verdict.kind = IrreducibilityVerdict::Kind::yes;
            return verdict;
        }
        if (deg == 2) {
            const Polynomial a = f.coefficient(v, 2);
            const Polynomial b = f.coefficient(v, 1);
            const Polynomial c = f.coefficient(v, 0);
            const Polynomial disc = b * b - Polynomial(4) * a * c;
            const Polynomial vp = Polynomial::symbol(v);
            if (auto s = detail::exact_sqrt(disc)) {
                verdict.kind = IrreducibilityVerdict::Kind::no;
                verdict.p = (Polynomial(2) * a * vp + b - *s).normalized();
                verdict.q = (Polynomial(2) * a * vp + b + *s).normalized();
                return verdict;
            }
            const Rational lc = disc.leading_coefficient();
            if (detail::exact_sqrt(disc * Rational(1 / lc))) {
                verdict.note = "splits only over an extension of Q";
            }
            verdict.kind = IrreducibilityVerdict::Kind::yes;
            return verdict;
        }
    }

    const TruncatedIdeal sat = asat(chain, limits);
    const GroebnerBasis& basis = sat.basis(limits);
    const std::vector<Monomial> monos = detail::reduced_monomials(sat.ambient(), chain, bound);
    for (const auto& pm : monos) {
        if (pm.empty()) continue;
        const Polynomial p = Polynomial::term(1, pm);
        if (basis.reduce(p).is_zero()) continue;
        std::vector<Polynomial> images;
        std::map<Monomial, std::size_t, LexGreater> row_of;
        for (const auto& qm : monos) {
            images.push_back(basis.reduce(p * Polynomial::term(1, qm)));
            for (const auto& [m, c] : images.back().terms()) row_of.emplace(m, 0);
        }
        std::size_t r = 0;
        for (auto& [m, idx] : row_of) idx = r++;
        std::vector<std::vector<Rational>> rows(row_of.size(), std::vector<Rational>(monos.size(), 0));
        for (std::size_t j = 0; j < images.size(); ++j)
            for (const auto& [m, c] : images[j].terms()) rows[row_of.at(m)][j] = c;
        for (const auto& vec : detail::kernel(std::move(rows), monos.size())) {
            Polynomial q;
            for (std::size_t j = 0; j < vec.size(); ++j)
                if (vec[j] != 0) q.add_term(monos[j], vec[j]);
            if (q.is_zero() || basis.reduce(q).is_zero()) continue;
            verdict.kind = IrreducibilityVerdict::Kind::no;
            verdict.p = p;
            verdict.q = q.normalized();
            return verdict;
        }
    }
    verdict.kind = IrreducibilityVerdict::Kind::unknown;
    return verdict;
}

/// Characteristic set together with its saturation and irreducibility verdict.
struct CharSetResult {
    AscendingChain chain;
    TruncatedIdeal saturation;
    IrreducibilityVerdict irreducible;
};

inline CharSetResult characteristic_set(const TruncatedIdeal& ideal, std::uint32_t irreducibility_bound,
                                        const Ranking& ranking = Ranking::orderly(), const Limits& limits = {}) {
    AscendingChain chain = charset_of(ideal, ranking, limits);
    TruncatedIdeal sat = asat(chain, ideal.ambient(), limits);
    IrreducibilityVerdict v = is_irreducible_chain(chain, irreducibility_bound, limits);
    return CharSetResult{std::move(chain), std::move(sat), std::move(v)};
}

}  // namespace deltachow
