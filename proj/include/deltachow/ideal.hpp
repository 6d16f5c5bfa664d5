#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "deltachow/groebner.hpp"
#include "deltachow/hilbert.hpp"
#include "deltachow/polynomial.hpp"

namespace deltachow {

/// An ideal in a polynomial ring over an explicit, finite list of ambient
/// symbols (a truncated ring K{x}_{<=l}, possibly with extra coefficient
/// symbols). Generators are stored normalized, sorted and without repeats.
///
/// The degree-reverse-lexicographic basis is computed on first use and shared
/// between copies; concurrent first use is serialized.
class TruncatedIdeal {
public:
    TruncatedIdeal() : cache_(std::make_shared<Cache>()) {}

    TruncatedIdeal(std::vector<Symbol> ambient, const std::vector<Polynomial>& generators)
        : ambient_(std::move(ambient)), cache_(std::make_shared<Cache>()) {
        sort_by_precedence_desc(ambient_);
        for (const auto& g : generators) {
            if (g.is_zero()) continue;
            for (const auto& s : g.symbols())
                if (!std::binary_search(ambient_.begin(), ambient_.end(), s,
                                        [](const Symbol& a, const Symbol& b) { return precedes(b, a); }))
                    throw DomainError("generator has a symbol outside the ambient ring");
            generators_.push_back(g.normalized());
        }
        std::sort(generators_.begin(), generators_.end(),
                  [](const Polynomial& a, const Polynomial& b) { return canonical_less(b, a); });
        generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
    }

    /// Ambient symbols, highest precedence first.
    const std::vector<Symbol>& ambient() const noexcept { return ambient_; }
    const std::vector<Polynomial>& generators() const noexcept { return generators_; }

    /// Reduced basis for degrevlex over the ambient symbols (precedence order).
    const GroebnerBasis& basis(const Limits& limits = {}) const {
        std::call_once(cache_->once,
                       [&] { cache_->basis.emplace(MonomialOrder::degrevlex(ambient_), generators_, limits); });
        return *cache_->basis;
    }

    bool is_unit(const Limits& limits = {}) const { return basis(limits).is_unit(); }

    bool contains_symbol(const Symbol& s) const {
        return std::find(ambient_.begin(), ambient_.end(), s) != ambient_.end();
    }

private:
    struct Cache {
        std::once_flag once;
        std::optional<GroebnerBasis> basis;
    };

    std::vector<Symbol> ambient_;
    std::vector<Polynomial> generators_;
    std::shared_ptr<Cache> cache_;
};

/// Dimension of the quotient ring and degree of the projective closure.
struct DimDegree {
    std::size_t dimension;
    mpz_class degree;
};

/// Reduced Gröbner basis for an arbitrary order, normalized to integer
/// content-free elements with positive leading coefficient.
inline std::vector<Polynomial> gb(const TruncatedIdeal& ideal, const MonomialOrder& order, const Limits& limits = {}) {
    GroebnerBasis basis(order, ideal.generators(), limits);
    std::vector<Polynomial> out;
    for (const auto& g : basis.elements()) out.push_back(g.normalized());
    return out;
}

/// True iff f lies in the ideal.
inline bool member(const Polynomial& f, const TruncatedIdeal& ideal, const Limits& limits = {}) {
    if (f.is_zero()) return true;
    return ideal.basis(limits).reduce(f).is_zero();
}

/// True iff every generator of `sub` lies in `ideal`.
inline bool contains(const TruncatedIdeal& ideal, const TruncatedIdeal& sub, const Limits& limits = {}) {
    for (const auto& g : sub.generators())
        if (!member(g, ideal, limits)) return false;
    return true;
}

inline bool same_ideal(const TruncatedIdeal& a, const TruncatedIdeal& b, const Limits& limits = {}) {
    return contains(a, b, limits) && contains(b, a, limits);
}

namespace detail {

inline std::vector<Symbol> minus(const std::vector<Symbol>& all, const std::vector<Symbol>& drop) {
    std::vector<Symbol> out;
    for (const auto& s : all)
        if (std::find(drop.begin(), drop.end(), s) == drop.end()) out.push_back(s);
    return out;
}

inline Symbol fresh_aux(const std::vector<Symbol>& ambient) {
    std::uint32_t next = 0;
    for (const auto& s : ambient)
        if (s.kind == SymbolKind::aux) next = std::max(next, s.index + 1);
    return Symbol::aux(next);
}

}  // namespace detail

/// I ∩ K[ambient \ drop], via a block elimination order.
inline TruncatedIdeal eliminate(const TruncatedIdeal& ideal, const std::vector<Symbol>& drop,
                                const Limits& limits = {}) {
    std::vector<Symbol> front;
    for (const auto& s : ideal.ambient())
        if (std::find(drop.begin(), drop.end(), s) != drop.end()) front.push_back(s);
    std::vector<Symbol> rest = detail::minus(ideal.ambient(), drop);
    if (front.empty()) return ideal;
    GroebnerBasis basis(MonomialOrder::elimination(front, rest), ideal.generators(), limits);
    std::vector<Polynomial> kept;
    for (const auto& g : basis.elements()) {
        bool free = true;
        for (const auto& s : front)
            if (g.contains(s)) {
                free = false;
                break;
            }
        if (free) kept.push_back(g);
    }
    return TruncatedIdeal(std::move(rest), kept);
}

/// I : f^∞ via a fresh inverse variable: (I, 1 - t f) ∩ K[ambient].
inline TruncatedIdeal saturate(const TruncatedIdeal& ideal, const Polynomial& f, const Limits& limits = {}) {
    if (f.is_zero()) throw DomainError("saturation by the zero polynomial");
    if (f.is_constant()) return ideal;
    const Symbol t = detail::fresh_aux(ideal.ambient());
    std::vector<Symbol> ambient = ideal.ambient();
    ambient.push_back(t);
    std::vector<Polynomial> gens = ideal.generators();
    gens.push_back(Polynomial(1) - Polynomial::symbol(t) * f);
    return eliminate(TruncatedIdeal(std::move(ambient), gens), {t}, limits);
}

/// I ∩ J via t I + (1 - t) J.
inline TruncatedIdeal intersect(const TruncatedIdeal& a, const TruncatedIdeal& b, const Limits& limits = {}) {
    std::vector<Symbol> ambient = a.ambient();
    ambient.insert(ambient.end(), b.ambient().begin(), b.ambient().end());
    sort_by_precedence_desc(ambient);
    const Symbol t = detail::fresh_aux(ambient);
    const Polynomial tp = Polynomial::symbol(t);
    std::vector<Polynomial> gens;
    for (const auto& g : a.generators()) gens.push_back(tp * g);
    for (const auto& g : b.generators()) gens.push_back((Polynomial(1) - tp) * g);
    std::vector<Symbol> with_t = ambient;
    with_t.push_back(t);
    return eliminate(TruncatedIdeal(std::move(with_t), gens), {t}, limits);
}

/// f ∈ √I, by testing whether (I, 1 - t f) is the unit ideal.
inline bool radical_member(const Polynomial& f, const TruncatedIdeal& ideal, const Limits& limits = {}) {
    if (f.is_zero()) return true;
    const Symbol t = detail::fresh_aux(ideal.ambient());
    std::vector<Symbol> ambient = ideal.ambient();
    for (const auto& s : f.symbols())
        if (!ideal.contains_symbol(s)) ambient.push_back(s);
    ambient.push_back(t);
    std::vector<Polynomial> gens = ideal.generators();
    gens.push_back(Polynomial(1) - Polynomial::symbol(t) * f);
    return TruncatedIdeal(std::move(ambient), gens).is_unit(limits);
}

/// √a = √b, checked generator by generator in both directions.
inline bool same_radical(const TruncatedIdeal& a, const TruncatedIdeal& b, const Limits& limits = {}) {
    for (const auto& g : b.generators())
        if (!radical_member(g, a, limits)) return false;
    for (const auto& g : a.generators())
        if (!radical_member(g, b, limits)) return false;
    return true;
}

/// Krull dimension of the quotient and degree of the projective closure,
/// from the Hilbert series of the degrevlex leading-term ideal.
inline DimDegree dim_and_degree(const TruncatedIdeal& ideal, const Limits& limits = {}) {
    const GroebnerBasis& basis = ideal.basis(limits);
    if (basis.is_unit()) throw EmptyVariety();
    auto hd = hilbert_dimension_degree(basis.leading_exponents(), ideal.ambient().size());
    return DimDegree{hd.dimension, hd.degree};
}

}  // namespace deltachow
