#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <string>
#include <vector>

#include "deltachow/charset.hpp"
#include "deltachow/errors.hpp"
#include "deltachow/ideal.hpp"

namespace deltachow {

/// The jet ring K{x_0..x_{n-1}}_{<=h} with n(h+1) symbols.
struct JetContext {
    std::uint32_t n = 0;
    std::uint32_t h = 0;

    /// All jet symbols, highest precedence first.
    std::vector<Symbol> symbols() const { return symbols_up_to(h); }

    std::vector<Symbol> symbols_up_to(std::uint32_t order) const {
        std::vector<Symbol> out;
        for (std::uint32_t j = 0; j <= order; ++j)
            for (std::uint32_t i = 0; i < n; ++i) out.push_back(Symbol::jet(i, j));
        sort_by_precedence_desc(out);
        return out;
    }

    std::vector<Symbol> symbols_of_order(std::uint32_t order) const {
        std::vector<Symbol> out;
        for (std::uint32_t i = n; i-- > 0;) out.push_back(Symbol::jet(i, order));
        return out;
    }

    /// Symbols of order strictly above `order` and at most h.
    std::vector<Symbol> symbols_above(std::uint32_t order) const {
        std::vector<Symbol> out;
        for (std::uint32_t j = order + 1; j <= h; ++j)
            for (std::uint32_t i = 0; i < n; ++i) out.push_back(Symbol::jet(i, j));
        return out;
    }

    friend bool operator==(const JetContext&, const JetContext&) = default;
};

/// Smallest n covering every jet symbol of the polynomials.
inline std::uint32_t variable_count(const std::vector<Polynomial>& polys) {
    std::uint32_t n = 0;
    for (const auto& s : symbols_of(polys))
        if (s.kind == SymbolKind::jet) n = std::max(n, s.index + 1);
    return n;
}

/// Kolchin data: ω(t) = d(t+1) + h.
struct KolchinData {
    std::uint32_t d = 0;
    std::uint32_t h = 0;

    mpz_class omega(std::uint32_t t) const { return mpz_class(d) * (t + 1) + h; }

    /// ω as "a*t + b" with zero parts dropped.
    std::string omega_text() const {
        const std::uint32_t constant = d + h;
        if (d == 0) return std::to_string(constant);
        std::string out = d == 1 ? "t" : std::to_string(d) + "*t";
        if (constant != 0) out += " + " + std::to_string(constant);
        return out;
    }

    friend bool operator==(const KolchinData&, const KolchinData&) = default;
};

/// Kolchin data of an orderly characteristic set: d = n - |A|, h = Σ ord.
inline KolchinData kolchin(const AscendingChain& chain, std::uint32_t n) {
    if (chain.size() > n) throw DomainError("chain has more elements than variables");
    KolchinData k;
    k.d = n - static_cast<std::uint32_t>(chain.size());
    for (const auto& f : chain.elements()) k.h += order_of(f);
    return k;
}

/// I(B_h(V)) for V = sat(chain): asat of the prolonged chain in the order-≤h ring.
inline TruncatedIdeal b_h(const AscendingChain& chain, const JetContext& ctx, const Limits& limits = {}) {
    if (ctx.h < chain.max_order()) throw DomainError("order too small");
    if (ctx.n < variable_count(chain.elements())) throw DomainError("chain uses more variables than the context");
    return asat(diff_charset_of_chain(chain, ctx.h), ctx.symbols(), limits);
}

/// Definitional admissibility test: ρ(V) ⊆ τ(ρ(π(V))). The ideal must live in ctx.
inline bool is_admissible(const TruncatedIdeal& ideal, const JetContext& ctx, const Limits& limits = {}) {
    if (ideal.is_unit(limits)) throw EmptyVariety();
    if (ctx.h == 0) return true;
    const TruncatedIdeal lower = eliminate(ideal, ctx.symbols_of_order(ctx.h), limits);
    for (const auto& g : lower.generators())
        if (!member(derive(g, 1), ideal, limits)) return false;
    return true;
}

/// The dominant component of the prolongation sequence generated by V.
struct DominantComponent {
    AscendingChain diff_chain;
    KolchinData kolchin;          ///< from dim V and dim of the projection
    std::size_t dimension = 0;    ///< dim V
    std::size_t projected = 0;    ///< dim of the closure of π(V)
};

/// Reads the dominant component off an algebraic characteristic set of an
/// irreducible admissible V ⊆ τ_h A^n.
///
/// Each variable class must appear at consecutive orders o, o+1, ..., h with
/// every element after the first linear in its leader.
inline DominantComponent dominant_component(const AscendingChain& chain, const JetContext& ctx,
                                            const Limits& limits = {}) {
    std::map<std::uint32_t, std::vector<Polynomial>> classes;
    for (const auto& f : chain.elements()) {
        const Symbol v = leader(f, chain.ranking());
        if (v.kind != SymbolKind::jet || v.index >= ctx.n || v.order > ctx.h)
            throw DomainError("chain does not live in the jet context");
        classes[v.index].push_back(f);
    }
    std::vector<Polynomial> firsts;
    for (auto& [var, members] : classes) {
        std::sort(members.begin(), members.end(), [&](const Polynomial& a, const Polynomial& b) {
            return leader(a, chain.ranking()).order < leader(b, chain.ranking()).order;
        });
        const std::uint32_t o0 = leader(members.front(), chain.ranking()).order;
        bool ok = o0 + members.size() - 1 == ctx.h;
        for (std::size_t k = 0; ok && k < members.size(); ++k) {
            const Symbol v = leader(members[k], chain.ranking());
            ok = v.order == o0 + k && (k == 0 || members[k].degree_in(v) == 1);
        }
        if (!ok)
            throw DomainError("not prolongation-admissible shape in the class of variable #" + std::to_string(var));
        firsts.push_back(members.front());
    }

    DominantComponent out;
    out.diff_chain = AscendingChain(firsts, ChainMode::differential, chain.ranking());
    const TruncatedIdeal v = asat(chain, ctx.symbols(), limits);
    out.dimension = dim_and_degree(v, limits).dimension;
    if (ctx.h > 0) {
        const TruncatedIdeal proj = eliminate(v, ctx.symbols_of_order(ctx.h), limits);
        out.projected = dim_and_degree(proj, limits).dimension;
    }
    const std::size_t d = out.dimension - out.projected;
    out.kolchin.d = static_cast<std::uint32_t>(d);
    out.kolchin.h = static_cast<std::uint32_t>(out.dimension - d * (ctx.h + 1));
    return out;
}

/// Level ℓ of the prolongation sequence of the union of the given irreducible
/// differential components: ∩_c I(B_ℓ(sat c)) in the order-≤ℓ ring of n variables.
inline TruncatedIdeal prolongation_sequence(const std::vector<AscendingChain>& components, std::uint32_t level,
                                            std::uint32_t n, const Limits& limits = {}) {
    if (components.empty()) throw DomainError("no components");
    const JetContext ctx{n, level};
    auto level_ideal = [&](const AscendingChain& c) {
        const std::uint32_t top = std::max(level, c.max_order());
        TruncatedIdeal full = b_h(c, JetContext{n, top}, limits);
        if (top == level) return full;
        return eliminate(full, JetContext{n, top}.symbols_above(level), limits);
    };
    std::vector<TruncatedIdeal> parts;
    if (limits.jobs > 1 && components.size() > 1) {
        std::vector<std::future<TruncatedIdeal>> futures;
        for (const auto& c : components) futures.push_back(std::async(std::launch::async, level_ideal, std::cref(c)));
        for (auto& f : futures) parts.push_back(f.get());
    } else {
        for (const auto& c : components) parts.push_back(level_ideal(c));
    }
    TruncatedIdeal acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = intersect(acc, parts[i], limits);
    return TruncatedIdeal(ctx.symbols(), acc.generators());
}

/// Raw prolongation ({δ^j f : ord(f) + j ≤ ℓ}); in general only an upper
/// approximation of the exact level-ℓ ideal.
struct NaiveProlongation {
    TruncatedIdeal ideal;
    bool upper_approximation = true;
};

inline NaiveProlongation naive_prolongation(const std::vector<Polynomial>& generators, std::uint32_t level,
                                            std::uint32_t n) {
    std::vector<Polynomial> out;
    for (const auto& f : generators) {
        const std::uint32_t o = order_of(f);
        if (o > level) throw DomainError("order too small");
        for (std::uint32_t j = 0; o + j <= level; ++j) out.push_back(derive(f, j));
    }
    return NaiveProlongation{TruncatedIdeal(JetContext{n, level}.symbols(), out), true};
}

}  // namespace deltachow
