#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "deltachow/charset.hpp"
#include "deltachow/errors.hpp"
#include "deltachow/ideal.hpp"
#include "deltachow/prolong.hpp"

namespace deltachow {

/// Index (d, h, g, m) of a differential Chow form.
struct Index {
    std::uint32_t d = 0;
    std::uint32_t h = 0;
    std::uint32_t g = 0;
    std::uint32_t m = 0;

    friend bool operator==(const Index&, const Index&) = default;
};

/// Block-structured Chow form.
///
/// Algebraic forms live in v_{i0..width} for blocks i = 0..d, differential
/// forms in u_{ik}^{(j)} for k = 0..width, j = 0..h.
struct ChowForm {
    enum class Kind { algebraic, differential };

    Kind kind = Kind::algebraic;
    Polynomial body;
    std::uint32_t d = 0;
    std::uint32_t h = 0;
    std::uint32_t width = 0;  ///< number of point coordinates (n, or n(h+1) in jet space)

    /// Symbols of block i, highest precedence first.
    std::vector<Symbol> block_symbols(std::uint32_t i) const {
        std::vector<Symbol> out;
        for (std::uint32_t k = 0; k <= width; ++k) {
            if (kind == Kind::algebraic) {
                out.push_back(Symbol::v(i, k));
            } else {
                for (std::uint32_t j = 0; j <= h; ++j) out.push_back(Symbol::u(i, k, j));
            }
        }
        sort_by_precedence_desc(out);
        return out;
    }

    /// All block symbols, highest precedence first.
    std::vector<Symbol> all_symbols() const {
        std::vector<Symbol> out;
        for (std::uint32_t i = 0; i <= d; ++i) {
            auto b = block_symbols(i);
            out.insert(out.end(), b.begin(), b.end());
        }
        sort_by_precedence_desc(out);
        return out;
    }
};

namespace detail {

inline bool is_block_symbol(const Symbol& s) {
    return s.kind == SymbolKind::chow_u || s.kind == SymbolKind::chow_v;
}

/// Per-block total degrees, required to be the same for every term.
inline std::vector<std::uint32_t> block_degrees(const Polynomial& f, std::uint32_t blocks) {
    if (f.is_zero()) throw DomainError("zero Chow form");
    std::optional<std::vector<std::uint32_t>> profile;
    for (const auto& [m, c] : f.terms()) {
        std::vector<std::uint32_t> deg(blocks, 0);
        for (const auto& [s, e] : m.factors()) {
            if (!is_block_symbol(s) || s.block >= blocks) throw DomainError("symbol outside the Chow blocks");
            deg[s.block] += e;
        }
        if (!profile)
            profile = deg;
        else if (*profile != deg)
            throw DomainError("form is not homogeneous in each block");
    }
    return *profile;
}

inline std::uint32_t common_degree(const std::vector<std::uint32_t>& degrees) {
    for (auto x : degrees)
        if (x != degrees.front()) throw DomainError("blocks not equi-degree");
    return degrees.front();
}

/// Unique normalized generator of an elimination ideal.
inline Polynomial principal_generator(const TruncatedIdeal& ideal) {
    if (ideal.generators().empty()) throw DomainError("elimination ideal is zero");
    if (ideal.generators().size() != 1) throw DomainError("elimination ideal not principal");
    const Polynomial& f = ideal.generators().front();
    if (f.is_constant()) throw EmptyVariety();
    return f.normalized();
}

/// Coordinates in natural (order, index) order: y_1, ..., y_N.
inline std::vector<Symbol> natural_coordinates(std::vector<Symbol> ambient) {
    sort_by_precedence_desc(ambient);
    std::reverse(ambient.begin(), ambient.end());
    return ambient;
}

inline mpz_class binomial(std::uint32_t n, std::uint32_t k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace detail

/// Per-block degree m of a Chow form (checks homogeneity and equal degrees).
inline std::uint32_t block_degree(const ChowForm& f) {
    return detail::common_degree(detail::block_degrees(f.body, f.d + 1));
}

/// L_i = v_{i0} + Σ_j v_{ij} y_j.
inline Polynomial algebraic_hyperplane(std::uint32_t i, const std::vector<Symbol>& coords) {
    Polynomial l = Polynomial::symbol(Symbol::v(i, 0));
    for (std::size_t j = 0; j < coords.size(); ++j)
        l += Polynomial::symbol(Symbol::v(i, static_cast<std::uint32_t>(j + 1))) * Polynomial::symbol(coords[j]);
    return l;
}

/// L_i = u_{i0} + Σ_k u_{ik} x_k, a differential polynomial in u and x.
inline Polynomial differential_hyperplane(std::uint32_t i, std::uint32_t n) {
    Polynomial l = Polynomial::symbol(Symbol::u(i, 0));
    for (std::uint32_t k = 0; k < n; ++k)
        l += Polynomial::symbol(Symbol::u(i, k + 1)) * Polynomial::symbol(Symbol::jet(k));
    return l;
}

/// Chow form of the projective closure of the irreducible affine variety
/// V(I), with coordinates the ambient symbols of I in natural order.
inline ChowForm chow_form_algebraic(const TruncatedIdeal& ideal, std::uint32_t d, const Limits& limits = {}) {
    if (dim_and_degree(ideal, limits).dimension != d) throw DomainError("dimension mismatch");
    const std::vector<Symbol> coords = detail::natural_coordinates(ideal.ambient());
    ChowForm form;
    form.kind = ChowForm::Kind::algebraic;
    form.d = d;
    form.width = static_cast<std::uint32_t>(coords.size());
    std::vector<Polynomial> gens = ideal.generators();
    for (std::uint32_t i = 0; i <= d; ++i) gens.push_back(algebraic_hyperplane(i, coords));
    std::vector<Symbol> ambient = form.all_symbols();
    ambient.insert(ambient.end(), coords.begin(), coords.end());
    form.body = detail::principal_generator(eliminate(TruncatedIdeal(ambient, gens), coords, limits));
    block_degree(form);
    return form;
}

/// Differential Chow form of sat(chain), a variety of differential dimension
/// d and order h in n variables:
/// (I(B_h), L_i^{(j)} : i ≤ d, j ≤ h) ∩ K[u^{[h]}].
inline ChowForm chow_form_differential(const AscendingChain& chain, std::uint32_t d, std::uint32_t h,
                                       std::uint32_t n, const Limits& limits = {}) {
    if (chain.mode() != ChainMode::differential) throw DomainError("differential chain expected");
    const KolchinData k = kolchin(chain, n);
    if (k.d != d || k.h != h) throw DomainError("dimension mismatch");
    const JetContext ctx{n, h};
    const TruncatedIdeal bh = b_h(chain, ctx, limits);
    ChowForm form;
    form.kind = ChowForm::Kind::differential;
    form.d = d;
    form.h = h;
    form.width = n;
    std::vector<Polynomial> gens = bh.generators();
    for (std::uint32_t i = 0; i <= d; ++i) {
        const Polynomial l = differential_hyperplane(i, n);
        for (std::uint32_t j = 0; j <= h; ++j) gens.push_back(derive(l, j));
    }
    std::vector<Symbol> ambient = form.all_symbols();
    const std::vector<Symbol> jets = ctx.symbols();
    ambient.insert(ambient.end(), jets.begin(), jets.end());
    form.body = detail::principal_generator(eliminate(TruncatedIdeal(ambient, gens), jets, limits));
    block_degree(form);
    return form;
}

/// Index of a differential Chow form: h = ord(F, u00), g = deg(F, u00^{(h)}),
/// m = common per-block degree.
inline Index index_of(const ChowForm& f) {
    if (f.kind != ChowForm::Kind::differential) throw DomainError("differential Chow form expected");
    Index idx;
    idx.d = f.d;
    const auto o = order_in(f.body, Symbol::u(0, 0));
    if (!o) throw DomainError("u00 does not occur");
    idx.h = *o;
    idx.g = f.body.degree_in(Symbol::u(0, 0, idx.h));
    idx.m = block_degree(f);
    return idx;
}

/// Wraps a bare polynomial in u-blocks as a differential Chow form: d is the
/// largest block index, width the largest coordinate index, h the top order.
inline ChowForm as_differential_form(const Polynomial& body) {
    ChowForm f;
    f.kind = ChowForm::Kind::differential;
    f.body = body;
    bool any = false;
    for (const auto& s : body.symbols()) {
        if (s.kind != SymbolKind::chow_u) throw DomainError("differential Chow form must be a polynomial in u symbols");
        any = true;
        f.d = std::max(f.d, s.block);
        f.width = std::max(f.width, s.index);
        f.h = std::max(f.h, s.order);
    }
    if (!any) throw DomainError("constant Chow form");
    return f;
}

/// Lower bound m/(h+1) and upper bound ((d+1)m)^{nh+n+1} for deg B_h(V).
struct DegreeBound {
    Rational lower;
    mpz_class upper;
};

inline DegreeBound degree_bound(std::uint32_t n, std::uint32_t d, std::uint32_t h, std::uint32_t m) {
    if (m < 1) throw DomainError("m must be positive");
    DegreeBound b;
    b.lower = Rational(m, h + 1);
    b.lower.canonicalize();
    mpz_pow_ui(b.upper.get_mpz_t(), mpz_class((d + 1) * static_cast<unsigned long>(m)).get_mpz_t(),
               static_cast<unsigned long>(n) * h + n + 1);
    return b;
}

/// Sparse Chow coordinates against the monomials of per-block degree m,
/// enumerated in decreasing canonical lex order; the first nonzero entry is 1.
struct ChowCoordinates {
    mpz_class dimension;  ///< size of the monomial basis
    std::vector<std::pair<mpz_class, Rational>> entries;
};

inline ChowCoordinates chow_coordinates(const ChowForm& f) {
    const std::uint32_t m = block_degree(f);
    const std::uint32_t blocks = f.d + 1;
    const std::vector<Symbol> vars = f.all_symbols();
    std::vector<std::uint32_t> block_size(blocks, 0);
    for (const auto& s : vars) ++block_size[s.block];

    ChowCoordinates out;
    out.dimension = 1;
    for (std::uint32_t b = 0; b < blocks; ++b) out.dimension *= detail::binomial(m + block_size[b] - 1, block_size[b] - 1);

    auto completions = [&](const std::vector<std::uint32_t>& rem, const std::vector<std::uint32_t>& left) {
        mpz_class c = 1;
        for (std::uint32_t b = 0; b < blocks; ++b) {
            if (left[b] == 0) {
                if (rem[b] != 0) return mpz_class(0);
                continue;
            }
            c *= detail::binomial(rem[b] + left[b] - 1, left[b] - 1);
        }
        return c;
    };

    const Rational scale = 1 / f.body.leading_coefficient();
    for (const auto& [mono, coeff] : f.body.terms()) {
        std::vector<std::uint32_t> rem(blocks, m);
        std::vector<std::uint32_t> left = block_size;
        mpz_class rank = 0;
        for (const auto& s : vars) {
            const std::uint32_t b = s.block;
            --left[b];
            const std::uint32_t e = mono.degree_in(s);
            for (std::uint32_t x = e + 1; x <= rem[b]; ++x) {
                auto r = rem;
                r[b] -= x;
                rank += completions(r, left);
            }
            rem[b] -= e;
        }
        out.entries.emplace_back(rank, Rational(coeff * scale));
    }
    return out;
}

/// A formal sum Σ s_i V_i of irreducible varieties given by chains.
///
/// Differential components are characteristic sets of sat-ideals in n
/// variables; algebraic components are chains whose asat lives in the jet
/// ring of n variables up to order `ambient_order`.
struct Cycle {
    struct Component {
        std::uint32_t multiplicity = 1;
        AscendingChain chain;
    };
    ChowForm::Kind kind = ChowForm::Kind::differential;
    std::uint32_t n = 1;
    std::uint32_t ambient_order = 0;
    std::vector<Component> components;
};

namespace detail {

template <class Fn>
std::vector<ChowForm> map_components(const Cycle& cycle, const Limits& limits, Fn fn) {
    std::vector<ChowForm> out;
    if (limits.jobs > 1 && cycle.components.size() > 1) {
        std::vector<std::future<ChowForm>> futures;
        for (const auto& c : cycle.components) futures.push_back(std::async(std::launch::async, fn, std::cref(c)));
        for (auto& f : futures) out.push_back(f.get());
    } else {
        for (const auto& c : cycle.components) out.push_back(fn(c));
    }
    return out;
}

inline ChowForm product_form(const Cycle& cycle, const std::vector<ChowForm>& forms) {
    ChowForm out = forms.front();
    Polynomial body(1);
    for (std::size_t i = 0; i < forms.size(); ++i) body *= forms[i].body.pow(cycle.components[i].multiplicity);
    out.body = body.normalized();
    return out;
}

inline void check_cycle(const Cycle& cycle) {
    if (cycle.components.empty()) throw DomainError("empty cycle");
    for (const auto& c : cycle.components)
        if (c.multiplicity == 0) throw DomainError("multiplicities must be positive");
}

}  // namespace detail

/// Common (d, h) of an order-unmixed differential cycle.
inline KolchinData cycle_kolchin(const Cycle& cycle) {
    detail::check_cycle(cycle);
    const KolchinData first = kolchin(cycle.components.front().chain, cycle.n);
    for (const auto& c : cycle.components)
        if (!(kolchin(c.chain, cycle.n) == first)) throw DomainError("not order-unmixed");
    return first;
}

/// Chow form of a cycle: ∏ F_i^{s_i}, normalized.
inline ChowForm cycle_chow_form(const Cycle& cycle, const Limits& limits = {}) {
    detail::check_cycle(cycle);
    if (cycle.kind == ChowForm::Kind::differential) {
        const KolchinData k = cycle_kolchin(cycle);
        auto forms = detail::map_components(cycle, limits, [&](const Cycle::Component& c) {
            return chow_form_differential(c.chain, k.d, k.h, cycle.n, limits);
        });
        return detail::product_form(cycle, forms);
    }
    const JetContext ctx{cycle.n, cycle.ambient_order};
    std::vector<TruncatedIdeal> ideals;
    std::vector<std::uint32_t> dims;
    for (const auto& c : cycle.components) {
        ideals.push_back(asat(c.chain, ctx.symbols(), limits));
        dims.push_back(static_cast<std::uint32_t>(dim_and_degree(ideals.back(), limits).dimension));
        if (dims.back() != dims.front()) throw DomainError("components differ in dimension");
    }
    std::vector<ChowForm> forms;
    for (const auto& ideal : ideals) forms.push_back(chow_form_algebraic(ideal, dims.front(), limits));
    return detail::product_form(cycle, forms);
}

/// Algebraic Chow form of Σ s_i B_h(V_i) ⊆ A^{n(h+1)}, a cycle of dimension
/// d(h+1)+h. Each deg B_h(V_i) is checked against the degree bound.
inline ChowForm cycle_to_algebraic_chow(const Cycle& cycle, std::uint32_t h, const Limits& limits = {}) {
    if (cycle.kind != ChowForm::Kind::differential) throw DomainError("differential cycle expected");
    const KolchinData k = cycle_kolchin(cycle);
    if (k.h != h) throw DomainError("cycle order differs from h");
    const JetContext ctx{cycle.n, h};
    const std::uint32_t dim = k.d * (h + 1) + h;
    auto forms = detail::map_components(cycle, limits, [&](const Cycle::Component& c) {
        const TruncatedIdeal bh = b_h(c.chain, ctx, limits);
        const Index idx = index_of(chow_form_differential(c.chain, k.d, h, cycle.n, limits));
        const DegreeBound bound = degree_bound(cycle.n, k.d, h, idx.m);
        const DimDegree dd = dim_and_degree(bh, limits);
        if (dd.degree > bound.upper || Rational(dd.degree) < bound.lower || dd.degree < idx.g)
            throw DomainError("degree bound exceeded");
        return chow_form_algebraic(bh, dim, limits);
    });
    return detail::product_form(cycle, forms);
}

}  // namespace deltachow
