#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <tuple>
#include <vector>

namespace deltachow {

/// Kinds of indeterminates that can occur in a polynomial.
///
/// `jet` symbols are derivatives x_i^{(j)} of the declared differential
/// variables. `chow_u` symbols are the differential hyperplane coefficients
/// u_{ik}^{(j)}; `chow_v` symbols are algebraic hyperplane coefficients
/// v_{ij}. `aux` symbols are fresh variables introduced by saturation and
/// intersection; they never survive in a returned result.
enum class SymbolKind : std::uint8_t { aux = 0, chow_v = 1, chow_u = 2, jet = 3 };

/// One indeterminate. For a jet symbol `index` is the variable number
/// (0-based) and `order` the derivative order; `block` is unused.
struct Symbol {
    SymbolKind kind = SymbolKind::jet;
    std::uint32_t block = 0;
    std::uint32_t index = 0;
    std::uint32_t order = 0;

    static constexpr Symbol jet(std::uint32_t var, std::uint32_t order = 0) {
        return Symbol{SymbolKind::jet, 0, var, order};
    }
    static constexpr Symbol u(std::uint32_t block, std::uint32_t index, std::uint32_t order = 0) {
        return Symbol{SymbolKind::chow_u, block, index, order};
    }
    static constexpr Symbol v(std::uint32_t block, std::uint32_t index) {
        return Symbol{SymbolKind::chow_v, block, index, 0};
    }
    static constexpr Symbol aux(std::uint32_t index) { return Symbol{SymbolKind::aux, 0, index, 0}; }

    /// True when the formal derivation acts nontrivially on the symbol.
    constexpr bool is_differential() const {
        return kind == SymbolKind::jet || kind == SymbolKind::chow_u;
    }

    /// δ applied to the symbol; only meaningful for differential symbols.
    constexpr Symbol derived(std::uint32_t k = 1) const {
        Symbol s = *this;
        s.order += k;
        return s;
    }

    /// Same differential indeterminate, any derivative order.
    constexpr bool same_family(const Symbol& other) const {
        return kind == other.kind && block == other.block && index == other.index;
    }

    friend constexpr bool operator==(const Symbol&, const Symbol&) = default;
    friend constexpr auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// Canonical precedence: derivative order first, then kind, then position.
/// Jet symbols with a larger variable index rank higher; for the hyperplane
/// coefficients the smaller (block, index) pair ranks higher, so u_{00}^{(j)}
/// leads its derivative level.
inline auto precedence_key(const Symbol& s) {
    const std::int64_t pos = s.kind == SymbolKind::jet
                                 ? static_cast<std::int64_t>(s.index)
                                 : -(static_cast<std::int64_t>(s.block) * (std::int64_t{1} << 32) +
                                     static_cast<std::int64_t>(s.index));
    return std::make_tuple(s.order, static_cast<std::uint8_t>(s.kind), pos);
}

/// Strict "ranks below" in canonical precedence.
inline bool precedes(const Symbol& a, const Symbol& b) { return precedence_key(a) < precedence_key(b); }

/// Display order for the factors of a monomial: u00^2*u01*u00'.
inline bool display_less(const Symbol& a, const Symbol& b) {
    auto key = [](const Symbol& s) {
        static constexpr std::uint8_t kind_rank[] = {3, 0, 1, 2};  // aux, v, u, jet
        return std::make_tuple(s.order, kind_rank[static_cast<std::uint8_t>(s.kind)], s.block, s.index);
    };
    return key(a) < key(b);
}

/// Sorts symbols from highest to lowest canonical precedence.
inline void sort_by_precedence_desc(std::vector<Symbol>& symbols) {
    std::sort(symbols.begin(), symbols.end(), [](const Symbol& a, const Symbol& b) { return precedes(b, a); });
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
}

}  // namespace deltachow

template <>
struct std::hash<deltachow::Symbol> {
    std::size_t operator()(const deltachow::Symbol& s) const noexcept {
        std::size_t h = static_cast<std::size_t>(s.kind);
        h = h * 1000003u ^ s.block;
        h = h * 1000003u ^ s.index;
        h = h * 1000003u ^ s.order;
        return h;
    }
};
