#pragma once

// Independent reference computations used to check library results.
// Nothing here calls the Gröbner kernel.

#include <deltachow/deltachow.hpp>

#include <vector>

namespace oracle {

using deltachow::Monomial;
using deltachow::Polynomial;
using deltachow::Rational;
using deltachow::Symbol;

/// den^k * p(s := num/den) with k = deg_s p.
inline Polynomial substitute_fraction(const Polynomial& p, const Symbol& s, const Polynomial& num,
                                      const Polynomial& den) {
    const std::uint32_t k = p.degree_in(s);
    Polynomial out;
    for (std::uint32_t j = 0; j <= k; ++j) {
        const Polynomial c = p.coefficient(s, j);
        if (c.is_zero()) continue;
        out += c * num.pow(j) * den.pow(k - j);
    }
    return out;
}

/// Determinant by cofactor expansion along the first row.
inline Polynomial determinant(const std::vector<std::vector<Polynomial>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    Polynomial det;
    for (std::size_t col = 0; col < n; ++col) {
        if (m[0][col].is_zero()) continue;
        std::vector<std::vector<Polynomial>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Polynomial> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != col) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        const Polynomial term = m[0][col] * determinant(minor);
        if (col % 2 == 0)
            det += term;
        else
            det -= term;
    }
    return det;
}

/// Sylvester resultant of f and g with respect to t.
inline Polynomial resultant(const Polynomial& f, const Polynomial& g, const Symbol& t) {
    const std::uint32_t a = f.degree_in(t);
    const std::uint32_t b = g.degree_in(t);
    const std::size_t n = a + b;
    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n));
    for (std::uint32_t r = 0; r < b; ++r)
        for (std::uint32_t j = 0; j <= a; ++j) m[r][r + j] = f.coefficient(t, a - j);
    for (std::uint32_t r = 0; r < a; ++r)
        for (std::uint32_t j = 0; j <= b; ++j) m[b + r][r + j] = g.coefficient(t, b - j);
    return determinant(m);
}

/// Chow form of the point a ∈ A^n: v00 + Σ a_j v0j.
inline Polynomial point_chow(const std::vector<Rational>& a) {
    Polynomial f = Polynomial::symbol(Symbol::v(0, 0));
    for (std::size_t j = 0; j < a.size(); ++j)
        f += Polynomial::symbol(Symbol::v(0, static_cast<std::uint32_t>(j + 1))) * a[j];
    return f;
}

/// Chow form of a curve given by y_j = p_j(t)/q(t) (injective for generic t):
/// Res_t(q L_0, q L_1).
inline Polynomial curve_chow(const std::vector<Polynomial>& p, const Polynomial& q, const Symbol& t) {
    std::vector<Polynomial> l(2);
    for (std::uint32_t i = 0; i < 2; ++i) {
        l[i] = Polynomial::symbol(Symbol::v(i, 0)) * q;
        for (std::size_t j = 0; j < p.size(); ++j)
            l[i] += Polynomial::symbol(Symbol::v(i, static_cast<std::uint32_t>(j + 1))) * p[j];
    }
    return resultant(l[0], l[1], t);
}

/// Differential Chow form of sat(α(y) y' + β(y)) in one variable (d = 0, h = 1),
/// by substituting y' = -β/α into L_0' and then y = -u00/u01.
inline Polynomial first_order_dchow(const Polynomial& alpha, const Polynomial& beta) {
    const Symbol y = Symbol::jet(0, 0);
    const Symbol y1 = Symbol::jet(0, 1);
    const Polynomial u00 = Polynomial::symbol(Symbol::u(0, 0));
    const Polynomial u01 = Polynomial::symbol(Symbol::u(0, 1));
    const Polynomial dl = Polynomial::symbol(Symbol::u(0, 0, 1)) + Polynomial::symbol(Symbol::u(0, 1, 1)) * Polynomial::symbol(y) +
                          u01 * Polynomial::symbol(y1);
    const Polynomial cleared = substitute_fraction(dl, y1, -beta, alpha);
    return substitute_fraction(cleared, y, -u00, u01);
}

/// Per-block degree profile of a polynomial in u/v symbols; empty if inhomogeneous.
inline std::vector<std::uint32_t> block_profile(const Polynomial& f, std::uint32_t blocks) {
    std::vector<std::uint32_t> first;
    for (const auto& [m, c] : f.terms()) {
        std::vector<std::uint32_t> deg(blocks, 0);
        for (const auto& [s, e] : m.factors()) deg.at(s.block) += e;
        if (first.empty())
            first = deg;
        else if (first != deg)
            return {};
    }
    return first;
}

}  // namespace oracle
