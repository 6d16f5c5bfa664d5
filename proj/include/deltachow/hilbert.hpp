#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace deltachow {

/// Univariate integer polynomial in t, coefficient k at index k.
using IntSeries = std::vector<mpz_class>;

namespace detail {

using MonomialList = std::vector<std::vector<std::int32_t>>;

inline void trim(IntSeries& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntSeries series_add(IntSeries a, const IntSeries& b, std::size_t shift = 0) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] += b[i];
    trim(a);
    return a;
}

inline void minimalize(MonomialList& gens) {
    std::sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) {
        std::int32_t da = 0;
        std::int32_t db = 0;
        for (auto x : a) da += x;
        for (auto x : b) db += x;
        return da != db ? da < db : a < b;
    });
    MonomialList out;
    for (auto& g : gens) {
        bool redundant = false;
        for (const auto& h : out) {
            bool div = true;
            for (std::size_t i = 0; i < g.size() && div; ++i) div = h[i] <= g[i];
            if (div) {
                redundant = true;
                break;
            }
        }
        if (!redundant) out.push_back(std::move(g));
    }
    gens = std::move(out);
}

/// Numerator N(t) of the Hilbert series N(t)/(1-t)^n of S/(gens).
inline IntSeries hilbert_numerator(MonomialList gens) {
    minimalize(gens);
    if (gens.empty()) return {1};
    const std::size_t n = gens.front().size();

    // Base case: pairwise coprime generators give a product of (1 - t^deg).
    std::vector<int> seen(n, 0);
    bool coprime = true;
    for (const auto& g : gens) {
        for (std::size_t i = 0; i < n; ++i) {
            if (g[i] == 0) continue;
            if (seen[i]++) coprime = false;
        }
    }
    if (coprime) {
        IntSeries out{1};
        for (const auto& g : gens) {
            std::int32_t deg = 0;
            for (auto x : g) deg += x;
            IntSeries shifted(out.size() + static_cast<std::size_t>(deg), 0);
            for (std::size_t i = 0; i < out.size(); ++i) {
                shifted[i] += out[i];
                shifted[i + static_cast<std::size_t>(deg)] -= out[i];
            }
            trim(shifted);
            out = std::move(shifted);
        }
        return out;
    }

    // Pivot on the variable occurring in the most generators:
    // N(M) = N(M + (x)) + t * N(M : x).
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (seen[i] > seen[pivot]) pivot = i;

    MonomialList plus;
    MonomialList colon;
    std::vector<std::int32_t> x(n, 0);
    x[pivot] = 1;
    plus.push_back(x);
    for (const auto& g : gens) {
        if (g[pivot] == 0) plus.push_back(g);
        auto q = g;
        if (q[pivot] > 0) --q[pivot];
        colon.push_back(std::move(q));
    }
    return series_add(hilbert_numerator(std::move(plus)), hilbert_numerator(std::move(colon)), 1);
}

}  // namespace detail

/// Dimension and degree of S/(monomials) over n variables, read off the
/// Hilbert numerator after cancelling (1 - t) factors. Precondition: the
/// monomial ideal is proper.
struct HilbertData {
    std::size_t dimension;
    mpz_class degree;
};

inline HilbertData hilbert_dimension_degree(std::vector<std::vector<std::int32_t>> leading, std::size_t nvars) {
    IntSeries num = detail::hilbert_numerator(std::move(leading));
    std::size_t k = 0;
    for (;;) {
        mpz_class at_one = 0;
        for (const auto& c : num) at_one += c;
        if (at_one != 0 || num.empty()) {
            return HilbertData{nvars - k, at_one};
        }
        // Synthetic division by (1 - t): q_i = sum_{j <= i} n_j.
        IntSeries q(num.size() - 1);
        mpz_class acc = 0;
        for (std::size_t i = 0; i + 1 < num.size(); ++i) {
            acc += num[i];
            q[i] = acc;
        }
        num = std::move(q);
        ++k;
    }
}

}  // namespace deltachow
