#pragma once

#include <deltachow/deltachow.hpp>

#include <random>
#include <vector>

namespace testgen {

using deltachow::Monomial;
using deltachow::Polynomial;
using deltachow::Rational;
using deltachow::Symbol;

class Random {
public:
    explicit Random(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    Rational nonzero_rational(int range = 5, bool fractions = false) {
        int num = 0;
        while (num == 0) num = integer(-range, range);
        int den = fractions ? integer(1, 4) : 1;
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v.at(static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1)));
    }

    /// Random polynomial with up to `terms` terms over the given symbols.
    Polynomial polynomial(const std::vector<Symbol>& symbols, int terms, int max_degree, bool fractions = false) {
        Polynomial p;
        for (int t = 0; t < terms; ++t) {
            std::vector<Monomial::Factor> factors;
            const int deg = integer(0, max_degree);
            for (int k = 0; k < deg; ++k) factors.emplace_back(pick(symbols), 1);
            p.add_term(Monomial::from_factors(factors), nonzero_rational(5, fractions));
        }
        return p;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Jet symbols x_i^{(j)} for i < n, j ≤ order.
inline std::vector<Symbol> jets(std::uint32_t n, std::uint32_t order) {
    std::vector<Symbol> out;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j <= order; ++j) out.push_back(Symbol::jet(i, j));
    return out;
}

}  // namespace testgen
