#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "deltachow/errors.hpp"
#include "deltachow/polynomial.hpp"

namespace deltachow {

/// Caps on Gröbner computations. Exceeding one raises ResourceLimit.
struct Limits {
    std::uint32_t degree_cap = 64;    ///< max total degree of a basis element
    std::size_t term_cap = 50000;     ///< max terms of any intermediate polynomial
    std::size_t pair_cap = 2000000;   ///< max critical pairs processed
    unsigned jobs = 1;                ///< worker threads for independent sub-computations

    std::string describe() const {
        return "degree cap " + std::to_string(degree_cap) + ", term cap " + std::to_string(term_cap) +
               ", pair cap " + std::to_string(pair_cap);
    }
};

/// A monomial order over an explicit variable list (highest variable first).
class MonomialOrder {
public:
    enum class Kind { degrevlex, lex, elimination };

    static MonomialOrder degrevlex(std::vector<Symbol> vars) { return {Kind::degrevlex, std::move(vars), 0}; }
    static MonomialOrder lex(std::vector<Symbol> vars) { return {Kind::lex, std::move(vars), 0}; }

    /// Block order: degrevlex on `front`, ties broken by degrevlex on `rest`.
    /// Every `front` variable is larger than every monomial free of them.
    static MonomialOrder elimination(std::vector<Symbol> front, std::vector<Symbol> rest) {
        const std::size_t k = front.size();
        front.insert(front.end(), rest.begin(), rest.end());
        return {Kind::elimination, std::move(front), k};
    }

    Kind kind() const noexcept { return kind_; }
    const std::vector<Symbol>& variables() const noexcept { return vars_; }
    std::size_t block_size() const noexcept { return block_; }

    /// Three-way comparison of dense exponent vectors.
    int compare(const std::int32_t* a, const std::int32_t* b, std::size_t n) const {
        switch (kind_) {
            case Kind::lex:
                for (std::size_t i = 0; i < n; ++i)
                    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
                return 0;
            case Kind::degrevlex:
                return grevlex(a, b, 0, n);
            case Kind::elimination:
                if (int c = grevlex(a, b, 0, block_)) return c;
                return grevlex(a, b, block_, n);
        }
        return 0;
    }

private:
    MonomialOrder(Kind k, std::vector<Symbol> v, std::size_t block) : kind_(k), vars_(std::move(v)), block_(block) {}

    static int grevlex(const std::int32_t* a, const std::int32_t* b, std::size_t lo, std::size_t hi) {
        std::int64_t da = 0;
        std::int64_t db = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            da += a[i];
            db += b[i];
        }
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t i = hi; i-- > lo;)
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        return 0;
    }

    Kind kind_;
    std::vector<Symbol> vars_;
    std::size_t block_;
};

namespace detail {

using Exponents = std::vector<std::int32_t>;

struct KTerm {
    Exponents exp;
    Rational coef;
};

/// Dense-exponent polynomial, terms in decreasing order.
using KPoly = std::vector<KTerm>;

inline std::int32_t degree_of(const Exponents& e) {
    std::int32_t d = 0;
    for (auto x : e) d += x;
    return d;
}

inline bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Exponents lcm_of(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return out;
}

inline bool coprime(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

/// Arithmetic and Buchberger's algorithm over a fixed variable list.
class Kernel {
public:
    Kernel(const MonomialOrder& order, const Limits& limits) : order_(order), limits_(limits) {
        const auto& vars = order_.variables();
        for (std::size_t i = 0; i < vars.size(); ++i) index_.emplace(vars[i], i);
    }

    std::size_t nvars() const { return order_.variables().size(); }

    int cmp(const Exponents& a, const Exponents& b) const { return order_.compare(a.data(), b.data(), a.size()); }

    KPoly to_kernel(const Polynomial& p) const {
        KPoly out;
        out.reserve(p.size());
        for (const auto& [m, c] : p.terms()) {
            Exponents e(nvars(), 0);
            for (const auto& [s, k] : m.factors()) {
                auto it = index_.find(s);
                if (it == index_.end())
                    throw DomainError("polynomial contains a symbol outside the ambient ring");
                e[it->second] = static_cast<std::int32_t>(k);
            }
            out.push_back({std::move(e), c});
        }
        std::sort(out.begin(), out.end(), [this](const KTerm& a, const KTerm& b) { return cmp(a.exp, b.exp) > 0; });
        return out;
    }

    Polynomial from_kernel(const KPoly& p) const {
        Polynomial out;
        const auto& vars = order_.variables();
        for (const auto& t : p) {
            std::vector<Monomial::Factor> fs;
            for (std::size_t i = 0; i < t.exp.size(); ++i)
                if (t.exp[i] > 0) fs.emplace_back(vars[i], static_cast<std::uint32_t>(t.exp[i]));
            out.add_term(Monomial::from_factors(std::move(fs)), t.coef);
        }
        return out;
    }

    /// p[from:] - c * x^shift * q, skipping q's first `qfrom` terms.
    KPoly sub_scaled(const KPoly& p, std::size_t from, const Rational& c, const Exponents& shift, const KPoly& q,
                     std::size_t qfrom) const {
        KPoly out;
        out.reserve(p.size() - from + q.size() - qfrom);
        std::size_t i = from;
        std::size_t j = qfrom;
        Exponents shifted(nvars());
        auto shift_into = [&](const Exponents& e) {
            for (std::size_t k = 0; k < e.size(); ++k) shifted[k] = e[k] + shift[k];
        };
        if (j < q.size()) shift_into(q[j].exp);
        while (i < p.size() || j < q.size()) {
            int c3 = 0;
            if (i == p.size())
                c3 = -1;
            else if (j == q.size())
                c3 = 1;
            else
                c3 = cmp(p[i].exp, shifted);
            if (c3 > 0) {
                out.push_back(p[i++]);
            } else if (c3 < 0) {
                out.push_back({shifted, Rational(-c * q[j].coef)});
                if (++j < q.size()) shift_into(q[j].exp);
            } else {
                Rational v = p[i].coef - c * q[j].coef;
                if (v != 0) out.push_back({p[i].exp, std::move(v)});
                ++i;
                if (++j < q.size()) shift_into(q[j].exp);
            }
        }
        if (out.size() > limits_.term_cap)
            throw ResourceLimit("resource limit: intermediate polynomial exceeds the term cap (" +
                                limits_.describe() + ")");
        return out;
    }

    /// Full normal form of f modulo the polynomials in `basis`.
    KPoly normal_form(KPoly h, const std::vector<const KPoly*>& basis) const {
        KPoly r;
        std::size_t start = 0;
        Exponents shift(nvars());
        while (start < h.size()) {
            const KTerm& lt = h[start];
            const KPoly* divisor = nullptr;
            for (const KPoly* g : basis) {
                if (divides(g->front().exp, lt.exp)) {
                    divisor = g;
                    break;
                }
            }
            if (divisor == nullptr) {
                r.push_back(lt);
                ++start;
                continue;
            }
            for (std::size_t k = 0; k < shift.size(); ++k) shift[k] = lt.exp[k] - divisor->front().exp[k];
            const Rational c = lt.coef / divisor->front().coef;
            h = sub_scaled(h, start + 1, c, shift, *divisor, 1);
            start = 0;
            if (r.size() > limits_.term_cap)
                throw ResourceLimit("resource limit: normal form exceeds the term cap (" + limits_.describe() + ")");
        }
        return r;
    }

    static void make_monic(KPoly& p) {
        if (p.empty()) return;
        const Rational inv = 1 / p.front().coef;
        for (auto& t : p) t.coef *= inv;
    }

    KPoly s_polynomial(const KPoly& f, const KPoly& g) const {
        const Exponents l = lcm_of(f.front().exp, g.front().exp);
        Exponents sf(nvars());
        Exponents sg(nvars());
        for (std::size_t k = 0; k < l.size(); ++k) {
            sf[k] = l[k] - f.front().exp[k];
            sg[k] = l[k] - g.front().exp[k];
        }
        // Both inputs are monic: x^sf f - x^sg g, leading terms cancel.
        KPoly fs;
        fs.reserve(f.size() - 1);
        for (std::size_t i = 1; i < f.size(); ++i) {
            Exponents e(nvars());
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = f[i].exp[k] + sf[k];
            fs.push_back({std::move(e), f[i].coef});
        }
        return sub_scaled(fs, 0, Rational(1) / g.front().coef * f.front().coef, sg, g, 1);
    }

    /// Reduced Gröbner basis, monic, sorted by decreasing leading monomial.
    std::vector<KPoly> buchberger(std::vector<KPoly> input) const {
        struct Pair {
            std::size_t i;
            std::size_t j;
            Exponents lcm;
        };
        std::vector<KPoly> polys;
        std::vector<bool> active;
        std::vector<Pair> pairs;
        std::size_t processed = 0;

        auto active_list = [&]() {
            std::vector<const KPoly*> out;
            for (std::size_t k = 0; k < polys.size(); ++k)
                if (active[k]) out.push_back(&polys[k]);
            return out;
        };

        // Gebauer–Möller installation of a new element (product and chain criteria).
        auto update = [&](KPoly h) {
            make_monic(h);
            const std::size_t hi = polys.size();
            const Exponents& lh = h.front().exp;
            if (degree_of(lh) > static_cast<std::int32_t>(limits_.degree_cap) ||
                [&] {
                    for (const auto& t : h)
                        if (degree_of(t.exp) > static_cast<std::int32_t>(limits_.degree_cap)) return true;
                    return false;
                }())
                throw ResourceLimit("resource limit: basis element exceeds the degree cap (" + limits_.describe() +
                                    ")");

            std::vector<Pair> fresh;
            for (std::size_t k = 0; k < polys.size(); ++k)
                if (active[k]) fresh.push_back({k, hi, lcm_of(polys[k].front().exp, lh)});

            std::vector<Pair> kept;
            for (std::size_t a = 0; a < fresh.size(); ++a) {
                const Pair& p = fresh[a];
                bool keep = coprime(polys[p.i].front().exp, lh);
                if (!keep) {
                    keep = true;
                    for (std::size_t b = a + 1; b < fresh.size() && keep; ++b)
                        if (divides(fresh[b].lcm, p.lcm)) keep = false;
                    for (std::size_t b = 0; b < kept.size() && keep; ++b)
                        if (divides(kept[b].lcm, p.lcm)) keep = false;
                }
                if (keep) kept.push_back(p);
            }
            std::vector<Pair> next;
            for (auto& p : pairs) {
                const Exponents li = lcm_of(polys[p.i].front().exp, lh);
                const Exponents lj = lcm_of(polys[p.j].front().exp, lh);
                if (divides(lh, p.lcm) && li != p.lcm && lj != p.lcm) continue;
                next.push_back(std::move(p));
            }
            for (auto& p : kept)
                if (!coprime(polys[p.i].front().exp, lh)) next.push_back(std::move(p));
            pairs = std::move(next);
            for (std::size_t k = 0; k < polys.size(); ++k)
                if (active[k] && divides(lh, polys[k].front().exp)) active[k] = false;
            polys.push_back(std::move(h));
            active.push_back(true);
        };

        std::sort(input.begin(), input.end(), [this](const KPoly& a, const KPoly& b) {
            if (a.empty() || b.empty()) return !a.empty() && b.empty();
            return cmp(a.front().exp, b.front().exp) < 0;
        });
        for (auto& f : input) {
            if (f.empty()) continue;
            KPoly h = normal_form(std::move(f), active_list());
            if (h.empty()) continue;
            if (degree_of(h.front().exp) == 0) return {KPoly{KTerm{Exponents(nvars(), 0), Rational(1)}}};
            update(std::move(h));
        }

        while (!pairs.empty()) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < pairs.size(); ++k)
                if (cmp(pairs[k].lcm, pairs[best].lcm) < 0) best = k;
            Pair p = std::move(pairs[best]);
            pairs[best] = std::move(pairs.back());
            pairs.pop_back();
            if (++processed > limits_.pair_cap)
                throw ResourceLimit("resource limit: critical pair count exceeds the pair cap (" +
                                    limits_.describe() + ")");
            KPoly s = s_polynomial(polys[p.i], polys[p.j]);
            KPoly h = normal_form(std::move(s), active_list());
            if (h.empty()) continue;
            if (degree_of(h.front().exp) == 0) return {KPoly{KTerm{Exponents(nvars(), 0), Rational(1)}}};
            update(std::move(h));
        }

        std::vector<KPoly> basis;
        for (std::size_t k = 0; k < polys.size(); ++k)
            if (active[k]) basis.push_back(polys[k]);
        // Tail reduction against the other elements.
        for (std::size_t k = 0; k < basis.size(); ++k) {
            std::vector<const KPoly*> others;
            for (std::size_t l = 0; l < basis.size(); ++l)
                if (l != k) others.push_back(&basis[l]);
            KPoly head{basis[k].front()};
            KPoly tail(basis[k].begin() + 1, basis[k].end());
            KPoly reduced = normal_form(std::move(tail), others);
            head.insert(head.end(), reduced.begin(), reduced.end());
            basis[k] = std::move(head);
            make_monic(basis[k]);
        }
        std::sort(basis.begin(), basis.end(),
                  [this](const KPoly& a, const KPoly& b) { return cmp(a.front().exp, b.front().exp) > 0; });
        return basis;
    }

private:
    const MonomialOrder& order_;
    Limits limits_;
    std::unordered_map<Symbol, std::size_t> index_;
};

}  // namespace detail

/// Reduced Gröbner basis of an ideal for one monomial order.
class GroebnerBasis {
public:
    GroebnerBasis(MonomialOrder order, const std::vector<Polynomial>& generators, const Limits& limits = {})
        : order_(std::move(order)), limits_(limits) {
        detail::Kernel kernel(order_, limits_);
        std::vector<detail::KPoly> input;
        input.reserve(generators.size());
        for (const auto& g : generators)
            if (!g.is_zero()) input.push_back(kernel.to_kernel(g));
        kernel_basis_ = kernel.buchberger(std::move(input));
        for (const auto& g : kernel_basis_) elements_.push_back(kernel.from_kernel(g));
    }

    const MonomialOrder& order() const noexcept { return order_; }

    /// Monic reduced basis elements, decreasing leading monomial.
    const std::vector<Polynomial>& elements() const noexcept { return elements_; }

    bool is_unit() const { return elements_.size() == 1 && elements_.front().is_constant(); }

    /// Normal form of f; zero exactly when f lies in the ideal.
    Polynomial reduce(const Polynomial& f) const {
        detail::Kernel kernel(order_, limits_);
        std::vector<const detail::KPoly*> basis;
        for (const auto& g : kernel_basis_) basis.push_back(&g);
        return kernel.from_kernel(kernel.normal_form(kernel.to_kernel(f), basis));
    }

    /// Leading exponent vectors in the order's variable sequence.
    std::vector<std::vector<std::int32_t>> leading_exponents() const {
        std::vector<std::vector<std::int32_t>> out;
        for (const auto& g : kernel_basis_) out.push_back(g.front().exp);
        return out;
    }

private:
    MonomialOrder order_;
    Limits limits_;
    std::vector<detail::KPoly> kernel_basis_;
    std::vector<Polynomial> elements_;
};

}  // namespace deltachow
