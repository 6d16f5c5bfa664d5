#include <gtest/gtest.h>

#include <deltachow/deltachow.hpp>

#include "support/printers.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace deltachow;

namespace {

const VariableNames& names() {
    static const VariableNames n({"x", "y"});
    return n;
}

Polynomial P(const std::string& s) { return parse_polynomial(s, names()); }

const VariableNames& names3() {
    static const VariableNames n({"y1", "y2", "y3"});
    return n;
}

std::vector<Symbol> ring(std::uint32_t n, std::uint32_t h) { return JetContext{n, h}.symbols(); }

}  // namespace

TEST(Rational, CanonicalAndExact) {
    Rational q(6, -4);
    q.canonicalize();
    EXPECT_EQ(q.get_num(), -3);
    EXPECT_EQ(q.get_den(), 2);
    Rational third(1, 3);
    EXPECT_EQ(third + third + third, 1);
}

TEST(Polynomial, NormalizedIsContentFreeWithPositiveLead) {
    const Polynomial p = P("-4/3*x^2 + 2/9*y");
    const Polynomial n = p.normalized();
    EXPECT_EQ(n, P("y - 6*x^2"));
    EXPECT_TRUE(associated(p, n));
}

TEST(Polynomial, ArithmeticIdentities) {
    const Polynomial a = P("x'^2 - 4*x");
    const Polynomial b = P("y - 1/2");
    EXPECT_EQ((a + b) * (a - b), a * a - b * b);
    EXPECT_EQ(a.pow(3), a * a * a);
    EXPECT_EQ(a.partial(Symbol::jet(0, 1)), P("2*x'"));
    EXPECT_EQ(a.substitute(Symbol::jet(0), P("y")), P("x'^2 - 4*y"));
}

TEST(Groebner, SubstitutionForcesConstantCoefficient) {
    // lex with y above the hyperplane symbols
    const auto basis = GroebnerBasis(MonomialOrder::lex({Symbol::jet(1), Symbol::u(0, 0), Symbol::u(0, 1)}),
                                     {P("y"), P("u00 + u01*y")})
                           .elements();
    ASSERT_EQ(basis.size(), 2u);
    EXPECT_EQ(basis[0], P("y"));
    EXPECT_EQ(basis[1], P("u00"));
}

TEST(Groebner, InterreducedGeneratorsSurvive) {
    const TruncatedIdeal ideal(ring(1, 2), {P("x'^2 - 4*x"), P("2*x'*(x'' - 2)")});
    const auto basis = gb(ideal, MonomialOrder::degrevlex(ideal.ambient()));
    auto has = [&](const Polynomial& f) {
        return std::any_of(basis.begin(), basis.end(), [&](const Polynomial& g) { return associated(f, g); });
    };
    EXPECT_TRUE(has(P("x'^2 - 4*x")));
    EXPECT_TRUE(has(P("2*x'*x'' - 4*x'")));
}

TEST(Groebner, NormalFormOfGeneratorsIsZero) {
    testgen::Random rnd(11);
    const auto symbols = testgen::jets(2, 1);
    for (int i = 0; i < 40; ++i) {
        std::vector<Polynomial> gens;
        for (int k = 0; k < 3; ++k) gens.push_back(rnd.polynomial(symbols, 3, 2));
        const TruncatedIdeal ideal(ring(2, 1), gens);
        for (const auto& g : gens) EXPECT_TRUE(ideal.basis().reduce(g).is_zero());
    }
}

TEST(Groebner, ResourceLimitReportsCaps) {
    Limits tight;
    tight.degree_cap = 3;
    const TruncatedIdeal ideal(ring(2, 0), {P("x^5 - y^4"), P("x^3*y^2 - 1")});
    try {
        (void)ideal.basis(tight);
        FAIL() << "expected a resource limit";
    } catch (const ResourceLimit& e) {
        EXPECT_NE(std::string(e.what()).find("degree cap 3"), std::string::npos);
    }
}

TEST(Eliminate, DropsPointCoordinate) {
    std::vector<Symbol> amb{Symbol::jet(1), Symbol::u(0, 0), Symbol::u(0, 1)};
    const TruncatedIdeal out = eliminate(TruncatedIdeal(amb, {P("y"), P("u00 + u01*y")}), {Symbol::jet(1)});
    ASSERT_EQ(out.generators().size(), 1u);
    EXPECT_EQ(out.generators()[0], P("u00"));
}

TEST(Eliminate, GeneratorsStayInIdeal) {
    testgen::Random rnd(12);
    const auto symbols = testgen::jets(2, 1);
    for (int i = 0; i < 30; ++i) {
        const TruncatedIdeal ideal(ring(2, 1), {rnd.polynomial(symbols, 3, 2), rnd.polynomial(symbols, 3, 2)});
        const TruncatedIdeal e = eliminate(ideal, {Symbol::jet(0, 1)});
        for (const auto& g : e.generators()) {
            EXPECT_FALSE(g.contains(Symbol::jet(0, 1)));
            EXPECT_TRUE(member(g, ideal));
        }
    }
}

TEST(Eliminate, FirstOrderCubicGivesKnownForm) {
    const VariableNames ny({"y"});
    std::vector<Symbol> amb = ring(1, 1);
    for (auto s : {Symbol::u(0, 0), Symbol::u(0, 1), Symbol::u(0, 0, 1), Symbol::u(0, 1, 1)}) amb.push_back(s);
    const TruncatedIdeal ideal(amb, {parse_polynomial("y^2*y' + 1", ny), parse_polynomial("u00 + u01*y", ny),
                                     parse_polynomial("u00' + u01'*y + u01*y'", ny)});
    const TruncatedIdeal out = eliminate(ideal, ring(1, 1));
    ASSERT_EQ(out.generators().size(), 1u);
    EXPECT_TRUE(associated(out.generators()[0], parse_polynomial("u00^2*u01*u00' - u00^3*u01' - u01^4", ny)));
}

TEST(Eliminate, ConstantSolutionMatchesSubstitutionOracle) {
    const VariableNames ny({"y"});
    std::vector<Symbol> amb = ring(1, 1);
    for (auto s : {Symbol::u(0, 0), Symbol::u(0, 1), Symbol::u(0, 0, 1), Symbol::u(0, 1, 1)}) amb.push_back(s);
    const TruncatedIdeal ideal(amb, {parse_polynomial("y'", ny), parse_polynomial("u00 + u01*y", ny),
                                     parse_polynomial("u00' + u01'*y + u01*y'", ny)});
    const TruncatedIdeal out = eliminate(ideal, ring(1, 1));
    ASSERT_EQ(out.generators().size(), 1u);
    EXPECT_TRUE(associated(out.generators()[0], oracle::first_order_dchow(Polynomial(1), Polynomial())));
}

TEST(Saturate, RemovesSpuriousComponent) {
    const TruncatedIdeal ideal(ring(1, 2), {P("x'^2 - 4*x"), P("2*x'*(x'' - 2)")});
    const TruncatedIdeal sat = saturate(ideal, P("x'"));
    const TruncatedIdeal expected(ring(1, 2), {P("x'^2 - 4*x"), P("x'' - 2")});
    EXPECT_TRUE(same_ideal(sat, expected));
    // certificate: x' times every new generator lands back in the ideal
    for (const auto& g : sat.generators()) EXPECT_TRUE(member(P("x'") * g, ideal));
    EXPECT_TRUE(contains(sat, ideal));
}

TEST(Saturate, NilpotentBecomesUnit) {
    const TruncatedIdeal sat = saturate(TruncatedIdeal(ring(1, 0), {P("x^2")}), P("x"));
    EXPECT_TRUE(sat.is_unit());
}

TEST(Saturate, ByConstantIsIdentity) {
    const TruncatedIdeal ideal(ring(1, 1), {P("x'^2 - 4*x")});
    EXPECT_TRUE(same_ideal(saturate(ideal, Polynomial(1)), ideal));
    EXPECT_THROW(saturate(ideal, Polynomial()), DomainError);
}

TEST(Saturate, ColonProperty) {
    testgen::Random rnd(13);
    const auto symbols = testgen::jets(2, 0);
    for (int i = 0; i < 25; ++i) {
        const Polynomial f = rnd.polynomial(symbols, 2, 1) + Polynomial::symbol(Symbol::jet(0));
        const Polynomial g = rnd.polynomial(symbols, 3, 3);
        const Polynomial other = rnd.polynomial(symbols, 2, 2);
        const TruncatedIdeal ideal(ring(2, 0), {f * g, other * f * f});
        const TruncatedIdeal sat = saturate(ideal, f);
        EXPECT_TRUE(contains(sat, ideal));
        EXPECT_TRUE(member(g, sat));
    }
}

TEST(Member, SecondOrderIdentity) {
    const VariableNames ny({"y"});
    const Polynomial f = parse_polynomial("y''^2 - y", ny);
    std::vector<Polynomial> gens;
    for (std::uint32_t j = 0; j <= 3; ++j) gens.push_back(derive(f, j));
    const TruncatedIdeal ideal(ring(1, 5), gens);
    EXPECT_TRUE(member(parse_polynomial("y''*(4*y'''*D(y,5) - 12*D(y,4)^2 + 8*D(y,4) - 1)", ny), ideal));
    EXPECT_TRUE(member(Polynomial(), ideal));
}

TEST(Member, NotBeforeSaturation) {
    const TruncatedIdeal ideal(ring(1, 2), {P("x'^2 - 4*x"), P("2*x'*(x'' - 2)")});
    EXPECT_FALSE(member(P("x'' - 2"), ideal));
}

TEST(DimDegree, NineVariableSystem) {
    const TruncatedIdeal ideal(ring(3, 2), {parse_polynomial("y1''^2 - 4*y1'", names3()),
                                            parse_polynomial("y1'*y2'' + y2^2 - 1", names3()),
                                            parse_polynomial("y1*y3'' + y2^2 - 1", names3())});
    EXPECT_EQ(dim_and_degree(ideal).dimension, 6u);
}

TEST(DimDegree, CubicHypersurface) {
    const DimDegree dd = dim_and_degree(TruncatedIdeal(ring(1, 1), {P("x^2*x' + 1")}));
    EXPECT_EQ(dd.dimension, 1u);
    EXPECT_EQ(dd.degree, 3);
}

TEST(DimDegree, LinearIdealByCounting) {
    const DimDegree dd = dim_and_degree(TruncatedIdeal(ring(2, 2), {P("x'"), P("x''"), P("y''")}));
    EXPECT_EQ(dd.dimension, 6u - 3u);
    EXPECT_EQ(dd.degree, 1);
}

TEST(DimDegree, UnitIdealIsEmpty) {
    EXPECT_THROW(dim_and_degree(TruncatedIdeal(ring(1, 0), {Polynomial(3)})), EmptyVariety);
}

TEST(DimDegree, HypersurfaceProperty) {
    testgen::Random rnd(14);
    const auto symbols = testgen::jets(2, 1);
    for (int i = 0; i < 60; ++i) {
        const Polynomial f = rnd.polynomial(symbols, 4, 3);
        if (f.is_constant()) continue;
        const DimDegree dd = dim_and_degree(TruncatedIdeal(ring(2, 1), {f}));
        EXPECT_EQ(dd.dimension, 3u);
        EXPECT_EQ(dd.degree, f.total_degree());
    }
}

TEST(Hilbert, NumeratorMatchesMonomialCount) {
    // Compare coefficients of N(t)/(1-t)^3 with brute-force standard monomial counts.
    testgen::Random rnd(15);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::vector<std::int32_t>> gens;
        const int k = rnd.integer(1, 4);
        for (int g = 0; g < k; ++g)
            gens.push_back({rnd.integer(0, 3), rnd.integer(0, 3), rnd.integer(0, 3)});
        bool unit = false;
        for (const auto& g : gens) unit = unit || (g[0] == 0 && g[1] == 0 && g[2] == 0);
        if (unit) continue;
        const IntSeries num = detail::hilbert_numerator(gens);
        for (int s = 0; s <= 9; ++s) {
            mpz_class series = 0;
            for (std::size_t i = 0; i < num.size() && static_cast<int>(i) <= s; ++i)
                series += num[i] * detail::binomial(static_cast<std::uint32_t>(s - static_cast<int>(i) + 2), 2);
            int count = 0;
            for (int a = 0; a <= s; ++a)
                for (int b = 0; a + b <= s; ++b) {
                    const int c = s - a - b;
                    bool standard = true;
                    for (const auto& g : gens) standard = standard && !(g[0] <= a && g[1] <= b && g[2] <= c);
                    count += standard ? 1 : 0;
                }
            EXPECT_EQ(series, count) << "degree " << s;
        }
    }
}

TEST(Radical, MembershipAndComparison) {
    const TruncatedIdeal ideal(ring(1, 0), {P("x^3")});
    EXPECT_TRUE(radical_member(P("x"), ideal));
    EXPECT_FALSE(member(P("x"), ideal));
    EXPECT_TRUE(same_radical(ideal, TruncatedIdeal(ring(1, 0), {P("x")})));
    EXPECT_FALSE(same_radical(ideal, TruncatedIdeal(ring(1, 0), {P("x - 1")})));
}

TEST(Intersect, UnionOfPoints) {
    const TruncatedIdeal a(ring(2, 0), {P("x"), P("y")});
    const TruncatedIdeal b(ring(2, 0), {P("x - 1"), P("y")});
    const TruncatedIdeal both = intersect(a, b);
    EXPECT_TRUE(member(P("x*(x - 1)"), both));
    EXPECT_TRUE(member(P("y"), both));
    EXPECT_FALSE(member(P("x"), both));
    EXPECT_EQ(dim_and_degree(both).degree, 2);
}
