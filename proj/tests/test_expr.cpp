#include "fnsurf/parse.hpp"
#include "fnsurf/poly.hpp"

#include <gtest/gtest.h>

using namespace fnsurf;

namespace {

Poly P(const char* s) { return parse(s); }

}  // namespace

TEST(Rational, LowestTermsAndSign) {
    const Rational r(6, -4);
    EXPECT_EQ(r.numerator(), -3);
    EXPECT_EQ(r.denominator(), 2);
    EXPECT_EQ(Rational::from_string("-10/4"), Rational(-5, 2));
    EXPECT_EQ(Rational::from_string("7"), Rational(7));
    EXPECT_THROW((void)Rational::from_string("0.25"), std::invalid_argument);
    EXPECT_THROW((void)Rational::from_string("1/0"), std::invalid_argument);
    EXPECT_THROW((void)(Rational(1) / Rational(0)), std::domain_error);
}

TEST(Rational, ExactArithmetic) {
    EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
    EXPECT_EQ(Rational(2, 27).pow(3), Rational(8, 19683));
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    // 2^100 / 3^50 stays exact
    Rational big = Rational(2).pow(100) / Rational(3).pow(50);
    EXPECT_EQ(big * Rational(3).pow(50), Rational(2).pow(100));
}

TEST(Parse, FnCubicExpands) {
    EXPECT_EQ(P("x*(x-1)*(x-a)+y+c*z"), P("x^3 - (1+a)*x^2 + a*x + y + c*z"));
}

TEST(Parse, ZeroIsEmpty) {
    EXPECT_TRUE(P("0").is_zero());
    EXPECT_EQ(P("0").size(), 0U);
}

TEST(Parse, DirectConstruction) {
    const Poly p = P("(1/2)*x^4 - z^2 + 2*x*y");
    EXPECT_EQ(p.size(), 3U);
    EXPECT_EQ(p.coeff(Monomial::state(4, 0, 0)), Rational(1, 2));
    EXPECT_EQ(p.coeff(Monomial::state(0, 0, 2)), Rational(-1));
    EXPECT_EQ(p.coeff(Monomial::state(1, 1, 0)), Rational(2));
}

TEST(Parse, Errors) {
    try {
        (void)parse("x + q");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4U);
    }
    EXPECT_THROW((void)parse("x^-1"), ParseError);
    EXPECT_THROW((void)parse("x^(1/2)"), ParseError);
    EXPECT_THROW((void)parse("0.5*x"), ParseError);
    EXPECT_THROW((void)parse("(x + y"), ParseError);
    EXPECT_THROW((void)parse("x +"), ParseError);
    EXPECT_THROW((void)parse("x/0"), ParseError);
    EXPECT_THROW((void)parse("x y"), ParseError);
}

TEST(Print, Canonical) {
    EXPECT_EQ(print(Poly{}), "0");
    EXPECT_EQ(print(P("y+x")), "x + y");
    EXPECT_EQ(print(P("-z^2 + (1/2)*x^4")), "(1/2)*x^4 - z^2");
    const Poly p = P("2*x*y + (2/3)*c*x*z");
    EXPECT_EQ(parse(print(p)), p);
}

TEST(Arith, Examples) {
    EXPECT_EQ(substitute(P("x^2+y"), {{Var::x, P("z")}}), P("z^2+y"));
    EXPECT_EQ(P("x+y") * P("x-y"), P("x^2-y^2"));
    EXPECT_EQ(P("x+1").pow(0), Poly(1));
    EXPECT_EQ(P("x+1").pow(3), P("x^3 + 3*x^2 + 3*x + 1"));
    EXPECT_EQ(-P("x - 2"), P("2 - x"));
}

TEST(Arith, SubstituteFraction) {
    // d -> -c/b makes b d + c vanish after clearing the b denominator.
    EXPECT_TRUE(substitute_fraction(P("b*d + c"), Var::d, P("-c"), P("b")).is_zero());
    // b^2 (x + d^2) at d = c/b gives b^2 x + c^2.
    EXPECT_EQ(substitute_fraction(P("x + d^2"), Var::d, P("c"), P("b")), P("b^2*x + c^2"));
}

TEST(Partial, Examples) {
    EXPECT_EQ(partial(P("x^3"), Var::x), P("3*x^2"));
    EXPECT_EQ(partial(P("(1/4)*x^4 - (1/2)*z^2"), Var::z), P("-z"));
    EXPECT_EQ(partial(P("y - (1/2)*m*x^2"), Var::x), P("-m*x"));
    EXPECT_EQ(partial(P("a*b*x"), Var::a), P("b*x"));
}

TEST(Weight, ComponentsExample) {
    const auto comps = weight_components(P("(1/2)*x^4 - z^2 + 2*x*y + (2/3)*c*x*z + ((1/9)*c^2 - 1)*x^2"));
    ASSERT_EQ(comps.size(), 3U);
    EXPECT_EQ(comps[0].first, 4U);
    EXPECT_EQ(comps[0].second, P("(1/2)*x^4 - z^2"));
    EXPECT_EQ(comps[1].first, 3U);
    EXPECT_EQ(comps[1].second, P("2*x*y + (2/3)*c*x*z"));
    EXPECT_EQ(comps[2].first, 2U);
    EXPECT_EQ(comps[2].second, P("((1/9)*c^2 - 1)*x^2"));
}

TEST(Weight, HomogeneousHasOneComponent) {
    const auto comps = weight_components(P("y - (1/2)*m*x^2"));
    ASSERT_EQ(comps.size(), 1U);
    EXPECT_EQ(comps[0].first, 2U);
    EXPECT_TRUE(weight_components(Poly{}).empty());
}

TEST(Weight, Degrees) {
    EXPECT_EQ(state_degree(P("c^2*x^2 + b*x*y")), 2);
    EXPECT_EQ(state_degree(Poly{}), -1);
    EXPECT_EQ(weight_degree(P("(1/4)*x^4 - (1/2)*z^2")), std::optional<std::uint64_t>(4));
    EXPECT_FALSE(weight_degree(P("x + y")).has_value());
    EXPECT_EQ(weight_degree(P("c")), std::optional<std::uint64_t>(0));
    WeightSpec flat{1, 1, 1};
    EXPECT_EQ(weight_degree(P("x + y"), flat), std::optional<std::uint64_t>(1));
}

TEST(Division, ExactAndFailing) {
    const Poly f = P("x^2 + a*y");
    const Poly g = P("z - b");
    EXPECT_EQ(divide_exact(f * g, f), g);
    EXPECT_FALSE(divide_exact(f * g + P("1"), f).has_value());
    EXPECT_EQ(divide_exact(Poly{}, f), Poly{});
}

TEST(Division, PseudoRemainder) {
    // a^2 x + a y reduced by a^2 - 2 (main variable a) leaves 2x + a y.
    EXPECT_EQ(pseudo_remainder(P("a^2*x + a*y"), P("a^2 - 2"), Var::a), P("2*x + a*y"));
    // leading coefficient c is carried: prem(a^2, c*a - 1, a) = 1.
    EXPECT_EQ(pseudo_remainder(P("a^2"), P("c*a - 1"), Var::a), Poly(1));
}
