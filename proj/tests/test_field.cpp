#include "fnsurf/field.hpp"
#include "fnsurf/parse.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fnsurf;

namespace {

Poly P(const char* s) { return parse(s); }

}  // namespace

TEST(Field, FnIsAssistantAtMZero) {
    EXPECT_EQ(substitute(assistant_system(), {{Var::m, Poly{}}}), fn_system());
}

TEST(Field, AssistantMatchesHandWrittenRhs) {
    std::mt19937_64 rng(7);
    const VectorField v = assistant_system();
    for (int i = 0; i < 50; ++i) {
        oracle::Point pt;
        for (auto& r : pt) r = oracle::random_rational(rng);
        const auto rhs = oracle::assistant_rhs(pt);
        EXPECT_EQ(oracle::eval(v.P, pt), rhs[0]);
        EXPECT_EQ(oracle::eval(v.Q, pt), rhs[1]);
        EXPECT_EQ(oracle::eval(v.R, pt), rhs[2]);
    }
}

TEST(Field, ScaledSystemIsConjugate) {
    // Component i of the scaled field at (x, y, z) equals
    // alpha^(s_i + 1) times the assistant component at (x/alpha, y/alpha^2, z/alpha^2).
    std::mt19937_64 rng(11);
    const VectorField s = scaled_system();
    const unsigned weight[3] = {1, 2, 2};
    for (int i = 0; i < 50; ++i) {
        oracle::Point pt;
        for (auto& r : pt) r = oracle::random_rational(rng);
        Rational alpha = oracle::random_rational(rng);
        if (alpha.is_zero()) alpha = Rational(3, 2);
        pt[static_cast<std::size_t>(Var::alpha)] = alpha;
        oracle::Point orig = pt;
        orig[0] = pt[0] / alpha;
        orig[1] = pt[1] / alpha.pow(2);
        orig[2] = pt[2] / alpha.pow(2);
        const auto rhs = oracle::assistant_rhs(orig);
        const Poly* comps[3] = {&s.P, &s.Q, &s.R};
        for (int c = 0; c < 3; ++c) EXPECT_EQ(oracle::eval(*comps[c], pt), alpha.pow(weight[c] + 1) * rhs[c]);
    }
}

TEST(Field, ScaledSystemAtAlphaZeroIsPrincipal) {
    EXPECT_EQ(substitute(scaled_system(), {{Var::alpha, Poly{}}}), principal_field());
    EXPECT_EQ(substitute(scaled_system(), {{Var::alpha, Poly(1)}}), assistant_system());
}

TEST(Field, LieDerivativeExamples) {
    EXPECT_EQ(lie_derivative(fn_system(), P("x")), P("z"));
    EXPECT_EQ(lie_derivative(fn_system(), P("y")), P("b*x - b*d*y"));
    EXPECT_EQ(lie_derivative(fn_system(), Poly(5)), Poly{});
}

TEST(Field, OperatorL) {
    EXPECT_EQ(op_L(P("x")), P("z"));
    EXPECT_EQ(op_L(P("y")), P("m*x*z"));
    EXPECT_EQ(op_L(P("z")), P("x^3"));
    EXPECT_EQ(op_L(P("x^2"), Rational(3)), P("2*x*z"));
    EXPECT_EQ(op_L(P("x*y"), Rational(-2)), P("y*z - 2*x^2*z"));
    EXPECT_TRUE(op_L(P("(1/4)*x^4 - (1/2)*z^2")).is_zero());
    EXPECT_TRUE(op_L(P("y - (1/2)*m*x^2")).is_zero());
    EXPECT_EQ(op_L(P("x^2*y")), lie_derivative(principal_field(), P("x^2*y")));
}

TEST(Field, AlphaConjugate) {
    EXPECT_EQ(alpha_conjugate(P("x^2 + y + x")), P("x^2 + y + alpha*x"));
    EXPECT_EQ(alpha_conjugate(P("x"), 3), P("alpha^2*x"));
    EXPECT_EQ(alpha_conjugate(P("1"), 2), P("alpha^2"));
    EXPECT_THROW((void)alpha_conjugate(P("x^4"), 3), std::domain_error);
}

TEST(Field, InstantiateLabel) {
    const ParamPoint p{Rational(1, 4), 1, 1, 1, 0};
    const VectorField v = instantiate(fn_system(), p);
    EXPECT_EQ(v.Q, P("x - y"));
    EXPECT_NE(v.label.find("1/4"), std::string::npos);
    EXPECT_EQ(p.str(), "(a,b,c,d,m) = (1/4, 1, 1, 1, 0)");
}
