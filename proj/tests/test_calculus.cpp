#include "fnsurf/calculus.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

using namespace fnsurf;

namespace {

// Composite Simpson on [lo, hi]; independent of the library quadrature.
double simpson(const std::function<double(double)>& f, double lo, double hi, int n = 2000) {
    const double h = (hi - lo) / n;
    double s = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return s * h / 3.0;
}

double sqrtQ(double u, double w) { return std::sqrt(u * u * u * u / 2 - 2 * w); }

}  // namespace

TEST(Q2, Arithmetic) {
    const Q2 s = Q2::sqrt2();
    EXPECT_EQ(s * s, Q2(2));
    const Q2 x(Rational(3), Rational(1, 2));
    EXPECT_EQ(x * x.inverse(), Q2(1));
    EXPECT_EQ(x.norm(), Rational(9) - Rational(1, 2));
    EXPECT_NEAR((Q2(1) + s).to_double(), 1 + std::sqrt(2.0), 1e-15);
    EXPECT_THROW((void)Q2().inverse(), std::domain_error);
}

TEST(UWPoly, Derivatives) {
    const UWPoly& q = UWPoly::Q();
    EXPECT_EQ(q.d_du(), UWPoly::term(Q2(2), 3, 0));
    EXPECT_EQ(q.d_dw(), UWPoly(-2));
    EXPECT_NEAR(q.eval(2, 1), 6.0, 1e-15);
}

TEST(RatFunc, Semantics) {
    const RatFunc a(UWPoly::u() * UWPoly::u(), UWPoly::u());
    EXPECT_EQ(a, RatFunc(UWPoly::u()));
    EXPECT_EQ(RatFunc(UWPoly::u()).inverse() * RatFunc(UWPoly::u()), RatFunc(1));
    EXPECT_EQ((RatFunc(1) / RatFunc(UWPoly::u())).d_du(), -RatFunc(1) / RatFunc(UWPoly::u() * UWPoly::u()));
    EXPECT_FALSE(RatFunc(UWPoly::u()).constant_value().has_value());
    EXPECT_EQ(*RatFunc(5).constant_value(), Q2(5));
}

TEST(DiffElem, BasicDerivatives) {
    // (sqrtQ)' = u^3 / sqrtQ
    EXPECT_TRUE(check_identity(parse_diff("u^3/sqrtQ"), parse_diff("sqrtQ")));
    EXPECT_TRUE(check_identity(parse_diff("sqrtQ^-1"), parse_diff("A")));
    EXPECT_TRUE(check_identity(parse_diff("u^2/sqrtQ"), parse_diff("B")));
    EXPECT_TRUE(check_identity(parse_diff("u/sqrtQ"), parse_diff("C")));
    EXPECT_TRUE(check_identity(parse_diff("u^-1"), parse_diff("ln(u)")));
    EXPECT_TRUE(check_identity(parse_diff("3*u^2*w"), parse_diff("u^3*w + w^2")));
    EXPECT_FALSE(check_identity(parse_diff("u"), parse_diff("u^2")));
}

TEST(DiffElem, ProductOutsideModel) {
    EXPECT_THROW((void)(DiffElem::A() * DiffElem::B()), std::invalid_argument);
    EXPECT_NO_THROW((void)(DiffElem::A() * DiffElem::u()));
}

TEST(DiffElem, ParseErrors) {
    EXPECT_THROW((void)parse_diff("sqrt(u)"), std::invalid_argument);
    EXPECT_THROW((void)parse_diff("sqrt(3)"), std::invalid_argument);
    EXPECT_THROW((void)parse_diff("u^"), std::invalid_argument);
    EXPECT_THROW((void)parse_diff("q"), std::invalid_argument);
    EXPECT_THROW((void)parse_diff("(u"), std::invalid_argument);
    EXPECT_NO_THROW((void)parse_diff("sqrt(2*u^4 - 8*w)"));
    EXPECT_NO_THROW((void)parse_diff("sqrt(8)"));
}

TEST(DiffElem, SqrtForms) {
    // sqrt(2 u^4 - 8 w) = 2 sqrtQ and sqrt(8) = 2 sqrt2.
    const DiffElem lhs = parse_diff("sqrt(2*u^4 - 8*w)") - parse_diff("2*sqrtQ");
    EXPECT_TRUE(lhs.is_zero());
    EXPECT_TRUE((parse_diff("sqrt(8)") - parse_diff("2*sqrt2")).is_zero());
}

TEST(Evaluate, MatchesClosedForm) {
    const DiffElem e = parse_diff("u*sqrtQ + w*A - 2*B + ln(u)");
    const double u = 2.5, w = 1.0;
    EXPECT_NEAR(evaluate(e, u, w, 0.3, 0.7, 0.0), u * sqrtQ(u, w) + 0.3 - 1.4 + std::log(u), 1e-12);
}

TEST(Appendix, IndependentSimpsonCheck) {
    // sqrtQ = d/du [(1/3) u sqrtQ - (4/3) w A], with A from Simpson.
    const double w = 1.0, u0 = 2.0, u1 = 3.0;
    const double lhs = simpson([&](double u) { return sqrtQ(u, w); }, u0, u1);
    const double A = simpson([&](double u) { return 1.0 / sqrtQ(u, w); }, u0, u1);
    const double rhs = (u1 * sqrtQ(u1, w) - u0 * sqrtQ(u0, w)) / 3.0 - 4.0 / 3.0 * w * A;
    EXPECT_NEAR(lhs, rhs, 1e-9 * std::abs(lhs));
}

TEST(Appendix, SuiteAsPrinted) {
    const SuiteReport r = appendix_suite();
    EXPECT_EQ(r.outcomes.size(), 15U);
    EXPECT_EQ(r.skipped.size(), 3U);
    EXPECT_EQ(r.passed(), 11U);
    EXPECT_EQ(r.failed(), 4U);
    for (const auto& o : r.outcomes) {
        if (o.passed) {
            ASSERT_TRUE(o.quadrature_rel_error.has_value()) << o.name;
            EXPECT_LE(*o.quadrature_rel_error, 1e-9) << o.name;
        } else {
            EXPECT_FALSE(o.residual.empty());
            ASSERT_TRUE(o.corrected_passed.has_value()) << o.name;
            EXPECT_TRUE(*o.corrected_passed) << o.name;
            ASSERT_TRUE(o.corrected_quadrature_rel_error.has_value());
            EXPECT_LE(*o.corrected_quadrature_rel_error, 1e-9) << o.name;
        }
    }
}

TEST(Appendix, FailuresAreTheMisprints) {
    const SuiteReport r = appendix_suite();
    std::vector<std::string> failed;
    for (const auto& o : r.outcomes)
        if (!o.passed) failed.push_back(o.name);
    EXPECT_EQ(failed, (std::vector<std::string>{"u9_over_sqrtQ", "u9_sqrtQ", "inv_sqrt2u2_plus_2sqrtQ",
                                                 "inv_sqrt2u2_plus_2sqrtQ_over_sqrtQ"}));
}

TEST(Manifest, ParseErrors) {
    EXPECT_THROW((void)parse_manifest("{"), std::invalid_argument);
    EXPECT_THROW((void)parse_manifest(R"({"identities": [{"name": "x"}]})"), std::invalid_argument);
    const Manifest m = parse_manifest(R"({"identities": [{"name": "t", "integrand": "1", "antiderivative": "u"}]})");
    ASSERT_EQ(m.identities.size(), 1U);
    EXPECT_TRUE(m.skipped.empty());
    EXPECT_EQ(appendix_suite(m).summary().substr(0, 8), "1 passed");
}
