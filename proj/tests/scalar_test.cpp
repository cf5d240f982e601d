#include <gtest/gtest.h>

#include <cmath>

#include "tdual/scalar.hpp"
#include "tdual/tools/random_data.hpp"

namespace tdual {
namespace {

constexpr std::uint64_t kSeed = 20070401;

Point at(double x, double y) {
    Point p;
    p.set("x", x);
    p.set("y", y);
    return p;
}

TEST(Rational, ArithmeticIsExactAndReduced) {
    Rational a(1, 3);
    Rational b(1, 6);
    EXPECT_EQ(a + b, Rational(1, 2));
    EXPECT_EQ(a * b, Rational(1, 18));
    EXPECT_EQ(a / b, Rational(2));
    EXPECT_EQ(Rational(4, -6), Rational(-2, 3));
    EXPECT_EQ(Rational(2, 3).pow(-2), Rational(9, 4));
    EXPECT_THROW(Rational(1, 0), EvalError);
}

TEST(Scalar, ConstantsFoldExactly) {
    Scalar s = Scalar(Rational(1, 3)) + Scalar(Rational(2, 3));
    ASSERT_NE(s.rational_value(), nullptr);
    EXPECT_EQ(*s.rational_value(), Rational(1));
    EXPECT_TRUE((Scalar::variable("x") - Scalar::variable("x")).is_zero());
}

TEST(Scalar, ParseRoundTrip) {
    const char* texts[] = {"(+ 1 (* -1 (^ t 2)))", "(sin (* 2 x))", "(/ 1 (* pi (^ (+ 1 (^ x 2)) 2)))",
                           "(exp (* (/ 1 2) y))", "(sqrt (+ (^ x 2) 1))"};
    for (const char* t : texts) {
        Scalar s = Scalar::parse(t);
        Scalar again = Scalar::parse(s.to_string());
        EXPECT_TRUE(identical(s, again)) << t << " -> " << s.to_string();
    }
    EXPECT_THROW((void)Scalar::parse("(+ 1"), std::exception);
    EXPECT_THROW((void)Scalar::parse("(frobnicate x)"), std::exception);
}

TEST(Scalar, EvaluatesKnownValues) {
    Point p = at(0.5, -0.25);
    EXPECT_NEAR(Scalar::parse("(* pi x)").eval(p), M_PI * 0.5, 1e-15);
    EXPECT_NEAR(Scalar::parse("(log (+ 2 y))").eval(p), std::log(1.75), 1e-15);
    EXPECT_THROW((void)Scalar::parse("(/ 1 (- x (/ 1 2)))").eval(p), EvalError);
    EXPECT_THROW((void)Scalar::variable("z").eval(p), EvalError);
}

TEST(Scalar, DerivativeMatchesCentralDifference) {
    tools::RandomData rd(kSeed);
    Domain dom;
    dom.add("x", -1, 1).add("y", -1, 1);
    const std::vector<Point> pts = dom.sample(kSeed, 16);
    const double h = 1e-6;
    for (int trial = 0; trial < 32; ++trial) {
        Scalar e = rd.scalar({"x", "y"}) * rd.scalar({"x", "y"}) + sin(rd.scalar({"x", "y"}));
        for (const char* v : {"x", "y"}) {
            Scalar de = e.diff(v);
            for (const auto& p : pts) {
                Point lo = p;
                Point hi = p;
                lo.set(v, p.at(v) - h);
                hi.set(v, p.at(v) + h);
                const double fd = (e.eval(hi) - e.eval(lo)) / (2 * h);
                EXPECT_NEAR(de.eval(p), fd, 1e-5 * (1.0 + std::abs(fd))) << e.to_string();
            }
        }
    }
}

TEST(Scalar, EqualNumericIsReflexiveAndSymmetric) {
    tools::RandomData rd(kSeed);
    Domain dom;
    dom.add("x", -1, 1).add("y", -1, 1);
    for (int trial = 0; trial < 16; ++trial) {
        Scalar a = rd.scalar({"x", "y"});
        Scalar b = rd.scalar({"x", "y"});
        EXPECT_TRUE(equal_numeric(a, a, dom));
        EXPECT_EQ(equal_numeric(a, b, dom), equal_numeric(b, a, dom));
    }
    Scalar x = Scalar::variable("x");
    EXPECT_TRUE(equal_numeric(pow(sin(x), 2) + pow(cos(x), 2), Scalar(1), dom));
    EXPECT_FALSE(equal_numeric(x, x + Scalar(Rational(1, 1000000)), dom));
}

TEST(Domain, SamplingIsSeededAndRespectsExclusions) {
    Domain dom;
    dom.add("x", -1, 1).add("y", -1, 1).exclude(Scalar::variable("x")).set_margin(0.1);
    const auto a = dom.sample(7, 32);
    const auto b = dom.sample(7, 32);
    ASSERT_EQ(a.size(), 32u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].at("x"), b[i].at("x"));
        EXPECT_GE(std::abs(a[i].at("x")), 0.1);
        EXPECT_LE(std::abs(a[i].at("y")), 1.0);
    }
}

TEST(ScalarMatrix, InverseTimesMatrixIsIdentity) {
    tools::RandomData rd(kSeed);
    Domain dom;
    dom.add("x", -1, 1).add("y", -1, 1);
    ScalarMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = i == j ? rd.positive({"x"}) + Scalar(4) : rd.scalar({"x", "y"});
    ScalarMatrix prod = m * m.inverse();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE(equal_numeric(prod(i, j), Scalar(i == j ? 1 : 0), dom));
}

}  // namespace
}  // namespace tdual
