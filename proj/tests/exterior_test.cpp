#include <gtest/gtest.h>

#include "tdual/bundle.hpp"
#include "tdual/sexpr.hpp"
#include "tdual/tools/pairs.hpp"
#include "tdual/tools/random_data.hpp"

namespace tdual {
namespace {

constexpr std::uint64_t kSeed = 20070401;

class ExteriorTest : public ::testing::Test {
protected:
    ExteriorTest() : rd(kSeed) {
        ch = tools::flat_chart("box", {{"x", {-1, 1}}, {"y", {-1, 1}}, {"z", {-1, 1}}}, {"th"});
        pts = ch.sample({kSeed, 6, 1e-9});
    }

    Form homogeneous(int k) { return rd.form_degree(ch, k, true, 0.8); }

    tools::RandomData rd;
    BundleChart ch;
    std::vector<Point> pts;
};

TEST_F(ExteriorTest, MonomialOrderingSign) {
    Form a = Form::monomial(ch.frame(), 1, {"dy", "dx"});
    Form b = Form::monomial(ch.frame(), -1, {"dx", "dy"});
    EXPECT_EQ(residual(a, b, pts), 0.0);
    EXPECT_TRUE(wedge(ch.gen("dx"), ch.gen("dx")).is_zero());
}

TEST_F(ExteriorTest, WedgeIsAssociative) {
    for (int i = 0; i < 16; ++i) {
        Form a = rd.form(ch);
        Form b = rd.form(ch);
        Form c = rd.form(ch);
        EXPECT_LE(residual(wedge(wedge(a, b), c), wedge(a, wedge(b, c)), pts), 1e-9);
    }
}

TEST_F(ExteriorTest, WedgeIsGradedCommutative) {
    for (int k = 0; k <= 4; ++k)
        for (int l = 0; l + k <= 4; ++l) {
            Form a = homogeneous(k);
            Form b = homogeneous(l);
            const CScalar sign((k * l) % 2 ? -1 : 1);
            EXPECT_LE(residual(wedge(a, b), sign * wedge(b, a), pts), 1e-9) << k << " " << l;
        }
}

TEST_F(ExteriorTest, ContractionIsAnAntiderivation) {
    for (int i = 0; i < 16; ++i) {
        FrameVector x = rd.section(ch, true).x;
        const int k = rd.integer(0, 3);
        Form a = homogeneous(k);
        Form b = rd.form(ch);
        const CScalar sign(k % 2 ? -1 : 1);
        EXPECT_LE(residual(contract(x, wedge(a, b)), wedge(contract(x, a), b) + sign * wedge(a, contract(x, b)), pts),
                  1e-9);
    }
}

TEST_F(ExteriorTest, CliffordIdentity) {
    for (int i = 0; i < 64; ++i) {
        FrameVector x = rd.section(ch, true).x;
        Form xi = homogeneous(1);
        Form rho = rd.form(ch);
        CScalar pair = CScalar(Scalar(Rational(1, 2))) * (evaluate_one_form(xi, x) + evaluate_one_form(xi, x));
        EXPECT_LE(residual(clifford(x, xi, clifford(x, xi, rho)), pair * rho, pts), 1e-9);
    }
}

TEST_F(ExteriorTest, MukaiPairingIsBInvariant) {
    for (int i = 0; i < 64; ++i) {
        Form e_b = exp_form(rd.form_degree(ch, 2, false));
        Form a = rd.form(ch);
        Form b = rd.form(ch);
        EXPECT_LE(residual(mukai(wedge(e_b, a), wedge(e_b, b)), mukai(a, b), pts), 1e-9);
    }
}

TEST_F(ExteriorTest, MukaiSymmetryInFourDimensions) {
    // σ(ρ₁)∧ρ₂ = (−1)^{n(n−1)/2} σ(ρ₂)∧ρ₁ with n = 4.
    for (int i = 0; i < 8; ++i) {
        Form a = rd.form(ch);
        Form b = rd.form(ch);
        EXPECT_LE(residual(mukai(a, b), mukai(b, a), pts), 1e-9);
    }
}

TEST_F(ExteriorTest, ExpOfTwoFormTruncates) {
    Form b = Form::monomial(ch.frame(), 1, {"dx", "dy"}) + Form::monomial(ch.frame(), 1, {"dz", "th"});
    Form e = exp_form(b);
    Form expected = Form::one(ch.frame()) + b + Form::monomial(ch.frame(), 1, {"dx", "dy", "dz", "th"});
    EXPECT_EQ(residual(e, expected, pts), 0.0);
    EXPECT_THROW((void)exp_form(ch.gen("dx")), std::invalid_argument);
}

TEST_F(ExteriorTest, FiberIntegrationMovesFibersRight) {
    // ∫ θ = 1 and ∫ θ∧dx = −dx under the right-placement convention.
    EXPECT_EQ(residual(fiber_integrate(ch.gen("th"), GenTag::Fiber),
                       Form::one(fiber_integrate(ch.gen("th"), GenTag::Fiber).frame()), pts),
              0.0);
    Form r = fiber_integrate(wedge(ch.gen("th"), ch.gen("dx")), GenTag::Fiber);
    EXPECT_EQ(residual(r, -Form::generator(r.frame(), "dx"), pts), 0.0);
    EXPECT_TRUE(fiber_integrate(ch.gen("dx"), GenTag::Fiber).is_zero());
}

TEST_F(ExteriorTest, SerializationRoundTrip) {
    for (int i = 0; i < 8; ++i) {
        Form a = rd.form(ch);
        Form b = Form::parse(ch.frame(), a.to_string());
        EXPECT_EQ(residual(a, b, pts), 0.0);
    }
    EXPECT_THROW((void)Form::parse(ch.frame(), "(form (term 1 0 dq))"), CoframeMismatch);
    EXPECT_THROW((void)Form::parse(ch.frame(), "(forms)"), ParseError);
}

TEST_F(ExteriorTest, DifferentCoframesAreRejected) {
    BundleChart other = tools::flat_chart("other", {{"u", {0, 1}}}, {"th"});
    EXPECT_THROW((void)wedge(ch.gen("dx"), other.gen("du")), CoframeMismatch);
}

TEST(Pointwise, CliffordMatrixMatchesSymbolicAction) {
    tools::RandomData rd(kSeed);
    BundleChart ch = tools::flat_chart("box", {{"x", {-1, 1}}, {"y", {-1, 1}}}, {"th"});
    const Point p = ch.sample({kSeed, 1, 1e-9}).front();
    for (int i = 0; i < 8; ++i) {
        Section v = rd.section(ch, true);
        Form rho = rd.form(ch);
        Eigen::VectorXcd lhs = pointwise::clifford_matrix(ch.dim(), v.eval(p)) * rho.eval(p);
        EXPECT_LE((lhs - clifford(v.x, v.xi, rho).eval(p)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

}  // namespace
}  // namespace tdual
