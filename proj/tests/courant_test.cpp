#include <gtest/gtest.h>

#include "tdual/courant.hpp"
#include "tdual/tools/pairs.hpp"
#include "tdual/tools/random_data.hpp"

namespace tdual {
namespace {

constexpr std::uint64_t kSeed = 20070401;

class CourantTest : public ::testing::Test {
protected:
    CourantTest() : rd(kSeed) {
        ch = tools::flat_chart("box", {{"x", {-1, 1}}, {"y", {-1, 1}}, {"z", {-1, 1}}}, {"th"});
        ch.set_curvature(0, rd.closed_basic_two_form(ch));
        Form h = Form::monomial(ch.frame(), CScalar(rd.scalar(ch.base_vars())), {"dx", "dy", "dz"});
        h += wedge(rd.closed_basic_two_form(ch), ch.gen("th"));
        ch.set_flux(h);
        pts = ch.sample({kSeed, 6, 1e-9});
    }

    double scalar_gap(const CScalar& a, const CScalar& b) const {
        double worst = 0.0;
        for (const auto& p : pts) worst = std::max(worst, std::abs(a.eval(p) - b.eval(p)));
        return worst;
    }

    tools::RandomData rd;
    BundleChart ch;
    std::vector<Point> pts;
};

TEST_F(CourantTest, PairingIsSymmetricAndSplit) {
    Section dth(FrameVector::basis(ch.frame(), "th"), Form(ch.frame()));
    Section th(FrameVector(ch.frame()), ch.gen("th"));
    EXPECT_EQ(scalar_gap(pairing(dth, th), CScalar(Scalar(Rational(1, 2)))), 0.0);
    EXPECT_EQ(scalar_gap(pairing(dth, dth), CScalar(0)), 0.0);
    for (int i = 0; i < 8; ++i) {
        Section v = rd.section(ch, true);
        Section w = rd.section(ch, true);
        EXPECT_LE(scalar_gap(pairing(v, w), pairing(w, v)), 1e-12);
    }
}

TEST_F(CourantTest, BracketIsADerivationOfThePairing) {
    for (int i = 0; i < 16; ++i) {
        Section v = rd.section(ch);
        Section w1 = rd.section(ch);
        Section w2 = rd.section(ch);
        CScalar lhs = ch.structure().derivative(v.x, pairing(w1, w2));
        CScalar rhs = pairing(courant_bracket(v, w1, ch), w2) + pairing(w1, courant_bracket(v, w2, ch));
        EXPECT_LE(scalar_gap(lhs, rhs), 1e-8);
    }
}

TEST_F(CourantTest, BracketMatchesDerivedBracketOnSpinors) {
    for (int i = 0; i < 16; ++i) {
        Section v = rd.section(ch);
        Section w = rd.section(ch);
        Form rho = rd.form(ch, true, 0.5);
        EXPECT_LE(bracket_spinor_oracle(v, w, rho, ch, pts), 1e-8);
    }
}

TEST_F(CourantTest, LeibnizRuleInTheSecondSlot) {
    for (int i = 0; i < 8; ++i) {
        Section v = rd.section(ch);
        Section w = rd.section(ch);
        CScalar f(rd.scalar(ch.base_vars()));
        Section lhs = courant_bracket(v, f * w, ch);
        Section rhs = f * courant_bracket(v, w, ch) + ch.structure().derivative(v.x, f) * w;
        EXPECT_LE(residual(lhs, rhs, pts), 1e-8);
    }
}

TEST_F(CourantTest, ClosedBTransformIsAnAutomorphism) {
    for (int i = 0; i < 8; ++i) {
        Form b = rd.closed_basic_two_form(ch);
        Section v = rd.section(ch);
        Section w = rd.section(ch);
        EXPECT_LE(residual(courant_bracket(b_transform(b, v), b_transform(b, w), ch),
                           b_transform(b, courant_bracket(v, w, ch)), pts),
                  1e-8);
        EXPECT_LE(scalar_gap(pairing(b_transform(b, v), b_transform(b, w)), pairing(v, w)), 1e-12);
    }
}

TEST_F(CourantTest, FluxTermEntersTheBracket) {
    Section dx(FrameVector::basis(ch.frame(), "dx"), Form(ch.frame()));
    Section dy(FrameVector::basis(ch.frame(), "dy"), Form(ch.frame()));
    Section with_flux = courant_bracket(dx, dy, ch);
    Section without = courant_bracket(dx, dy, ch.structure(), Form(ch.frame()));
    Form expected = contract(dx.x, contract(dy.x, ch.flux()));
    EXPECT_LE(residual(with_flux - without, Section(FrameVector(ch.frame()), expected), pts), 1e-12);
}

TEST_F(CourantTest, CliffordActionIsAModule) {
    for (int i = 0; i < 16; ++i) {
        Section v = rd.section(ch, true);
        Section w = rd.section(ch, true);
        Form rho = rd.form(ch, true, 0.5);
        EXPECT_LE(residual(clifford(v, clifford(w, rho)) + clifford(w, clifford(v, rho)),
                           CScalar(2) * pairing(v, w) * rho, pts),
                  1e-9);
    }
}

}  // namespace
}  // namespace tdual
