#include <gtest/gtest.h>

#include "tdual/structures.hpp"
#include "tdual/tools/pairs.hpp"
#include "tdual/tools/random_data.hpp"

namespace tdual {
namespace {

constexpr std::uint64_t kSeed = 20070401;

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

class StructuresTest : public ::testing::Test {
protected:
    StructuresTest() : rd(kSeed) {
        ch = tools::flat_chart("box", {{"x", {-1, 1}}, {"y", {-1, 1}}, {"z", {-1, 1}}}, {"th"});
        pts = ch.sample({kSeed, 8, 1e-9});
    }

    tools::RandomData rd;
    BundleChart ch;
    std::vector<Point> pts;
};

TEST_F(StructuresTest, AnnihilatorIsMaximalIsotropic) {
    const Eigen::MatrixXd pair = pairing_matrix(ch.dim());
    for (int i = 0; i < 16; ++i) {
        PureSpinor rho = rd.spinor(ch, rd.integer(0, 4));
        for (const auto& p : pts) {
            Eigen::MatrixXcd l = annihilator(rho.rho, p);
            ASSERT_EQ(l.cols(), static_cast<Eigen::Index>(ch.dim()));
            EXPECT_LE((l.transpose() * pair * l).cwiseAbs().maxCoeff(), 1e-9);
        }
    }
}

TEST_F(StructuresTest, TypeEqualsDegreeOfOmegaWhereNondegenerate) {
    int checked = 0;
    for (int m = 0; m <= 4; ++m)
        for (int i = 0; i < 4; ++i) {
            PureSpinor rho = rd.spinor(ch, m);
            for (const auto& p : pts) {
                if (std::abs(mukai_norm(rho.rho, p)) < 1e-6) continue;
                EXPECT_EQ(spinor_type(rho.rho, p), m);
                ++checked;
            }
        }
    EXPECT_GT(checked, 60);
}

TEST_F(StructuresTest, MukaiNondegeneracyIffLMeetsConjugateTrivially) {
    std::vector<Form> cases;
    for (int i = 0; i < 8; ++i) cases.push_back(rd.spinor(ch, rd.integer(0, 4)).rho);
    cases.push_back(ch.gen("dx"));
    cases.push_back(wedge(ch.gen("dx"), ch.gen("dy")));
    cases.push_back(exp_form(Form::monomial(ch.frame(), CScalar::i(), {"dx", "dy"})));
    int degenerate = 0;
    for (const Form& rho : cases)
        for (const auto& p : pts) {
            Eigen::MatrixXcd l = annihilator(rho, p);
            Eigen::MatrixXcd both(l.rows(), 2 * l.cols());
            both << l, l.conjugate();
            const bool transverse = rank(both) == 2 * l.cols();
            const bool nondegenerate = std::abs(mukai_norm(rho, p)) > 1e-8;
            EXPECT_EQ(transverse, nondegenerate);
            if (!nondegenerate) ++degenerate;
        }
    EXPECT_GT(degenerate, 0);
}

TEST_F(StructuresTest, GeneralizedComplexStructureSquaresToMinusOne) {
    const Eigen::MatrixXd pair = pairing_matrix(ch.dim());
    const auto n2 = static_cast<Eigen::Index>(2 * ch.dim());
    for (int i = 0; i < 16; ++i) {
        PureSpinor rho = rd.spinor(ch, rd.integer(0, 4));
        const Point& p = pts[static_cast<std::size_t>(i) % pts.size()];
        if (std::abs(mukai_norm(rho.rho, p)) < 1e-6) continue;
        Eigen::MatrixXd j = gcs_endomorphism(rho.rho, p);
        EXPECT_LE((j * j + Eigen::MatrixXd::Identity(n2, n2)).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_LE((j.transpose() * pair * j - pair).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST_F(StructuresTest, DegenerateSpinorThrows) {
    EXPECT_THROW((void)gcs_endomorphism(ch.gen("dx"), pts.front()), StructureError);
}

TEST_F(StructuresTest, KnownIntegrableAndNonIntegrableSpinors) {
    const CScalar i = CScalar::i();
    Form zero(ch.frame());
    Form omega = Form::monomial(ch.frame(), 1, {"dx", "dy"}) + Form::monomial(ch.frame(), 1, {"dz", "th"});
    Form big = wedge(ch.gen("dx") + i * ch.gen("dy"), ch.gen("dz") + i * ch.gen("th"));
    EXPECT_LE(check_integrable(PureSpinor::from_data(zero, omega, Form::one(ch.frame())), ch, pts).residual, 1e-9);
    EXPECT_LE(check_integrable(PureSpinor::from_data(zero, zero, big), ch, pts).residual, 1e-9);

    Scalar x = Scalar::variable("x");
    Form bent = Form::monomial(ch.frame(), CScalar(Scalar(1) + x * x), {"dx", "dy"}) +
                Form::monomial(ch.frame(), 1, {"dz", "th"});
    Form twisted = Form::monomial(ch.frame(), CScalar(Scalar(2) + Scalar::variable("z")), {"dx", "dy"}) +
                   Form::monomial(ch.frame(), 1, {"dz", "th"});
    EXPECT_LE(check_integrable(PureSpinor::from_data(zero, bent, Form::one(ch.frame())), ch, pts).residual, 1e-9);
    EXPECT_GT(check_integrable(PureSpinor::from_data(zero, twisted, Form::one(ch.frame())), ch, pts).residual, 1e-4);
}

TEST_F(StructuresTest, HFluxBreaksIntegrabilityOfASymplecticSpinor) {
    BundleChart twisted = ch;
    twisted.set_flux(Form::monomial(ch.frame(), 1, {"dx", "dy", "dz"}));
    Form omega = Form::monomial(ch.frame(), 1, {"dx", "th"}) + Form::monomial(ch.frame(), 1, {"dy", "dz"});
    PureSpinor rho = PureSpinor::from_data(Form(ch.frame()), omega, Form::one(ch.frame()));
    EXPECT_LE(check_integrable(rho, ch, pts).residual, 1e-9);
    EXPECT_GT(check_integrable(rho, twisted, pts).residual, 1e-4);
}

TEST_F(StructuresTest, GeneralizedMetricRoundTrip) {
    for (int i = 0; i < 8; ++i) {
        GeneralizedMetric gm{ch.frame(), rd.metric(ch), rd.form_degree(ch, 2, false)};
        for (const auto& p : pts) {
            const Eigen::MatrixXd g = gm.g_at(p);
            const Eigen::MatrixXd b = gm.b_at(p);
            Eigen::MatrixXd e = metric_endomorphism(g, b);
            const auto n2 = e.rows();
            EXPECT_LE((e * e - Eigen::MatrixXd::Identity(n2, n2)).cwiseAbs().maxCoeff(), 1e-9);
            GB back = gb_from_Cplus(c_plus_minus(g, b, 1));
            EXPECT_LE((back.g - g).cwiseAbs().maxCoeff(), 1e-9);
            EXPECT_LE((back.b - b).cwiseAbs().maxCoeff(), 1e-9);
        }
    }
}

TEST_F(StructuresTest, TwoFormMatrixRoundTrip) {
    Form b = rd.form_degree(ch, 2, false);
    Form back = two_form_from_matrix(ch.frame(), matrix_from_two_form(b));
    EXPECT_LE(residual(b, back, pts), 1e-12);
}

TEST_F(StructuresTest, UkSpacesHaveBinomialDimensions) {
    const int n = static_cast<int>(ch.dim());
    for (int i = 0; i < 8; ++i) {
        PureSpinor rho = rd.spinor(ch, rd.integer(0, 4));
        const Point& p = pts[static_cast<std::size_t>(i) % pts.size()];
        if (std::abs(mukai_norm(rho.rho, p)) < 1e-6) continue;
        std::vector<Eigen::MatrixXcd> u = uk_spaces(rho.rho, p);
        ASSERT_EQ(u.size(), static_cast<std::size_t>(n + 1));
        for (int k = 0; k <= n; ++k) EXPECT_EQ(static_cast<double>(u[k].cols()), binomial(n, k)) << k;
    }
}

TEST_F(StructuresTest, Decomposability) {
    const Point& p = pts.front();
    Form a = wedge(ch.gen("dx"), ch.gen("dy") + ch.gen("th"));
    Form b = Form::monomial(ch.frame(), 1, {"dx", "dy"}) + Form::monomial(ch.frame(), 1, {"dz", "th"});
    EXPECT_TRUE(is_decomposable(ch.dim(), a.eval(p), 2));
    EXPECT_FALSE(is_decomposable(ch.dim(), b.eval(p), 2));
}

}  // namespace
}  // namespace tdual
