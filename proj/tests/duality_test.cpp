#include <gtest/gtest.h>

#include "tdual/duality.hpp"
#include "tdual/tools/pairs.hpp"
#include "tdual/tools/random_data.hpp"

namespace tdual {
namespace {

constexpr std::uint64_t kSeed = 20070401;

BundleChart random_circle(tools::RandomData& rd) {
    BundleChart ch = tools::flat_chart("circle", {{"x", {-1, 1}}, {"y", {-1, 1}}, {"z", {-1, 1}}}, {"th"});
    ch.set_curvature(0, rd.closed_basic_two_form(ch));
    Form h = Form::monomial(ch.frame(), CScalar(rd.scalar(ch.base_vars())), {"dx", "dy", "dz"});
    h += wedge(rd.closed_basic_two_form(ch), ch.gen("th"));
    ch.set_flux(h);
    return ch;
}

Form signed_by_degree(const Form& a) {
    Form out(a.frame());
    for (int k = 0; k <= static_cast<int>(a.frame()->dim()); ++k)
        out += k % 2 ? -a.part(k) : a.part(k);
    return out;
}

class DualityTest : public ::testing::Test {
protected:
    DualityTest() : rd(kSeed), ch(random_circle(rd)), d(tools::dual_pair(ch)) {
        pts = ch.sample({kSeed, 6, 1e-9});
        base = tools::flat_chart("base", {{"x", {-1, 1}}, {"y", {-1, 1}}, {"z", {-1, 1}}}, {});
    }

    Form basic(const CoframePtr& target) { return rd.form(base).transfer(target); }

    tools::RandomData rd;
    BundleChart ch;
    DualityPair d;
    BundleChart base;
    std::vector<Point> pts;
};

// e^{−θ∧θ̃}∧(α + θ∧β) has fiber part θ∧(β − θ̃∧α); moving θ right gives Σ_k (−1)^k (β − θ̃∧α)_k.
TEST_F(DualityTest, TauOnACircleMatchesHandComputation) {
    const CoframePtr& df = d.dual().frame();
    for (int i = 0; i < 16; ++i) {
        Form alpha = basic(ch.frame());
        Form beta = basic(ch.frame());
        Form rho = alpha + wedge(ch.gen("th"), beta);
        Form gamma = beta.transfer(df) - wedge(d.dual().gen("th~"), alpha.transfer(df));
        EXPECT_LE(residual(tau(rho, d), signed_by_degree(gamma), pts), 1e-12);
    }
}

TEST_F(DualityTest, TauIntertwinesTwistedDifferentials) {
    for (int i = 0; i < 16; ++i) {
        Form rho = rd.form(ch);
        EXPECT_LE(residual(d_H(tau(rho, d), d.dual()), tau(d_H(rho, ch), d), pts), 1e-8);
    }
}

TEST_F(DualityTest, ReverseTauInvertsUpToTheRecordedSign) {
    EXPECT_EQ(tau_roundtrip_sign(1), 1);
    EXPECT_EQ(tau_roundtrip_sign(2), -1);
    for (int i = 0; i < 8; ++i) {
        Form rho = rd.form(ch);
        EXPECT_LE(residual(tau_reverse(tau(rho, d), d), CScalar(tau_roundtrip_sign(1)) * rho, pts), 1e-9);
    }
    tools::MixedPair mp = tools::mixed_pair(rd, Rational(1, 2));
    const auto mpts = mp.m.sample({kSeed, 4, 1e-9});
    for (int i = 0; i < 4; ++i) {
        Form rho = rd.form(mp.m);
        EXPECT_LE(residual(tau_reverse(tau(rho, mp.pair), mp.pair), CScalar(tau_roundtrip_sign(2)) * rho, mpts), 1e-9);
    }
}

TEST_F(DualityTest, PointwiseMatricesAgreeWithSymbolicMaps) {
    const Point& p = pts.front();
    Eigen::MatrixXcd t = tau_matrix(d, p);
    Eigen::MatrixXd f = phi_matrix(d, p);
    for (int i = 0; i < 8; ++i) {
        Form rho = rd.form(ch);
        EXPECT_LE((t * rho.eval(p) - tau(rho, d).eval(p)).cwiseAbs().maxCoeff(), 1e-12);
        Section v = rd.section(ch);
        EXPECT_LE((f.cast<std::complex<double>>() * v.eval(p) - phi(v, d).eval(p)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST_F(DualityTest, PhiIsACourantIsomorphism) {
    for (int i = 0; i < 16; ++i) {
        Section v = rd.section(ch);
        Section w = rd.section(ch);
        Section pv = phi(v, d);
        Section pw = phi(w, d);
        double gap = 0.0;
        for (const auto& p : pts) gap = std::max(gap, std::abs(pairing(pv, pw).eval(p) - pairing(v, w).eval(p)));
        EXPECT_LE(gap, 1e-9);
        EXPECT_LE(residual(courant_bracket(pv, pw, d.dual()), phi(courant_bracket(v, w, ch), d), pts), 1e-8);
        EXPECT_LE(transport_section_compat(v, rd.form(ch), d, pts), 1e-8);
    }
}

TEST_F(DualityTest, PhiExchangesFiberVectorAndConnectionForm) {
    const CoframePtr& df = d.dual().frame();
    Section dth(FrameVector::basis(ch.frame(), "th"), Form(ch.frame()));
    Section th(FrameVector(ch.frame()), ch.gen("th"));
    Section expect_th(FrameVector(df), d.dual().gen("th~"));
    Section expect_dth(FrameVector::basis(df, "th~"), Form(df));
    EXPECT_EQ(residual(phi(dth, d), expect_th, pts), 0.0);
    EXPECT_EQ(residual(phi(th, d), expect_dth, pts), 0.0);
}

TEST_F(DualityTest, BuscherRulesByHand) {
    BundleChart flat = tools::flat_chart("flat", {{"x", {-1, 1}}, {"y", {-1, 1}}}, {"th"});
    CircleData c;
    c.g0 = Scalar(4);
    c.g1 = {Scalar(1), Scalar(0)};
    c.b1 = {Scalar(0), Scalar(2)};
    c.g2 = ScalarMatrix::identity(2);
    c.b2 = ScalarMatrix(2, 2);
    CircleData r = buscher(c);
    const Point p = flat.sample({kSeed, 1, 1e-9}).front();
    EXPECT_DOUBLE_EQ(r.g0.eval(p), 0.25);
    EXPECT_DOUBLE_EQ(r.g1[0].eval(p), 0.0);
    EXPECT_DOUBLE_EQ(r.g1[1].eval(p), -0.5);
    EXPECT_DOUBLE_EQ(r.b1[0].eval(p), -0.25);
    EXPECT_DOUBLE_EQ(r.b1[1].eval(p), 0.0);
    // g̃₂ = g₂ + (b₁b₁ − g₁g₁)/g₀, b̃₂(a,e) = b₂ + (g₁ₐb₁ₑ − g₁ₑb₁ₐ)/g₀.
    EXPECT_DOUBLE_EQ(r.g2(0, 0).eval(p), 0.75);
    EXPECT_DOUBLE_EQ(r.g2(1, 1).eval(p), 2.0);
    EXPECT_DOUBLE_EQ(r.g2(0, 1).eval(p), 0.0);
    EXPECT_DOUBLE_EQ(r.b2(0, 1).eval(p), 0.5);
    EXPECT_DOUBLE_EQ(r.b2(1, 0).eval(p), -0.5);
}

TEST_F(DualityTest, TransportedMetricEqualsBuscher) {
    for (int i = 0; i < 8; ++i) {
        GeneralizedMetric gm{ch.frame(), rd.metric(ch), rd.form_degree(ch, 2, false)};
        GeneralizedMetric a = transport_metric(gm, d);
        GeneralizedMetric b = buscher(gm, d);
        for (const auto& p : pts) {
            EXPECT_LE((a.g_at(p) - b.g_at(p)).cwiseAbs().maxCoeff(), 1e-9);
            EXPECT_LE((a.b_at(p) - b.b_at(p)).cwiseAbs().maxCoeff(), 1e-9);
        }
    }
}

TEST_F(DualityTest, DualTypeMatchesTypeOfTransform) {
    for (int m = 0; m <= 4; ++m)
        for (int i = 0; i < 4; ++i) {
            PureSpinor rho = rd.spinor(ch, m);
            for (const auto& p : pts) EXPECT_EQ(dual_type(rho, d, p).type, spinor_type(tau(rho.rho, d), p));
        }
}

TEST_F(DualityTest, UkSpacesAreTransported) {
    for (int i = 0; i < 8; ++i) {
        PureSpinor rho = rd.spinor(ch, rd.integer(0, 4));
        const Point& p = pts[static_cast<std::size_t>(i) % pts.size()];
        if (std::abs(mukai_norm(rho.rho, p)) < 1e-6) continue;
        EXPECT_LE(transport_uk(rho.rho, d, p), 1e-8);
    }
}

TEST_F(DualityTest, DegenerateFiberBlockIsRejected) {
    DualConstruction dc = build_dual_chart(ch);
    const CoframePtr& cf = dc.corr.frame();
    EXPECT_THROW(DualityPair(dc.corr.with_F(Form::monomial(cf, 1, {"dx", "th~"}))), DualityError);
}

/// 𝒥 acting as I± on C± = graph(b ± g), in (X, ξ) components.
Eigen::MatrixXd bihermitian_gcs(const Eigen::MatrixXd& g, const Eigen::MatrixXd& b, const Eigen::MatrixXd& ip,
                                const Eigen::MatrixXd& im) {
    const Eigen::Index n = g.rows();
    Eigen::MatrixXd basis(2 * n, 2 * n);
    Eigen::MatrixXd image(2 * n, 2 * n);
    const Eigen::MatrixXd cp = c_plus_minus(g, b, 1);
    const Eigen::MatrixXd cm = c_plus_minus(g, b, -1);
    basis << cp, cm;
    image << cp * cp.topRows(n).inverse() * ip * cp.topRows(n), cm * cm.topRows(n).inverse() * im * cm.topRows(n);
    return image * basis.inverse();
}

Eigen::MatrixXd restrict_to(const Eigen::MatrixXd& j, const Eigen::MatrixXd& c) {
    const Eigen::Index n = c.cols();
    return (j * c).topRows(n) * c.topRows(n).inverse();
}

TEST(Bihermitian, TransportAgreesWithConjugatedGeneralizedComplexStructure) {
    tools::RandomData rd(kSeed);
    BundleChart flat = tools::flat_chart("flat", {{"x", {-1, 1}}, {"y", {-1, 1}}, {"z", {-1, 1}}}, {"th"});
    DualityPair d = tools::dual_pair(flat);
    const std::size_t t = flat.frame()->require("th");
    const auto pts = flat.sample({kSeed, 4, 1e-9});
    for (int i = 0; i < 8; ++i) {
        ScalarMatrix g = rd.metric(flat);
        for (std::size_t a = 0; a < flat.dim(); ++a)
            if (a != t) g(a, t) = g(t, a) = Scalar(0);
        GeneralizedMetric gm{flat.frame(), g, rd.form_degree(flat, 2, false)};
        GeneralizedMetric dm = buscher(gm, d);
        for (const auto& p : pts) {
            const Eigen::MatrixXd gp = gm.g_at(p);
            const Eigen::MatrixXd bp = gm.b_at(p);
            // I± compatible with g: I = E O J₀ Oᵀ E⁻¹ with E = g^{−1/2}.
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gp);
            const Eigen::MatrixXd e = es.operatorInverseSqrt();
            Eigen::MatrixXd j0 = Eigen::MatrixXd::Zero(4, 4);
            j0(1, 0) = j0(3, 2) = 1.0;
            j0(0, 1) = j0(2, 3) = -1.0;
            Eigen::MatrixXd r1 = Eigen::MatrixXd::NullaryExpr(4, 4, [&] { return rd.uniform(-1, 1); });
            Eigen::MatrixXd r2 = Eigen::MatrixXd::NullaryExpr(4, 4, [&] { return rd.uniform(-1, 1); });
            Eigen::MatrixXd o1 = Eigen::HouseholderQR<Eigen::MatrixXd>(r1).householderQ();
            Eigen::MatrixXd o2 = Eigen::HouseholderQR<Eigen::MatrixXd>(r2).householderQ();
            const Eigen::MatrixXd ip = e * o1 * j0 * o1.transpose() * e.inverse();
            const Eigen::MatrixXd im = e * o2 * j0 * o2.transpose() * e.inverse();

            const Eigen::MatrixXd phi_p = phi_matrix(d, p);
            const Eigen::MatrixXd j_dual = phi_p * bihermitian_gcs(gp, bp, ip, im) * phi_p.inverse();
            const Eigen::MatrixXd gd = dm.g_at(p);
            const Eigen::MatrixXd bd = dm.b_at(p);
            const Eigen::MatrixXd expect_p = restrict_to(j_dual, c_plus_minus(gd, bd, 1));
            const Eigen::MatrixXd expect_m = restrict_to(j_dual, c_plus_minus(gd, bd, -1));
            const Eigen::MatrixXd got_p = transport_bihermitian(ip, gm, d, p, 1);
            const Eigen::MatrixXd got_m = transport_bihermitian(im, gm, d, p, -1);
            EXPECT_LE((got_p - expect_p).cwiseAbs().maxCoeff(), 1e-9);
            EXPECT_LE((got_m - expect_m).cwiseAbs().maxCoeff(), 1e-9);
            EXPECT_EQ(complex_orientation(got_p), complex_orientation(ip));
            EXPECT_EQ(complex_orientation(got_m), -complex_orientation(im));
        }
    }
}

TEST(Bihermitian, RequiresTheMetricConnection) {
    tools::RandomData rd(kSeed);
    BundleChart flat = tools::flat_chart("flat", {{"x", {-1, 1}}}, {"th"});
    DualityPair d = tools::dual_pair(flat);
    ScalarMatrix g = ScalarMatrix::identity(2);
    g(0, 1) = g(1, 0) = Scalar(Rational(1, 3));
    GeneralizedMetric gm{flat.frame(), g, Form(flat.frame())};
    Eigen::MatrixXd i(2, 2);
    i << 0, -1, 1, 0;
    EXPECT_THROW((void)transport_bihermitian(i, gm, d, flat.sample({kSeed, 1, 1e-9}).front(), 1), DualityError);
}

}  // namespace
}  // namespace tdual
