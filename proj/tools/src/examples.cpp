#include <cmath>

#include "common.hpp"

namespace tdual::tools {

using namespace detail;

namespace {

void pair_checks(Context& c, const DualityPair& d, const std::string& anchor) {
    c.guard("chart and pair valid", anchor, [&] {
        ChartReport cr = validate_chart(d.m(), c.sampling());
        c.check("chart satisfies dH = 0 and basic curvature", anchor,
                std::max({cr.dH, cr.holonomy, cr.dc, cr.basic_c}), 1e-9);
        PairReport pr = validate_pair(d.corr(), c.sampling());
        c.check("dF = p*H - p~*H~", anchor, pr.dF, 1e-9);
        c.check_true("fiber block of F nondegenerate", anchor, pr.nondegenerate, "min |det| " + fmt(pr.min_abs_det));
    });
}

void transport_checks(Context& c, const DualityPair& d, const std::vector<Point>& pts, int forms, int sections,
                      const std::string& anchor) {
    c.guard("transport", anchor, [&] {
        IntertwiningResult it = intertwining(d, c.random(), forms, pts);
        c.check("d_H~ tau = tau d_H", anchor, it.intertwining, 1e-8, std::to_string(forms) + " random forms");
        c.check("tau round trip", anchor, it.roundtrip, 1e-9);
        PhiResult ph = phi_properties(d, c.random(), sections, pts);
        c.check("phi orthogonal", anchor, ph.orthogonality, 1e-9, std::to_string(sections) + " random pairs");
        c.check("phi preserves Courant brackets", anchor, ph.bracket, 1e-8);
        c.check("tau(v.rho) = phi(v).tau(rho)", anchor, ph.compatibility, 1e-8);
    });
}

}  // namespace

void run_s3_hopf(Context& c) {
    const std::string anchor = "Hopf fibration example";
    LoadedPair lp = load_pair(c, "hopf.chart");
    const DualityPair& d = lp.d;
    const BundleChart& dual = d.dual();
    const std::vector<Point> pts = c.points(d.m());
    const std::vector<Point> few = head(pts, 6);

    pair_checks(c, d, anchor);
    const Scalar& sigma = lp.file.scalar("sigma");
    c.check_true("dual curvature is zero", anchor, dual.curvature()[0].is_zero());
    c.check_true("dual flux is sigma ^ th~", anchor,
                 identical(dual.flux(), Form::monomial(dual.frame(), CScalar(sigma), {"dx", "dy", "th~"})));
    transport_checks(c, d, few, 32, 16, anchor);

    c.guard("round metric", anchor, [&] {
        GeneralizedMetric g = circle_metric(d.m(), lp.file.scalar("g0"), lp.file.scalar("gb"));
        GeneralizedMetric moved = transport_metric(g, d);
        c.check("transported metric equals Buscher", anchor, metric_residual(moved, buscher(g, d), pts), 1e-9);
        CircleData cd = buscher(decompose_circle(g, d.m()));
        c.check("dual circle length inverted", anchor,
                relative_residual(cd.g0 * lp.file.scalar("g0"), Scalar(1), pts), 1e-12);
    });

    c.guard("complex structure on S3 x S1", anchor, [&] {
        LoadedPair h4 = load_pair(c, "hopf4.chart");
        const DualityPair& d4 = h4.d;
        const std::vector<Point> p4 = c.points(d4.m());
        Form zero(d4.m().frame());
        PureSpinor rho = PureSpinor::from_data(zero, zero, wedge(h4.file.form("dw"), h4.file.form("dzeta")));
        Form rho_dual = tau(rho.rho, d4);
        c.check("Omega integrable", anchor, check_integrable(rho, d4.m(), p4).residual, 1e-8);
        c.check("tau(Omega) integrable", anchor, check_integrable(PureSpinor(rho_dual), d4.dual(), p4).residual, 1e-8);
        int bad = 0;
        for (const auto& p : p4) {
            DualTypeResult r = dual_type(rho, d4, p);
            if (r.j != 0 || r.type != 1 || spinor_type(rho_dual, p) != 1) ++bad;
        }
        c.check_true("dual is generalized complex of type 1", anchor, bad == 0,
                     std::to_string(bad) + " of " + std::to_string(p4.size()) + " points disagree");
        double uk = 0.0;
        for (const auto& p : p4) uk = std::max(uk, transport_uk(rho.rho, d4, p));
        c.check("tau maps U^k onto U^k", anchor, uk, 1e-8);
        reduction_checks(c, d4, head(p4, 8), "S3 x S1", anchor);
    });
    reduction_checks(c, d, pts, "S3", anchor);
}

void run_s3_selfdual(Context& c) {
    const std::string anchor = "Lie groups self-dual";
    LoadedPair lp = load_pair(c, "hopf-flux.chart");
    const DualityPair& d = lp.d;
    const BundleChart& m = d.m();
    const BundleChart& dual = d.dual();
    const std::vector<Point> pts = c.points(m);

    pair_checks(c, d, anchor);
    c.check_true("dual curvature equals sigma", anchor,
                 identical(dual.curvature()[0], m.curvature()[0].transfer(dual.frame())));
    c.check_true("dual flux equals th~ ^ sigma", anchor, identical(dual.flux(), rename_to_dual(m.flux(), dual)));
    transport_checks(c, d, head(pts, 6), 16, 8, anchor);
    c.guard("round metric", anchor, [&] {
        GeneralizedMetric g = circle_metric(m, lp.file.scalar("g0"), lp.file.scalar("gb"));
        c.check("transported metric equals Buscher", anchor,
                metric_residual(transport_metric(g, d), buscher(g, d), pts), 1e-9);
    });
    reduction_checks(c, d, pts, "SU(2)", anchor);
}

void run_s2_annulus(Context& c) {
    const std::string anchor = "S2 symplectic to annulus";
    LoadedPair lp = load_pair(c, "s2.chart");
    const DualityPair& d = lp.d;
    const BundleChart& dual = d.dual();
    const std::vector<Point> pts = c.points(d.m());
    const Form& omega = lp.file.form("omega");
    const Form& b = lp.file.form("B");
    const Scalar& w = lp.file.scalar("w");
    const Scalar& bs = lp.file.scalar("b");

    pair_checks(c, d, anchor);
    PureSpinor rho = PureSpinor::from_data(b, omega, Form::one(d.m().frame()));
    Form rho_dual = tau(rho.rho, d);

    Form expected = dual.gen("th~") + Form::monomial(dual.frame(), CScalar(bs, w), {"dt"});
    c.check_true("tau(e^(B + i omega)) = dth~ + (b + i w) dt", anchor, identical(rho_dual, expected),
                 rho_dual.to_string());

    int bad = 0;
    for (const auto& p : pts)
        if (dual_type(rho, d, p).type != 1 || spinor_type(rho_dual, p) != 1) ++bad;
    c.check_true("dual has type 1 at every sample", anchor, bad == 0, std::to_string(bad) + " disagree");
    c.check("tau(rho) integrable", anchor, check_integrable(PureSpinor(rho_dual), dual, pts).residual, 1e-8);

    c.guard("annulus radius", anchor, [&] {
        const Mask mdt = Mask(1) << dual.frame()->require("dt");
        const Mask mth = Mask(1) << dual.frame()->require("th~");
        const Mask area = (Mask(1) << d.m().frame()->require("dt")) | (Mask(1) << d.m().frame()->require("th"));
        const CScalar w_form = omega.coeff(area);
        const CScalar num = rho_dual.coeff(mdt);
        const CScalar den = rho_dual.coeff(mth);
        auto at = [](double t) {
            Point p;
            p.set("t", t);
            return p;
        };
        const double from_omega = std::exp(-simpson([&](double t) { return w_form.eval(at(t)).real(); }, -1.0, 1.0));
        const double from_spinor = std::exp(
            -gauss_legendre([&](double t) { return (num.eval(at(t)) / den.eval(at(t))).imag(); }, -1.0, 1.0));
        c.check("radius from dual coordinate equals exp(-integral of omega)", anchor,
                std::abs(from_spinor - from_omega), 1e-6,
                "exp(-int omega) = " + fmt(from_omega) + ", from dual = " + fmt(from_spinor));
        c.check("radius independent of the quadrature rule", anchor,
                std::abs(std::exp(-gauss_legendre([&](double t) { return w.eval(at(t)); }, -1.0, 1.0)) - from_omega),
                1e-6);
    });

    c.guard("dual metric", anchor, [&] {
        const Scalar& g0 = lp.file.scalar("g0");
        const Scalar& g2 = lp.file.scalar("g2");
        GeneralizedMetric g = circle_metric(d.m(), g0, g2);
        GeneralizedMetric expected_metric = circle_metric(dual, g2, g2);
        c.check("Buscher dual metric is (dth~^2 + dt^2)/(1 - t^2)", anchor,
                metric_residual(buscher(g, d), expected_metric, pts), 1e-9);
        c.check("transported metric agrees", anchor, metric_residual(transport_metric(g, d), expected_metric, pts),
                1e-9);
    });

    double uk = 0.0;
    for (const auto& p : pts) uk = std::max(uk, transport_uk(rho.rho, d, p));
    c.check("tau maps U^k onto U^k", anchor, uk, 1e-8);
    reduction_checks(c, d, pts, "S2", anchor);
}

void run_hopf_surface(Context& c) {
    const std::string anchor = "Hopf surface example";
    LoadedPair lp = load_pair(c, "hopf-surface.chart");
    const DualityPair& d = lp.d;
    const std::vector<Point> pts = c.points(d.m());
    pair_checks(c, d, anchor);

    Form zero(d.m().frame());
    PureSpinor rho = PureSpinor::from_data(zero, zero, wedge(lp.file.form("dw1"), lp.file.form("beta")));
    Form rho_dual = tau(rho.rho, d);
    c.check("rho integrable", anchor, check_integrable(rho, d.m(), pts).residual, 1e-8);
    c.check("tau(rho) integrable", anchor, check_integrable(PureSpinor(rho_dual), d.dual(), pts).residual, 1e-8);

    int bad = 0;
    int j0 = 0;
    for (const auto& p : pts) {
        DualTypeResult r = dual_type(rho, d, p);
        if (r.j == 0) ++j0;
        if (r.type != 0 || spinor_type(rho_dual, p) != 0) ++bad;
    }
    c.check_true("dual is symplectic away from the elliptic fibers", anchor, bad == 0,
                 "j = 0 at " + std::to_string(j0) + " of " + std::to_string(pts.size()) + " samples");

    int jump = 0;
    const int n_elliptic = 8;
    for (int i = 0; i < n_elliptic; ++i) {
        Point p;
        p.set("q", 0.0);
        p.set("eta", c.random().uniform(-1.0, 1.0));
        DualTypeResult r = dual_type(rho, d, p);
        if (r.j == 1 && r.type == 2 && spinor_type(rho_dual, p) == 2) ++jump;
    }
    c.check_true("type jumps to 2 over the elliptic fibers", anchor, jump == n_elliptic,
                 std::to_string(jump) + " of " + std::to_string(n_elliptic) + " points at q = 0");
    reduction_checks(c, d, pts, "Hopf surface", anchor);
}

void run_gibbons_hawking(Context& c) {
    const std::string anchor = "Gibbons-Hawking example";
    LoadedPair lp = load_pair(c, "gibbons-hawking.chart");
    const DualityPair& d = lp.d;
    const BundleChart& m = d.m();
    const BundleChart& dual = d.dual();
    const std::vector<Point> pts = c.points(m);
    const Scalar& v = lp.file.scalar("V");
    const Form& b1 = lp.file.form("b1");
    pair_checks(c, d, anchor);

    Scalar lap = v.diff("x").diff("x") + v.diff("y").diff("y") + v.diff("z").diff("z");
    c.check("V harmonic", anchor, relative_residual(Scalar(0), lap, pts), 1e-8);
    Form star_dv = Form::monomial(m.frame(), CScalar(v.diff("x")), {"dy", "dz"}) +
                   Form::monomial(m.frame(), CScalar(v.diff("y")), {"dz", "dx"}) +
                   Form::monomial(m.frame(), CScalar(v.diff("z")), {"dx", "dy"});
    c.check("d b1 = *dV", anchor, residual(exterior_derivative(b1, m), star_dv, pts), 1e-8);

    const Form b = wedge(b1, m.gen("th"));
    const CScalar i = CScalar::i();
    PureSpinor rho1 = PureSpinor::from_data(b, Form::monomial(m.frame(), CScalar(v), {"dy", "dz"}),
                                            m.gen("th") + i * m.gen("dx"));
    PureSpinor rho2 = PureSpinor::from_data(b, Form::monomial(m.frame(), CScalar(v), {"th", "dx"}),
                                            m.gen("dy") + i * m.gen("dz"));
    const std::pair<const PureSpinor*, int> cases[] = {{&rho1, 0}, {&rho2, 2}};
    int index = 1;
    for (const auto& [rho, expected_type] : cases) {
        const std::string tag = "rho" + std::to_string(index++);
        Form rd = tau(rho->rho, d);
        c.check(tag + " closed", anchor, closedness(rho->rho, m, pts), 1e-8);
        c.check("tau(" + tag + ") closed", anchor, closedness(rd, dual, pts), 1e-8);
        int bad = 0;
        for (const auto& p : pts)
            if (spinor_type(rho->rho, p) != 1 || dual_type(*rho, d, p).type != expected_type ||
                spinor_type(rd, p) != expected_type)
                ++bad;
        c.check_true(tag + " has type 1 and dual type " + std::to_string(expected_type), anchor, bad == 0,
                     std::to_string(bad) + " disagree");
    }
    double norm = 0.0;
    for (const auto& p : pts) {
        const std::complex<double> n1 = mukai_norm(rho1.rho, p);
        norm = std::max(norm, std::abs(n1 - mukai_norm(rho2.rho, p)) / std::abs(n1));
    }
    c.check("(rho1, conj rho1) = (rho2, conj rho2)", anchor, norm, 1e-9);

    c.guard("dual metric", anchor, [&] {
        const std::size_t n = m.dim();
        ScalarMatrix g(n, n);
        for (std::size_t a = 0; a < n; ++a) g(a, a) = v;
        GeneralizedMetric gm{m.frame(), g, b};

        const CoframePtr& df = dual.frame();
        ScalarMatrix ge(n, n);
        const std::size_t t = df->require("th~");
        const Scalar inv = Scalar(1) / v;
        ge(t, t) = inv;
        const std::string base[] = {"dx", "dy", "dz"};
        for (const auto& a : base) {
            const std::size_t ia = df->require(a);
            ge(ia, t) = ge(t, ia) = -(component(b1, a) * inv);
            for (const auto& e : base) {
                const std::size_t ie = df->require(e);
                ge(ia, ie) = component(b1, a) * component(b1, e) * inv + (a == e ? v : Scalar(0));
            }
        }
        GeneralizedMetric expected{df, ge, Form(df)};
        c.check("Buscher dual is V flat + (th~ - b1)^2 / V with b~ = 0", anchor,
                metric_residual(buscher(gm, d), expected, pts), 1e-9);
        c.check("transported metric agrees", anchor, metric_residual(transport_metric(gm, d), expected, pts), 1e-9);
    });
    reduction_checks(c, d, pts, "Gibbons-Hawking", anchor);
}

}  // namespace tdual::tools
