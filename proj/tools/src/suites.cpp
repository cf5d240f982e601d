#include <cmath>
#include <map>

#include "common.hpp"

namespace tdual::tools {

using namespace detail;

namespace {

BundleChart box3(const std::string& name, const std::string& fiber) {
    return flat_chart(name, {{"x", {-1, 1}}, {"y", {-1, 1}}, {"z", {-1, 1}}}, {fiber});
}

/// Circle bundle over a 3-box with random closed curvature and flux.
BundleChart random_circle_chart(RandomData& rd) {
    BundleChart ch = box3("circle", "th");
    ch.set_curvature(0, rd.closed_basic_two_form(ch));
    Form h = Form::monomial(ch.frame(), CScalar(rd.scalar(ch.base_vars())), {"dx", "dy", "dz"});
    h += wedge(rd.closed_basic_two_form(ch), ch.gen("th"));
    ch.set_flux(h);
    return ch;
}

std::string count_note(int bad, int total) {
    return std::to_string(bad) + " of " + std::to_string(total) + " disagree";
}

/// Named pair loaded from a scenario chart.
struct NamedPair {
    std::string label;
    LoadedPair pair;
};

std::vector<NamedPair> scenario_pairs(const Context& c) {
    const std::pair<const char*, const char*> files[] = {
        {"S3", "hopf.chart"},         {"SU(2)", "hopf-flux.chart"},        {"S3 x S1", "hopf4.chart"},
        {"S2", "s2.chart"},           {"Hopf surface", "hopf-surface.chart"}, {"Gibbons-Hawking", "gibbons-hawking.chart"},
    };
    std::vector<NamedPair> out;
    for (const auto& [label, file] : files) out.push_back({label, load_pair(c, file)});
    return out;
}

}  // namespace

void run_buscher_random(Context& c) {
    const std::string anchor = "Buscher rules";
    RandomData& rd = c.random();
    BundleChart ch = random_circle_chart(rd);
    DualityPair d = dual_pair(ch);
    const std::vector<Point> pts = head(c.points(ch), 8);
    const int instances = 16;

    double transport = 0.0;
    double involution = 0.0;
    double pure_g = 0.0;
    int numeric_bad = 0;
    int structural_bad = 0;
    for (int i = 0; i < instances; ++i) {
        GeneralizedMetric gm{ch.frame(), rd.metric(ch), rd.form_degree(ch, 2, false)};
        GeneralizedMetric moved = transport_metric(gm, d);
        GeneralizedMetric rules = buscher(gm, d);
        transport = std::max(transport, metric_residual(rules, moved, pts));
        ScalarMatrix bm = matrix_from_two_form(moved.b);
        ScalarMatrix br = matrix_from_two_form(rules.b);
        for (std::size_t a = 0; a < ch.dim(); ++a)
            for (std::size_t e = 0; e < ch.dim(); ++e) {
                if (!equal_numeric(rules.g(a, e), moved.g(a, e), ch.domain(), 16, 1e-9, c.options().seed)) ++numeric_bad;
                if (!equal_numeric(br(a, e), bm(a, e), ch.domain(), 16, 1e-9, c.options().seed)) ++numeric_bad;
            }
        CircleData cd = decompose_circle(gm, ch);
        CircleData dual_data = buscher(cd);
        if (!tdual::identical(dual_data.g0, Scalar(1) / cd.g0)) ++structural_bad;
        involution = std::max(involution, metric_residual(assemble_circle(buscher(dual_data), ch), gm, pts));

        GeneralizedMetric no_b{ch.frame(), gm.g, Form(ch.frame())};
        CircleData nb = decompose_circle(buscher(no_b, d), d.dual());
        for (std::size_t a = 0; a < nb.b2.rows(); ++a)
            for (std::size_t e = 0; e < nb.b2.cols(); ++e)
                pure_g = std::max(pure_g, relative_residual(Scalar(0), nb.b2(a, e), pts));
    }
    c.check("transport_metric equals the Buscher rules", anchor, transport, 1e-9,
            std::to_string(instances) + " random (g, b)");
    c.check_true("equal_numeric on every entry", anchor, numeric_bad == 0,
                 std::to_string(numeric_bad) + " entries differ");
    c.check_true("dual circle length is 1/g0", anchor, structural_bad == 0, count_note(structural_bad, instances));
    c.check("Buscher rules are an involution", anchor, involution, 1e-9);
    c.check("b = 0 gives b~ = -(g1/g0) ^ th~ only", anchor, pure_g, 1e-12);

    c.guard("bi-Hermitian transport", anchor, [&] {
        BundleChart flat = box3("bihermitian", "th");
        DualityPair fd = dual_pair(flat);
        const std::vector<Point> bp = head(c.points(flat), 4);
        const std::size_t t = flat.frame()->require("th");
        double square = 0.0;
        double orthogonal = 0.0;
        int plus_bad = 0;
        int minus_bad = 0;
        int total = 0;
        for (int i = 0; i < 8; ++i) {
            ScalarMatrix g = rd.metric(flat);
            for (std::size_t a = 0; a < flat.dim(); ++a)
                if (a != t) g(a, t) = g(t, a) = Scalar(0);
            GeneralizedMetric gm{flat.frame(), g, rd.form_degree(flat, 2, false)};
            GeneralizedMetric dual_metric = buscher(gm, fd);
            for (const auto& p : bp) {
                const Eigen::MatrixXd gp = gm.g_at(p);
                const Eigen::MatrixXd gd = dual_metric.g_at(p);
                const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(gp.rows(), gp.cols());
                for (int side : {1, -1}) {
                    Eigen::MatrixXd i_m = random_compatible_complex(gp, rd.rng());
                    Eigen::MatrixXd i_d = transport_bihermitian(i_m, gm, fd, p, side);
                    square = std::max(square, (i_d * i_d + id).cwiseAbs().maxCoeff());
                    orthogonal = std::max(orthogonal, (i_d.transpose() * gd * i_d - gd).cwiseAbs().maxCoeff());
                    const bool same = complex_orientation(i_d) == complex_orientation(i_m);
                    if (side > 0 && !same) ++plus_bad;
                    if (side < 0 && same) ++minus_bad;
                }
                ++total;
            }
        }
        c.check("transported I~ squares to -1", anchor, square, 1e-9);
        c.check("transported I~ is g~-orthogonal", anchor, orthogonal, 1e-9);
        c.check_true("I+ keeps its orientation", anchor, plus_bad == 0, count_note(plus_bad, total));
        c.check_true("I- reverses its orientation", anchor, minus_bad == 0, count_note(minus_bad, total));
    });
}

void run_reduction_suite(Context& c) {
    const std::string anchor = "T-duality as reduction";
    RandomData& rd = c.random();

    for (const auto& np : scenario_pairs(c)) reduction_checks(c, np.pair.d, c.points(np.pair.d.m()), np.label, anchor);
    c.guard("mixed pair", anchor, [&] {
        MixedPair mp = mixed_pair(rd, Rational(1, 2));
        reduction_checks(c, mp.pair, c.points(mp.m), "mixed rank 2", anchor);
    });
    c.guard("scaled F", anchor, [&] {
        BundleChart t = table_chart();
        DualConstruction dc = build_dual_chart(t);
        DualityPair scaled(dc.corr.with_F(CScalar(Scalar(Rational(3, 2))) * dc.corr.F()));
        reduction_checks(c, scaled, c.points(t), "scaled F", anchor);
    });

    c.guard("pairing constancy", anchor, [&] {
        LoadedPair lp = load_pair(c, "hopf.chart");
        const CorrespondenceChart& corr = lp.d.corr();
        const std::vector<Point> pts = c.points(lp.d.m());
        std::vector<Section> psi = duality_lift(corr);
        PairingConstancy ok = check_pairing_constant(psi, pts);
        c.check_true("lifted generators have constant pairings", anchor, ok.constant, "variation " + fmt(ok.variation));
        const CoframePtr& cf = corr.frame();
        psi[0] = psi[0] + Section(FrameVector(cf), Form::monomial(cf, CScalar(sin(Scalar::variable("x"))), {"th~"}));
        PairingConstancy bad = check_pairing_constant(psi, pts);
        c.check_true("perturbed lift is detected", anchor, !bad.constant, "variation " + fmt(bad.variation));
    });

    c.guard("pointwise reduction", anchor, [&] {
        const int instances = 32;
        int flag_bad = 0;
        int shape_bad = 0;
        double defect = 0.0;
        for (int i = 0; i < instances; ++i) {
            const int n = rd.integer(3, 5);
            const int k = rd.integer(1, n - 1);
            const bool make_isotropic = i % 2 == 0;
            Eigen::MatrixXd x(n, k);
            for (int a = 0; a < n; ++a)
                for (int e = 0; e < k; ++e) x(a, e) = rd.uniform(-1, 1);
            Eigen::MatrixXd xi(n, k);
            if (make_isotropic) {
                Eigen::MatrixXd s(n, n);
                for (int a = 0; a < n; ++a)
                    for (int e = 0; e < n; ++e) s(a, e) = rd.uniform(-1, 1);
                xi = (s - s.transpose()).transpose() * x;
            } else {
                for (int a = 0; a < n; ++a)
                    for (int e = 0; e < k; ++e) xi(a, e) = rd.uniform(-1, 1);
            }
            Eigen::MatrixXd gens(2 * n, k);
            gens << x, xi;
            const Eigen::MatrixXd gram = 0.5 * (xi.transpose() * x + x.transpose() * xi);
            const bool isotropic = gram.cwiseAbs().maxCoeff() <= 1e-12;
            ReducedSpace r = reduce_pointwise(LiftedActionPoint(static_cast<std::size_t>(n), gens));
            if (r.exact != isotropic || isotropic != make_isotropic) ++flag_bad;
            if (isotropic) {
                defect = std::max(defect, r.well_defined_defect);
                if (r.quotient.cols() != 2 * (n - k) || r.signature.positive != n - k || r.signature.negative != n - k)
                    ++shape_bad;
            }
        }
        c.check_true("reduction exact iff the action is isotropic", anchor, flag_bad == 0,
                     count_note(flag_bad, instances));
        c.check_true("isotropic quotients are split of dimension 2(N - k)", anchor, shape_bad == 0,
                     count_note(shape_bad, instances / 2));
        c.check("quotient pairing well defined", anchor, defect, 1e-9);
    });

    c.guard("transversality", anchor, [&] {
        int bad = 0;
        int transversal = 0;
        const int instances = 32;
        BundleChart t = table_chart();
        DualConstruction dc = build_dual_chart(t);
        const CoframePtr& cf = dc.corr.frame();
        const std::vector<Point> pts = c.points(t);
        for (int i = 0; i < instances; ++i) {
            Eigen::Matrix2d block;
            block << rd.integer(-2, 2), rd.integer(-2, 2), rd.integer(-2, 2), rd.integer(-2, 2);
            if (i % 4 == 0) block.row(1) = 2 * block.row(0);
            Form f(cf);
            for (int a = 0; a < 2; ++a)
                for (int e = 0; e < 2; ++e) {
                    const std::string th = "th" + std::to_string(a + 1);
                    f += Form::monomial(cf, CScalar(Scalar(Rational(static_cast<std::int64_t>(block(a, e))))),
                                        {th, dual_fiber_name("th" + std::to_string(e + 1))});
                }
            f += rd.form_degree(t, 2, false).transfer(cf);
            f += wedge(Form::monomial(cf, CScalar(rd.scalar(t.base_vars())), {"dx1"}), Form::generator(cf, "th1~"));
            TransversalityReport r = check_transversal(dc.corr.with_F(f), pts[static_cast<std::size_t>(i) % pts.size()]);
            if (!r.agree() || r.block_nondegenerate != (std::abs(block.determinant()) > 0.5)) ++bad;
            if (r.transversal) ++transversal;
        }
        c.check_true("tau_F transversal iff the fiber block is nondegenerate", anchor, bad == 0,
                     count_note(bad, instances) + ", " + std::to_string(transversal) + " transversal");
    });

    c.guard("Fourier-Mukai criterion", anchor, [&] {
        BundleChart t = table_chart();
        DualityPair d = dual_pair(t);
        LoadedPair h4 = load_pair(c, "hopf4.chart");
        const DualityPair* pairs[] = {&d, &h4.d};
        int disagree = 0;
        int positive_bad = 0;
        int negative_bad = 0;
        const int instances = 32;
        for (int i = 0; i < instances; ++i) {
            const DualityPair& pd = *pairs[i % 2];
            const std::vector<Point> pts = c.points(pd.m());
            const Point& p = pts[static_cast<std::size_t>(i) % pts.size()];
            PureSpinor rho = rd.spinor(pd.m(), rd.integer(0, 2));
            while (std::abs(mukai_norm(rho.rho, p)) < 1e-3) rho = rd.spinor(pd.m(), rd.integer(0, 2));
            Form rho_dual = tau(rho.rho, pd);
            const bool positive = i % 4 < 2;
            if (!positive) {
                const CoframePtr& df = pd.dual().frame();
                const std::string fiber = dual_fiber_name(pd.m().fibers()[0]);
                const std::string base = "d" + pd.m().base_vars()[0];
                rho_dual = wedge(exp_form(Form::monomial(df, CScalar(1), {base, fiber})), rho_dual);
            }
            FourierMukaiReport r = check_fourier_mukai(rho.rho, rho_dual, pd, p);
            if (!r.agree()) ++disagree;
            if (positive && !r.invariant) ++positive_bad;
            if (!positive && r.invariant) ++negative_bad;
        }
        c.check_true("invariance and conjugation routes agree", anchor, disagree == 0, count_note(disagree, instances));
        c.check_true("tau-related structures pass", anchor, positive_bad == 0, count_note(positive_bad, instances / 2));
        c.check_true("B-shifted duals fail", anchor, negative_bad == 0, count_note(negative_bad, instances / 2));
    });
}

void run_clifford_axioms(Context& c) {
    const std::string anchor = "Clifford action";
    RandomData& rd = c.random();
    LoadedPair lp = load_pair(c, "hopf4.chart");
    const BundleChart& ch = lp.d.m();
    const std::vector<Point> pts = head(c.points(ch), 4);
    const int instances = 64;
    double square = 0.0;
    double anticommutator = 0.0;
    double mukai_b = 0.0;
    for (int i = 0; i < instances; ++i) {
        Section v = rd.section(ch, true);
        Section w = rd.section(ch, true);
        Form rho = rd.form(ch, true, 0.5);
        square = std::max(square, residual(clifford(v, clifford(v, rho)), pairing(v, v) * rho, pts));
        anticommutator = std::max(anticommutator, residual(clifford(v, clifford(w, rho)) + clifford(w, clifford(v, rho)),
                                                           CScalar(2) * pairing(v, w) * rho, pts));
        Form e_b = exp_form(rd.form_degree(ch, 2, false));
        Form sigma = rd.form(ch, true, 0.5);
        mukai_b = std::max(mukai_b, residual(mukai(wedge(e_b, rho), wedge(e_b, sigma)), mukai(rho, sigma), pts));
    }
    const std::string note = std::to_string(instances) + " random instances";
    c.check("v.v.rho = <v,v> rho", anchor, square, 1e-9, note);
    c.check("v.w + w.v = 2<v,w>", anchor, anticommutator, 1e-9, note);
    c.check("Mukai pairing invariant under e^B", anchor, mukai_b, 1e-9, note);
}

void run_intertwining(Context& c) {
    const std::string anchor = "tau intertwines d_H";
    RandomData& rd = c.random();
    for (const char* file : {"hopf.chart", "hopf-flux.chart", "hopf4.chart"}) {
        c.guard(file, anchor, [&] {
            LoadedPair lp = load_pair(c, file);
            IntertwiningResult r = intertwining(lp.d, rd, 32, head(c.points(lp.d.m()), 4));
            const std::string label = lp.d.m().name();
            c.check(label + ": d_H~ tau = tau d_H", anchor, r.intertwining, 1e-8, "32 random forms");
            c.check(label + ": tau round trip", anchor, r.roundtrip, 1e-9);
        });
    }
    for (Rational s : {Rational(1, 2), Rational(-1)}) {
        c.guard("mixed pair", anchor, [&] {
            MixedPair mp = mixed_pair(rd, s);
            const std::string label = "mixed rank 2, s = " + std::to_string(s.to_double());
            PairReport pr = validate_pair(mp.pair.corr(), c.sampling());
            c.check(label + ": dF = p*H - p~*H~", anchor, pr.dF, 1e-9);
            IntertwiningResult r = intertwining(mp.pair, rd, 32, head(c.points(mp.m), 4));
            c.check(label + ": d_H~ tau = tau d_H", anchor, r.intertwining, 1e-8, "32 random forms");
            c.check(label + ": tau round trip", anchor, r.roundtrip, 1e-9);
        });
    }
}

void run_courant_iso(Context& c) {
    const std::string anchor = "phi is a Courant isomorphism";
    RandomData& rd = c.random();
    auto run = [&](const std::string& label, const DualityPair& d, const std::vector<Point>& pts) {
        PhiResult r = phi_properties(d, rd, 32, pts);
        c.check(label + ": phi orthogonal", anchor, r.orthogonality, 1e-9, "32 random pairs");
        c.check(label + ": phi preserves brackets", anchor, r.bracket, 1e-8);
        c.check(label + ": tau(v.rho) = phi(v).tau(rho)", anchor, r.compatibility, 1e-8);
    };
    c.guard("Hopf", anchor, [&] {
        LoadedPair lp = load_pair(c, "hopf-flux.chart");
        run("SU(2)", lp.d, head(c.points(lp.d.m()), 3));
    });
    c.guard("mixed pair", anchor, [&] {
        MixedPair mp = mixed_pair(rd, Rational(1, 2));
        run("mixed rank 2", mp.pair, head(c.points(mp.m), 3));
    });
}

void run_circle_formula(Context& c) {
    const std::string anchor = "circle formula for phi";
    RandomData& rd = c.random();
    int bad = 0;
    int total = 0;
    for (const char* file : {"hopf.chart", "hopf-flux.chart", "hopf4.chart", "s2.chart", "gibbons-hawking.chart"}) {
        c.guard(file, anchor, [&] {
            LoadedPair lp = load_pair(c, file);
            const BundleChart& m = lp.d.m();
            const BundleChart& dual = lp.d.dual();
            const std::size_t n = m.dim();
            const std::size_t th = m.frame()->require(m.fibers()[0]);
            const std::size_t th_d = dual.frame()->require(dual.fibers()[0]);
            for (int i = 0; i < 16; ++i) {
                std::vector<CScalar> comps(2 * n);
                std::vector<CScalar> expected(2 * n);
                for (std::size_t a = 0; a < n; ++a) {
                    if (a == th) continue;
                    const std::string& name = (*m.frame())[a].name;
                    const std::size_t ad = dual.frame()->require(name);
                    comps[a] = expected[ad] = CScalar(rd.scalar(m.base_vars()));
                    comps[n + a] = expected[n + ad] = CScalar(rd.scalar(m.base_vars()));
                }
                const CScalar f(rd.scalar(m.base_vars()));
                const CScalar g(rd.scalar(m.base_vars()));
                comps[th] = f;
                comps[n + th] = g;
                expected[th_d] = g;
                expected[n + th_d] = f;
                Section image = phi(Section::from_components(m.frame(), comps), lp.d);
                if (!identical(image, Section::from_components(dual.frame(), expected))) ++bad;
                ++total;
            }
        });
    }
    c.check_true("phi(X + f d/dth + xi + g th) = X + g d/dth~ + xi + f th~", anchor, bad == 0,
                 count_note(bad, total) + " (structural)");
}

void run_type_change(Context& c) {
    const std::string anchor = "type change";
    RandomData& rd = c.random();
    auto random_suite = [&](const std::string& label, const DualityPair& d) {
        const std::vector<Point> pts = c.points(d.m());
        int bad = 0;
        std::map<int, int> by_type;
        const int instances = 32;
        for (int i = 0; i < instances; ++i) {
            PureSpinor rho = rd.spinor(d.m(), rd.integer(0, static_cast<int>(d.m().dim()) / 2));
            const Point& p = pts[static_cast<std::size_t>(i) % pts.size()];
            DualTypeResult r = dual_type(rho, d, p);
            ++by_type[r.type];
            if (r.type != spinor_type(tau(rho.rho, d), p)) ++bad;
        }
        std::string dist;
        for (const auto& [t, n] : by_type) dist += " type " + std::to_string(t) + ": " + std::to_string(n);
        c.check_true(label + ": predicted type equals type of tau(rho)", anchor, bad == 0,
                     count_note(bad, instances) + ";" + dist);
    };
    c.guard("S3 x S1", anchor, [&] {
        LoadedPair lp = load_pair(c, "hopf4.chart");
        random_suite("S3 x S1", lp.d);
        const BundleChart& m = lp.d.m();
        Form zero(m.frame());
        const Point p = c.points(m).front();
        PureSpinor basic = PureSpinor::from_data(zero, zero, lp.file.form("dzeta"));
        PureSpinor along = PureSpinor::from_data(zero, zero, lp.file.form("dw"));
        c.check_true("basic Omega raises the type by one", anchor,
                     dual_type(basic, lp.d, p).type == 2 && spinor_type(tau(basic.rho, lp.d), p) == 2);
        c.check_true("Omega with a fiber leg lowers the type by one", anchor,
                     dual_type(along, lp.d, p).type == 0 && spinor_type(tau(along.rho, lp.d), p) == 0);
    });
    c.guard("mixed pair", anchor, [&] {
        MixedPair mp = mixed_pair(rd, Rational(1, 2));
        random_suite("mixed rank 2", mp.pair);
    });
    c.guard("table", anchor, [&] {
        BundleChart t = table_chart();
        DualityPair d = dual_pair(t);
        Point p;
        p.set("x1", 0.3);
        p.set("x2", -0.2);
        for (const TableRow& row : table_rows(t)) {
            Form rho_dual = tau(row.rho.rho, d);
            const int tm = spinor_type(row.rho.rho, p);
            const FiberKind fm = classify_fibers(row.rho.rho, t, p);
            const int td = spinor_type(rho_dual, p);
            const int predicted = dual_type(row.rho, d, p).type;
            const FiberKind fd = classify_fibers(rho_dual, d.dual(), p);
            const bool ok = tm == row.type_m && fm == row.fibers_m && td == row.type_dual && predicted == td &&
                            fd == row.fibers_dual;
            c.check_true("table: " + row.label, anchor, ok,
                         "M type " + std::to_string(tm) + " " + to_string(fm) + ", dual type " + std::to_string(td) +
                             " " + to_string(fd));
        }
    });
}

void run_integrability(Context& c) {
    const std::string anchor = "integrability preserved";
    RandomData& rd = c.random();
    auto both_ways = [&](const std::string& label, const PureSpinor& rho, const DualityPair& d, bool integrable) {
        const std::vector<Point> pts = c.points(d.m());
        const double on_m = check_integrable(rho, d.m(), pts).residual;
        const double on_dual = check_integrable(PureSpinor(tau(rho.rho, d)), d.dual(), pts).residual;
        if (integrable) {
            c.check(label + ": integrable on M", anchor, on_m, 1e-8);
            c.check(label + ": dual integrable", anchor, on_dual, 1e-8);
        } else {
            c.check_true(label + ": not integrable on M", anchor, on_m > 1e-4, "residual " + fmt(on_m));
            c.check_true(label + ": dual not integrable", anchor, on_dual > 1e-4, "residual " + fmt(on_dual));
        }
    };

    c.guard("S3 x S1", anchor, [&] {
        LoadedPair lp = load_pair(c, "hopf4.chart");
        const BundleChart& m = lp.d.m();
        Form zero(m.frame());
        const Form omega = wedge(lp.file.form("dw"), lp.file.form("dzeta"));
        both_ways("Hopf Omega", PureSpinor::from_data(zero, zero, omega), lp.d, true);
        both_ways("Hopf e^B Omega, dB = 0", PureSpinor::from_data(rd.closed_basic_two_form(m), zero, omega), lp.d, true);

        BundleChart with_flux = m;
        with_flux.set_flux(wedge(m.curvature()[0], m.gen("th")));
        DualityPair fd = dual_pair(with_flux);
        Form zf(with_flux.frame());
        both_ways("Hopf Omega, H = sigma ^ th", PureSpinor::from_data(zf, zf, omega.transfer(with_flux.frame())), fd,
                  true);
    });
    c.guard("table", anchor, [&] {
        BundleChart t = table_chart();
        DualityPair d = dual_pair(t);
        for (const TableRow& row : table_rows(t)) both_ways(row.label, row.rho, d, true);
    });
    c.guard("Gibbons-Hawking", anchor, [&] {
        LoadedPair lp = load_pair(c, "gibbons-hawking.chart");
        const BundleChart& m = lp.d.m();
        const Form b = wedge(lp.file.form("b1"), m.gen("th"));
        PureSpinor rho = PureSpinor::from_data(
            b, Form::monomial(m.frame(), CScalar(lp.file.scalar("V")), {"dy", "dz"}), m.gen("th") + CScalar::i() * m.gen("dx"));
        both_ways("Gibbons-Hawking rho1", rho, lp.d, true);
    });

    c.guard("non-integrable", anchor, [&] {
        BundleChart ch = box3("flat", "w");
        DualityPair d = dual_pair(ch);
        const CoframePtr& f = ch.frame();
        const Scalar x = Scalar::variable("x");
        const Scalar y = Scalar::variable("y");
        const Scalar z = Scalar::variable("z");
        const CScalar i = CScalar::i();
        Form zero(f);
        Form one = Form::one(f);
        Form w1 = Form::monomial(f, CScalar(Scalar(1) + z * z), {"dx", "dy"}) + Form::monomial(f, 1, {"dz", "w"});
        Form w2 = Form::monomial(f, 1, {"dx", "w"}) + Form::monomial(f, CScalar(Scalar(1) + x * y), {"dy", "dz"});
        Form bad = wedge(ch.gen("dx") + i * ch.gen("dy"),
                         ch.gen("dz") + Form::monomial(f, CScalar(Scalar(0), Scalar(1) + y * y), {"w"}));
        both_ways("e^(i omega), d omega != 0", PureSpinor::from_data(zero, w1, one), d, false);
        both_ways("e^(i omega'), d omega' != 0", PureSpinor::from_data(zero, w2, one), d, false);
        both_ways("non-involutive Omega", PureSpinor::from_data(zero, zero, bad), d, false);
        both_ways("B-transform of non-involutive Omega", PureSpinor::from_data(rd.closed_basic_two_form(ch), zero, bad),
                  d, false);
    });
}

void run_uk_transport(Context& c) {
    const std::string anchor = "U^k transport";
    RandomData& rd = c.random();
    auto run = [&](const std::string& label, const Form& rho, const DualityPair& d) {
        double worst = 0.0;
        for (const auto& p : c.points(d.m())) worst = std::max(worst, transport_uk(rho, d, p));
        c.check(label + ": tau(U^k) = U^k", anchor, worst, 1e-8);
    };
    c.guard("S2", anchor, [&] {
        LoadedPair lp = load_pair(c, "s2.chart");
        run("S2 e^(B + i omega)",
            PureSpinor::from_data(lp.file.form("B"), lp.file.form("omega"), Form::one(lp.d.m().frame())).rho, lp.d);
    });
    c.guard("S3 x S1", anchor, [&] {
        LoadedPair lp = load_pair(c, "hopf4.chart");
        const Form omega = wedge(lp.file.form("dw"), lp.file.form("dzeta"));
        run("Hopf Omega", omega, lp.d);
        run("Hopf e^B Omega", wedge(exp_form(rd.form_degree(lp.d.m(), 2, false)), omega), lp.d);
    });
    c.guard("table", anchor, [&] {
        BundleChart t = table_chart();
        DualityPair d = dual_pair(t);
        for (const TableRow& row : table_rows(t)) run(row.label, row.rho.rho, d);
    });
}

}  // namespace tdual::tools
