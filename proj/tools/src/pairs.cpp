#include "tdual/tools/pairs.hpp"

namespace tdual::tools {

DualityPair dual_pair(const BundleChart& ch) { return DualityPair(build_dual_chart(ch).corr); }

BundleChart flat_chart(const std::string& name,
                       const std::vector<std::pair<std::string, std::pair<double, double>>>& base,
                       const std::vector<std::string>& fibers) {
    Domain dom;
    std::vector<std::string> vars;
    for (const auto& [v, box] : base) {
        dom.add(v, box.first, box.second);
        vars.push_back(v);
    }
    return {name, dom, vars, fibers};
}

MixedPair mixed_pair(RandomData& rd, Rational s) {
    BundleChart m = flat_chart("mixed", {{"x", {-1, 1}}, {"y", {-1, 1}}, {"z", {-1, 1}}}, {"t1", "t2"});
    m.set_curvature(0, rd.closed_basic_two_form(m));
    m.set_curvature(1, rd.closed_basic_two_form(m));
    Form h = Form::monomial(m.frame(), CScalar(rd.scalar(m.base_vars())), {"dx", "dy", "dz"});
    h += wedge(rd.closed_basic_two_form(m), m.gen("t1"));
    h += wedge(rd.closed_basic_two_form(m), m.gen("t2"));
    m.set_flux(h);
    DualConstruction dc = build_dual_chart(m);

    Form t12 = wedge(m.gen("t1"), m.gen("t2"));
    m.set_flux(h + CScalar(Scalar(s)) * exterior_derivative(t12, m));
    const CoframePtr& cf = dc.corr.frame();
    Form f = dc.corr.F() + CScalar(Scalar(s)) * t12.transfer(cf) + rd.closed_basic_two_form(m).transfer(cf);
    CorrespondenceChart corr(m, dc.dual, f);
    return {m, DualityPair(corr)};
}

const char* to_string(FiberKind k) noexcept {
    switch (k) {
        case FiberKind::Complex: return "complex";
        case FiberKind::Real: return "real";
        case FiberKind::Symplectic: return "symplectic";
        case FiberKind::Lagrangian: return "Lagrangian";
        case FiberKind::Other: break;
    }
    return "other";
}

FiberKind classify_fibers(const Form& rho, const BundleChart& ch, const Point& p) {
    const std::size_t n = ch.dim();
    Eigen::VectorXcd v = rho.eval(p);
    const int type = spinor_type_of(v);
    std::vector<Eigen::Index> fib;
    for (const auto& f : ch.fibers()) fib.push_back(static_cast<Eigen::Index>(ch.frame()->require(f)));
    const auto nf = static_cast<Eigen::Index>(fib.size());

    if (type == 0) {
        Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(nf, nf);
        for (Eigen::Index a = 0; a < nf; ++a)
            for (Eigen::Index b = a + 1; b < nf; ++b) {
                Mask m = (Mask(1) << fib[a]) | (Mask(1) << fib[b]);
                double w = (v[m] / v[0]).imag();
                omega(a, b) = fib[a] < fib[b] ? w : -w;
                omega(b, a) = -omega(a, b);
            }
        Eigen::Index r = rank(omega.cast<std::complex<double>>());
        if (r == 0) return FiberKind::Lagrangian;
        if (r == nf) return FiberKind::Symplectic;
        return FiberKind::Other;
    }

    Eigen::VectorXcd low = Eigen::VectorXcd::Zero(v.size());
    for (Eigen::Index m = 0; m < v.size(); ++m)
        if (popcount(Mask(m)) == type) low[m] = v[m];
    Eigen::MatrixXcd w(v.size(), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) w.col(static_cast<Eigen::Index>(j)) = pointwise::apply_wedge(j, low);
    Eigen::MatrixXcd forms = nullspace(w);
    Eigen::MatrixXcd restricted(nf, forms.cols());
    for (Eigen::Index a = 0; a < nf; ++a) restricted.row(a) = forms.row(fib[a]);
    Eigen::Index r = rank(restricted);
    if (2 * r == nf) return FiberKind::Complex;
    if (r == nf) return FiberKind::Real;
    return FiberKind::Other;
}

BundleChart table_chart() { return flat_chart("torus-model", {{"x1", {-1, 1}}, {"x2", {-1, 1}}}, {"th1", "th2"}); }

std::vector<TableRow> table_rows(const BundleChart& ch) {
    const CoframePtr& f = ch.frame();
    const CScalar i = CScalar::i();
    Form zero(f);
    auto g = [&](const char* name) { return ch.gen(name); };
    std::vector<TableRow> rows;
    rows.push_back({"complex structure, complex fibers",
                    PureSpinor::from_data(zero, zero, wedge(g("dx1") + i * g("dx2"), g("th1") + i * g("th2"))), 2,
                    FiberKind::Complex, 2, FiberKind::Complex});
    rows.push_back({"complex structure, real fibers",
                    PureSpinor::from_data(zero, zero, wedge(g("dx1") + i * g("th1"), g("dx2") + i * g("th2"))), 2,
                    FiberKind::Real, 0, FiberKind::Lagrangian});
    rows.push_back({"symplectic structure, symplectic fibers",
                    PureSpinor::from_data(zero, wedge(g("dx1"), g("dx2")) + wedge(g("th1"), g("th2")), Form::one(f)),
                    0, FiberKind::Symplectic, 0, FiberKind::Symplectic});
    rows.push_back({"symplectic structure, Lagrangian fibers",
                    PureSpinor::from_data(zero, wedge(g("dx1"), g("th1")) + wedge(g("dx2"), g("th2")), Form::one(f)),
                    0, FiberKind::Lagrangian, 2, FiberKind::Real});
    return rows;
}

}  // namespace tdual::tools
