#include "common.hpp"

#include <cstdio>

namespace tdual::tools::detail {

bool identical(const Form& a, const Form& b) {
    if (!(*a.frame() == *b.frame()) || a.terms().size() != b.terms().size()) return false;
    auto it = b.terms().begin();
    for (const auto& [m, f] : a.terms()) {
        if (it->first != m || !tdual::identical(f, it->second)) return false;
        ++it;
    }
    return true;
}

bool identical(const Section& a, const Section& b) {
    if (!(*a.frame() == *b.frame())) return false;
    for (std::size_t i = 0; i < a.frame()->dim(); ++i)
        if (!tdual::identical(a.x[i], b.x[i])) return false;
    return identical(a.xi, b.xi);
}

Form rename_to_dual(const Form& a, const BundleChart& dual) {
    Form out(dual.frame());
    const Coframe& src = *a.frame();
    for (const auto& [m, f] : a.terms()) {
        std::vector<std::string> names;
        for (Mask r = m; r; r &= r - 1) {
            const Generator& g = src[static_cast<std::size_t>(__builtin_ctz(r))];
            names.push_back(g.tag == GenTag::Fiber ? dual_fiber_name(g.name) : g.name);
        }
        out += Form::monomial(dual.frame(), f, names);
    }
    return out;
}

std::vector<Point> head(const std::vector<Point>& pts, std::size_t n) {
    return {pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(std::min(n, pts.size()))};
}

double relative_residual(const Scalar& a, const Scalar& b, const std::vector<Point>& pts) {
    double worst = 0.0;
    for (const auto& p : pts) {
        const double av = a.eval(p);
        worst = std::max(worst, std::abs(av - b.eval(p)) / (1.0 + std::abs(av)));
    }
    return worst;
}

double metric_residual(const GeneralizedMetric& a, const GeneralizedMetric& b, const std::vector<Point>& pts) {
    require_same_frame(a.frame, b.frame);
    ScalarMatrix ba = matrix_from_two_form(a.b);
    ScalarMatrix bb = matrix_from_two_form(b.b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.g.rows(); ++i)
        for (std::size_t j = 0; j < a.g.cols(); ++j) {
            worst = std::max(worst, relative_residual(a.g(i, j), b.g(i, j), pts));
            worst = std::max(worst, relative_residual(ba(i, j), bb(i, j), pts));
        }
    return worst;
}

GeneralizedMetric circle_metric(const BundleChart& ch, const Scalar& g0, const Scalar& gb) {
    const std::size_t n = ch.dim();
    ScalarMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) = (*ch.frame())[i].tag == GenTag::Fiber ? g0 : gb;
    return {ch.frame(), g, Form(ch.frame())};
}

LoadedPair load_pair(const Context& c, const std::string& file) {
    ChartFile f = c.load(file);
    DualConstruction dc = build_dual_chart(f.chart);
    DualityPair d(dc.corr);
    return {std::move(f), std::move(dc), std::move(d)};
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const int m = 2 * n;
    const double h = (b - a) / m;
    double s = f(a) + f(b);
    for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double beta = k / std::sqrt(4.0 * k * k - 1.0);
        jac(k, k - 1) = beta;
        jac(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    double s = 0.0;
    for (int i = 0; i < order; ++i) {
        const double x = es.eigenvalues()[i];
        const double w = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
        s += w * f(0.5 * (b - a) * x + 0.5 * (b + a));
    }
    return 0.5 * (b - a) * s;
}

double closedness(const Form& rho, const BundleChart& ch, const std::vector<Point>& pts) {
    return max_abs(d_H(rho, ch), pts);
}

Eigen::MatrixXd random_compatible_complex(const Eigen::MatrixXd& g, std::mt19937_64& rng) {
    const Eigen::Index n = g.rows();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    Eigen::MatrixXd e = es.operatorInverseSqrt();
    std::normal_distribution<double> nd;
    Eigen::MatrixXd r(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) r(i, j) = nd(rng);
    Eigen::MatrixXd o = Eigen::HouseholderQR<Eigen::MatrixXd>(r).householderQ();
    Eigen::MatrixXd j0 = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; i += 2) {
        j0(i + 1, i) = 1.0;
        j0(i, i + 1) = -1.0;
    }
    return e * o * j0 * o.transpose() * e.inverse();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

double scalar_residual(const CScalar& a, const CScalar& b, const std::vector<Point>& pts) {
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, std::abs(a.eval(p) - b.eval(p)));
    return worst;
}

Scalar component(const Form& one_form, const std::string& name) {
    return one_form.coeff(Mask(1) << one_form.frame()->require(name)).re;
}

IntertwiningResult intertwining(const DualityPair& d, RandomData& rd, int count, const std::vector<Point>& pts) {
    IntertwiningResult r;
    const CScalar sign(tau_roundtrip_sign(d.rank()));
    for (int i = 0; i < count; ++i) {
        Form rho = rd.form(d.m(), true, 0.4);
        Form t = tau(rho, d);
        r.intertwining = std::max(r.intertwining, residual(d_H(t, d.dual()), tau(d_H(rho, d.m()), d), pts));
        r.roundtrip = std::max(r.roundtrip, residual(tau_reverse(t, d), sign * rho, pts));
    }
    return r;
}

PhiResult phi_properties(const DualityPair& d, RandomData& rd, int count, const std::vector<Point>& pts) {
    PhiResult r;
    for (int i = 0; i < count; ++i) {
        Section v = rd.section(d.m());
        Section w = rd.section(d.m());
        Section pv = phi(v, d);
        Section pw = phi(w, d);
        r.orthogonality = std::max(r.orthogonality, scalar_residual(pairing(pv, pw), pairing(v, w), pts));
        r.bracket = std::max(r.bracket, residual(courant_bracket(pv, pw, d.dual()),
                                                 phi(courant_bracket(v, w, d.m()), d), pts));
        Form rho = rd.form(d.m(), true, 0.4);
        r.compatibility = std::max(r.compatibility, transport_section_compat(v, rho, d, pts));
    }
    return r;
}

void reduction_checks(Context& c, const DualityPair& d, const std::vector<Point>& pts, const std::string& label,
                      const std::string& anchor) {
    c.guard(label + ": reduction", anchor, [&] {
        double worst = 0.0;
        bool split = true;
        for (const auto& p : pts) {
            ReductionReport r = duality_via_reduction(d, p);
            worst = std::max(worst, r.max_defect());
            split = split && r.split();
        }
        c.check(label + ": reduction reproduces phi", anchor, worst, 1e-9,
                std::to_string(pts.size()) + " points");
        c.check_true(label + ": doubled pairing is split", anchor, split);
    });
}

}  // namespace tdual::tools::detail
