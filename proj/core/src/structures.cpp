#include "tdual/structures.hpp"

namespace tdual {

PureSpinor PureSpinor::from_data(const Form& b, const Form& omega, const Form& big_omega) {
    Form exponent = b + CScalar::i() * omega;
    PureSpinor s(wedge(exp_form(exponent), big_omega));
    s.hint = SpinorData{b, omega, big_omega};
    return s;
}

Eigen::MatrixXcd annihilator_of(std::size_t n, const Eigen::VectorXcd& rho) {
    if (rho.cwiseAbs().maxCoeff() == 0.0) throw StructureError("spinor vanishes at the point");
    return nullspace(PointFrame(n).action_on(rho));
}

Eigen::MatrixXcd annihilator(const Form& rho, const Point& p) {
    return annihilator_of(rho.frame()->dim(), rho.eval(p));
}

int spinor_type_of(const Eigen::VectorXcd& rho, double rel_tol) {
    double scale = rho.cwiseAbs().maxCoeff();
    if (scale == 0.0) throw StructureError("spinor vanishes at the point");
    int best = -1;
    for (Eigen::Index m = 0; m < rho.size(); ++m) {
        if (std::abs(rho[m]) <= rel_tol * scale) continue;
        int d = popcount(Mask(m));
        if (best < 0 || d < best) best = d;
    }
    return best;
}

int spinor_type(const Form& rho, const Point& p) { return spinor_type_of(rho.eval(p)); }

std::complex<double> mukai_norm(const Form& rho, const Point& p) {
    Form top = mukai(rho, rho.conj());
    return top.coeff(rho.frame()->full_mask()).eval(p);
}

bool is_decomposable(std::size_t n, const Eigen::VectorXcd& alpha, int k) {
    Eigen::MatrixXcd w(alpha.size(), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) w.col(static_cast<Eigen::Index>(j)) = pointwise::apply_wedge(j, alpha);
    return static_cast<int>(static_cast<Eigen::Index>(n) - rank(w)) == k;
}

IntegrabilityReport check_integrable(const Form& rho, const Structure& st, const Form& h,
                                     const std::vector<Point>& pts) {
    const std::size_t n = rho.frame()->dim();
    Form drho = st.d(rho) + wedge(h, rho);
    PointFrame pf(n);
    IntegrabilityReport out;
    for (const auto& p : pts) {
        Eigen::VectorXcd r = rho.eval(p);
        Eigen::VectorXcd rhs = drho.eval(p);
        Eigen::MatrixXcd a = pf.action_on(r);
        Eigen::VectorXcd v = a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
        double res = rhs.size() ? (a * v - rhs).cwiseAbs().maxCoeff() : 0.0;
        out.residual = std::max(out.residual, res);
        out.witness.push_back(std::move(v));
    }
    return out;
}

IntegrabilityReport check_integrable(const PureSpinor& rho, const BundleChart& ch, const std::vector<Point>& pts) {
    return check_integrable(rho.rho, ch.structure(), ch.flux(), pts);
}

Eigen::MatrixXd gcs_from_annihilator(const Eigen::MatrixXcd& l) {
    const Eigen::Index dim = l.rows();
    if (2 * l.cols() != dim) throw StructureError("annihilator is not maximal isotropic");
    Eigen::MatrixXcd s(dim, dim);
    s << l, l.conjugate();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(s);
    lu.setThreshold(kRankTol);
    if (lu.rank() < dim) throw StructureError("L meets its conjugate");
    Eigen::VectorXcd d(dim);
    d.head(l.cols()).setConstant(std::complex<double>(0, 1));
    d.tail(l.cols()).setConstant(std::complex<double>(0, -1));
    Eigen::MatrixXcd j = s * d.asDiagonal() * lu.inverse();
    return j.real();
}

Eigen::MatrixXd gcs_endomorphism(const Form& rho, const Point& p) {
    return gcs_from_annihilator(annihilator(rho, p));
}

// ---------------------------------------------------------------- metrics

Eigen::MatrixXd GeneralizedMetric::g_at(const Point& p) const {
    const auto n = static_cast<Eigen::Index>(g.rows());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = g(i, j).eval(p);
    return m;
}

Eigen::MatrixXd GeneralizedMetric::b_at(const Point& p) const {
    const auto n = static_cast<Eigen::Index>(frame->dim());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [mask, f] : b.terms()) {
        if (popcount(mask) != 2) throw std::invalid_argument("b must be a 2-form");
        int i = __builtin_ctz(mask);
        int j = 31 - __builtin_clz(mask);
        double v = f.re.eval(p);
        m(i, j) = v;
        m(j, i) = -v;
    }
    return m;
}

Form two_form_from_matrix(const CoframePtr& frame, const ScalarMatrix& m) {
    Form out(frame);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            out += Form::from_mask(frame, (Mask(1) << i) | (Mask(1) << j), CScalar(m(i, j)));
    return out;
}

ScalarMatrix matrix_from_two_form(const Form& b) {
    const std::size_t n = b.frame()->dim();
    ScalarMatrix m(n, n);
    for (const auto& [mask, f] : b.terms()) {
        if (popcount(mask) != 2) throw std::invalid_argument("expected a 2-form");
        if (!f.is_real()) throw std::invalid_argument("expected a real 2-form");
        int i = __builtin_ctz(mask);
        int j = 31 - __builtin_clz(mask);
        m(i, j) = f.re;
        m(j, i) = -f.re;
    }
    return m;
}

Eigen::MatrixXd metric_endomorphism(const Eigen::MatrixXd& g, const Eigen::MatrixXd& b) {
    const Eigen::Index n = g.rows();
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success) throw StructureError("metric is not positive definite");
    Eigen::MatrixXd gi = llt.solve(Eigen::MatrixXd::Identity(n, n));
    Eigen::MatrixXd beta = b.transpose();
    Eigen::MatrixXd out(2 * n, 2 * n);
    out << -gi * beta, gi, g - beta * gi * beta, beta * gi;
    return out;
}

Eigen::MatrixXd metric_endomorphism(const GeneralizedMetric& m, const Point& p) {
    return metric_endomorphism(m.g_at(p), m.b_at(p));
}

Eigen::MatrixXd c_plus_minus(const Eigen::MatrixXd& g, const Eigen::MatrixXd& b, int sign) {
    const Eigen::Index n = g.rows();
    Eigen::MatrixXd out(2 * n, n);
    out << Eigen::MatrixXd::Identity(n, n), b.transpose() + double(sign) * g.transpose();
    return out;
}

GB gb_from_Cplus(const Eigen::MatrixXd& basis) {
    const Eigen::Index n = basis.cols();
    if (basis.rows() != 2 * n) throw std::invalid_argument("C+ basis must be 2N x N");
    Eigen::MatrixXd top = basis.topRows(n);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(top);
    if (!lu.isInvertible()) throw StructureError("subspace is not a graph over T");
    Eigen::MatrixXd a = basis.bottomRows(n) * lu.inverse();
    Eigen::MatrixXd bil = a.transpose();
    return {0.5 * (bil + bil.transpose()), 0.5 * (bil - bil.transpose())};
}

// ---------------------------------------------------------------- U^k

std::vector<Eigen::MatrixXcd> uk_spaces_of(std::size_t n, const Eigen::VectorXcd& rho) {
    Eigen::MatrixXcd l = annihilator_of(n, rho);
    if (static_cast<std::size_t>(l.cols()) != n) throw StructureError("annihilator is not maximal");
    Eigen::MatrixXcd lbar = l.conjugate();
    std::vector<std::vector<Eigen::VectorXcd>> by_degree(n + 1);
    // Enumerate subsets of L̄-basis indices; apply the largest index first.
    for (Mask s = 0; s < (Mask(1) << n); ++s) {
        Eigen::VectorXcd v = rho;
        for (int i = static_cast<int>(n) - 1; i >= 0; --i)
            if (s & (Mask(1) << i)) v = pointwise::apply_clifford(n, lbar.col(i), v);
        by_degree[popcount(s)].push_back(std::move(v));
    }
    std::vector<Eigen::MatrixXcd> out;
    for (auto& vs : by_degree) {
        Eigen::MatrixXcd m(rho.size(), static_cast<Eigen::Index>(vs.size()));
        for (std::size_t j = 0; j < vs.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = vs[j];
        out.push_back(column_space(m));
    }
    return out;
}

std::vector<Eigen::MatrixXcd> uk_spaces(const Form& rho, const Point& p) {
    return uk_spaces_of(rho.frame()->dim(), rho.eval(p));
}

}  // namespace tdual
