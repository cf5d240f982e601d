#include "tdual/pointwise.hpp"

namespace tdual {

namespace {

Eigen::Index numeric_rank(const Eigen::VectorXd& sv, double rel_tol) {
    if (sv.size() == 0 || sv[0] == 0.0) return 0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > rel_tol * sv[0]) ++r;
    return r;
}

}  // namespace

Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& a, double rel_tol) {
    if (a.rows() == 0) return Eigen::MatrixXcd::Identity(a.cols(), a.cols());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    Eigen::Index r = numeric_rank(svd.singularValues(), rel_tol);
    return svd.matrixV().rightCols(a.cols() - r);
}

Eigen::MatrixXcd column_space(const Eigen::MatrixXcd& a, double rel_tol) {
    if (a.cols() == 0) return Eigen::MatrixXcd(a.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU);
    Eigen::Index r = numeric_rank(svd.singularValues(), rel_tol);
    return svd.matrixU().leftCols(r);
}

Eigen::Index rank(const Eigen::MatrixXcd& a, double rel_tol) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    return numeric_rank(svd.singularValues(), rel_tol);
}

double membership_defect(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& basis) {
    Eigen::MatrixXcd q = column_space(basis);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        double nrm = a.col(j).norm();
        if (nrm == 0.0) continue;
        Eigen::VectorXcd r = a.col(j) - q * (q.adjoint() * a.col(j));
        worst = std::max(worst, r.norm() / nrm);
    }
    return worst;
}

Signature signature(const Eigen::MatrixXcd& hermitian, double rel_tol) {
    Signature s;
    if (hermitian.rows() == 0) return s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian);
    const Eigen::VectorXd& ev = es.eigenvalues();
    double scale = ev.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev[i]) <= rel_tol * std::max(scale, 1.0)) {
            ++s.zero;
        } else if (ev[i] > 0) {
            ++s.positive;
        } else {
            ++s.negative;
        }
    }
    return s;
}

Eigen::MatrixXd pairing_matrix(std::size_t n) {
    const auto N = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * N, 2 * N);
    g.topRightCorner(N, N) = 0.5 * Eigen::MatrixXd::Identity(N, N);
    g.bottomLeftCorner(N, N) = 0.5 * Eigen::MatrixXd::Identity(N, N);
    return g;
}

PointFrame::PointFrame(std::size_t dim) : n(dim), pairing(pairing_matrix(dim)) {
    flux = Eigen::VectorXcd::Zero(Eigen::Index(1) << dim);
}

PointFrame::PointFrame(std::size_t dim, const Form& h, const Point& p) : PointFrame(dim) {
    if (h.frame()) flux = h.eval(p);
}

Eigen::MatrixXcd PointFrame::action_on(const Eigen::VectorXcd& rho) const {
    const auto N = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd a(rho.size(), 2 * N);
    for (std::size_t k = 0; k < n; ++k) {
        a.col(static_cast<Eigen::Index>(k)) = pointwise::apply_contract(k, rho);
        a.col(N + static_cast<Eigen::Index>(k)) = pointwise::apply_wedge(k, rho);
    }
    return a;
}

}  // namespace tdual
