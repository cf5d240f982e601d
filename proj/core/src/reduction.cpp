#include "tdual/reduction.hpp"

namespace tdual {

namespace {

Eigen::MatrixXd real_nullspace(const Eigen::MatrixXd& a) {
    if (a.rows() == 0) return Eigen::MatrixXd::Identity(a.cols(), a.cols());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > kRankTol * std::max(sv[0], 1.0)) ++r;
    return svd.matrixV().rightCols(a.cols() - r);
}

Eigen::MatrixXd real_column_space(const Eigen::MatrixXd& a) {
    if (a.cols() == 0) return Eigen::MatrixXd(a.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > kRankTol * std::max(sv[0], 1.0)) ++r;
    return svd.matrixU().leftCols(r);
}

Eigen::Index real_rank(const Eigen::MatrixXd& a) { return real_column_space(a).cols(); }

double max_abs_or_zero(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Eigen::MatrixXd eval_matrix(const ScalarMatrix& m, const Point& p) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).eval(p);
    return out;
}

/// Columns (Y; η) of 𝒦^⊥ mapped to a chart: keep rows named in `target`, report leftover covector parts.
Eigen::MatrixXd route(const Eigen::MatrixXd& w, const CoframePtr& corr, const CoframePtr& target, double& leftover) {
    const auto nc = static_cast<Eigen::Index>(corr->dim());
    const auto nt = static_cast<Eigen::Index>(target->dim());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * nt, w.cols());
    for (Eigen::Index i = 0; i < nc; ++i) {
        int j = target->index_of((*corr)[static_cast<std::size_t>(i)].name);
        if (j < 0) {
            leftover = std::max(leftover, w.row(nc + i).cwiseAbs().maxCoeff());
            continue;
        }
        out.row(j) = w.row(i);
        out.row(nt + j) = w.row(nc + i);
    }
    return out;
}

}  // namespace

LiftedActionPoint::LiftedActionPoint(std::size_t dim, Eigen::MatrixXd gens) : n(dim), generators(std::move(gens)) {
    if (generators.rows() != static_cast<Eigen::Index>(2 * n))
        throw std::invalid_argument("generators must live in the 2N-dim pairing space");
    degenerate = real_rank(generators) < generators.cols();
}

ReducedSpace reduce_pointwise(const LiftedActionPoint& a) {
    const Eigen::MatrixXd p = pairing_matrix(a.n);
    const Eigen::MatrixXd k = real_column_space(a.generators);
    ReducedSpace r;
    Eigen::MatrixXd kk = k.transpose() * p * k;
    r.exact = max_abs_or_zero(kk) <= kRankTol;
    r.k_perp = real_nullspace(k.transpose() * p);
    r.k_cap = real_column_space(k * real_nullspace(kk));

    Eigen::MatrixXd proj = r.k_perp;
    if (r.k_cap.cols() > 0) proj -= r.k_cap * (r.k_cap.transpose() * r.k_perp);
    r.quotient = real_column_space(proj);
    r.pairing = r.quotient.transpose() * p * r.quotient;
    r.signature = signature(r.pairing.cast<std::complex<double>>());
    r.well_defined_defect = max_abs_or_zero(r.k_cap.transpose() * p * r.k_perp);
    return r;
}

std::vector<Section> duality_lift(const CorrespondenceChart& corr) {
    const CoframePtr& fc = corr.frame();
    std::vector<Section> out;
    for (const auto& th : corr.m().fibers()) {
        FrameVector x = FrameVector::basis(fc, th);
        out.emplace_back(x, contract(x, corr.F()));
    }
    for (const auto& th : corr.dual().fibers()) out.emplace_back(FrameVector::basis(fc, th), Form(fc));
    return out;
}

PairingConstancy check_pairing_constant(const std::vector<Section>& psi, const std::vector<Point>& pts, double tol) {
    PairingConstancy out;
    if (pts.empty()) {
        out.constant = true;
        return out;
    }
    for (std::size_t i = 0; i < psi.size(); ++i) {
        for (std::size_t j = i; j < psi.size(); ++j) {
            CScalar v = pairing(psi[i], psi[j]);
            std::complex<double> v0 = v.eval(pts.front());
            for (const auto& p : pts) out.variation = std::max(out.variation, std::abs(v.eval(p) - v0));
        }
    }
    out.constant = out.variation <= tol;
    return out;
}

double ReductionReport::max_defect() const {
    return std::max({k_isotropy, k_dual_isotropy, basic_defect, isometry_m, isometry_dual, phi_defect});
}

ReductionReport duality_via_reduction(const DualityPair& d, const Point& p) {
    const auto& corr = d.corr();
    const CoframePtr& fc = corr.frame();
    const std::size_t nc = fc->dim();
    const auto k = static_cast<Eigen::Index>(d.rank());
    ReductionReport r;
    r.rank = static_cast<int>(k);

    std::vector<Section> psi = duality_lift(corr);
    Eigen::MatrixXd gens(static_cast<Eigen::Index>(2 * nc), 2 * k);
    for (Eigen::Index c = 0; c < 2 * k; ++c) gens.col(c) = psi[static_cast<std::size_t>(c)].eval(p).real();

    const Eigen::MatrixXd pc = pairing_matrix(nc);
    Eigen::MatrixXd kmat = gens.leftCols(k);
    Eigen::MatrixXd kdual = gens.rightCols(k);
    r.k_isotropy = max_abs_or_zero(kmat.transpose() * pc * kmat);
    r.k_dual_isotropy = max_abs_or_zero(kdual.transpose() * pc * kdual);
    r.doubled = signature((gens.transpose() * pc * gens).cast<std::complex<double>>());

    Eigen::MatrixXd w = real_nullspace(gens.transpose() * pc);
    Eigen::MatrixXd wpw = w.transpose() * pc * w;

    // Route to M̃ applies the F-shift η ↦ η − i_Y F before collapsing the M fibers.
    Eigen::MatrixXd fm = eval_matrix(matrix_from_two_form(corr.F()), p);
    Eigen::MatrixXd shifted = w;
    shifted.bottomRows(static_cast<Eigen::Index>(nc)) -= fm.transpose() * w.topRows(static_cast<Eigen::Index>(nc));

    Eigen::MatrixXd rm = route(w, fc, d.m().frame(), r.basic_defect);
    Eigen::MatrixXd rd = route(shifted, fc, d.dual().frame(), r.basic_defect);

    r.isometry_m = max_abs_or_zero(rm.transpose() * pairing_matrix(d.m().dim()) * rm - wpw);
    r.isometry_dual = max_abs_or_zero(rd.transpose() * pairing_matrix(d.dual().dim()) * rd - wpw);

    Eigen::FullPivLU<Eigen::MatrixXd> lu(rm);
    if (!lu.isInvertible()) {
        r.phi_defect = INFINITY;
    } else {
        r.phi_defect = max_abs_or_zero(rd * lu.inverse() - phi_matrix(d, p));
    }
    return r;
}

ProductFrame product_frame(const CorrespondenceChart& corr) {
    const CoframePtr& fc = corr.frame();
    const CoframePtr& fm = corr.m().frame();
    const CoframePtr& fd = corr.dual().frame();
    ProductFrame pf{fm->dim(), fd->dim(), Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(fm->dim() + fd->dim()),
                                                                 static_cast<Eigen::Index>(fc->dim()))};
    for (std::size_t c = 0; c < fc->dim(); ++c) {
        const auto& name = (*fc)[c].name;
        int i = fm->index_of(name);
        int j = fd->index_of(name);
        if (i >= 0) pf.embed(i, static_cast<Eigen::Index>(c)) = 1.0;
        if (j >= 0) pf.embed(static_cast<Eigen::Index>(fm->dim()) + j, static_cast<Eigen::Index>(c)) = 1.0;
    }
    return pf;
}

Eigen::MatrixXd generalized_tangent(const CorrespondenceChart& corr, const Point& p) {
    ProductFrame pf = product_frame(corr);
    const Eigen::MatrixXd& e = pf.embed;
    const Eigen::Index nn = e.rows();
    const Eigen::Index nc = e.cols();
    Eigen::MatrixXd fm = eval_matrix(matrix_from_two_form(corr.F()), p);
    // ξ ↦ ξ|ℳ is Eᵀ; a right inverse gives one covector extending each i_X F.
    Eigen::MatrixXd right_inv = e * (e.transpose() * e).inverse();
    Eigen::MatrixXd ann = real_nullspace(e.transpose());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * nn, nc + ann.cols());
    out.topLeftCorner(nn, nc) = e;
    out.bottomLeftCorner(nn, nc) = right_inv * fm.transpose();
    out.bottomRightCorner(nn, ann.cols()) = ann;
    return out;
}

TransversalityReport check_transversal(const CorrespondenceChart& corr, const Point& p) {
    ProductFrame pf = product_frame(corr);
    const auto nn = static_cast<Eigen::Index>(pf.n_m + pf.n_dual);
    const auto nm = static_cast<Eigen::Index>(pf.n_m);
    Eigen::MatrixXd tf = generalized_tangent(corr, p);
    Eigen::MatrixXd tm = Eigen::MatrixXd::Zero(2 * nn, 2 * nm);
    tm.topLeftCorner(nm, nm).setIdentity();
    tm.block(nn, nm, nm, nm).setIdentity();
    Eigen::MatrixXd both(2 * nn, tf.cols() + tm.cols());
    both << tf, tm;
    TransversalityReport r;
    r.intersection_dim = real_rank(tf) + real_rank(tm) - real_rank(both);
    r.transversal = r.intersection_dim == 0;

    Eigen::MatrixXd block = eval_matrix(corr.fiber_block(), p);
    r.block_nondegenerate = block.rows() == block.cols() && real_rank(block) == block.rows();
    return r;
}

FourierMukaiReport check_fourier_mukai(const Form& rho, const Form& rho_dual, const DualityPair& d, const Point& p,
                                       double tol) {
    const auto nm = static_cast<Eigen::Index>(d.m().dim());
    const auto nd = static_cast<Eigen::Index>(d.dual().dim());
    const Eigen::Index nn = nm + nd;
    Eigen::MatrixXd j = gcs_endomorphism(rho, p);
    Eigen::MatrixXd jd = gcs_endomorphism(rho_dual, p);

    // Route 1: τ_F invariant under 𝒥 ⊕ c𝒥̃c⁻¹ with c = diag(1, −1).
    Eigen::VectorXd cdiag(2 * nd);
    cdiag << Eigen::VectorXd::Ones(nd), -Eigen::VectorXd::Ones(nd);
    Eigen::MatrixXd cjc = cdiag.asDiagonal() * jd * cdiag.asDiagonal();
    std::vector<Eigen::Index> idx_m, idx_d;
    for (Eigen::Index i = 0; i < nm; ++i) idx_m.push_back(i);
    for (Eigen::Index i = 0; i < nm; ++i) idx_m.push_back(nn + i);
    for (Eigen::Index i = 0; i < nd; ++i) idx_d.push_back(nm + i);
    for (Eigen::Index i = 0; i < nd; ++i) idx_d.push_back(nn + nm + i);
    Eigen::MatrixXd jn = Eigen::MatrixXd::Zero(2 * nn, 2 * nn);
    for (std::size_t a = 0; a < idx_m.size(); ++a)
        for (std::size_t b = 0; b < idx_m.size(); ++b) jn(idx_m[a], idx_m[b]) = j(Eigen::Index(a), Eigen::Index(b));
    for (std::size_t a = 0; a < idx_d.size(); ++a)
        for (std::size_t b = 0; b < idx_d.size(); ++b) jn(idx_d[a], idx_d[b]) = cjc(Eigen::Index(a), Eigen::Index(b));

    Eigen::MatrixXd tf = generalized_tangent(d.corr(), p);
    FourierMukaiReport r;
    r.invariance_defect = membership_defect((jn * tf).cast<std::complex<double>>(), tf.cast<std::complex<double>>());
    r.invariant = r.invariance_defect <= tol;

    // Route 2: 𝒥̃ = φ𝒥φ⁻¹.
    Eigen::MatrixXd ph = phi_matrix(d, p);
    r.conjugation_defect = max_abs_or_zero(jd - ph * j * ph.inverse());
    r.conjugate = r.conjugation_defect <= tol * std::max(1.0, max_abs_or_zero(jd));
    return r;
}

}  // namespace tdual
