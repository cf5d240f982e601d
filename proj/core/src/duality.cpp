#include "tdual/duality.hpp"

#include <cmath>

namespace tdual {

namespace {

constexpr std::size_t kMaxCachedDim = 10;

Form drop_generators(const Form& rho, Mask drop) {
    Form::Terms kept;
    for (const auto& [m, f] : rho.terms())
        if (!(m & drop)) kept.emplace(m, f);
    return Form(rho.frame(), std::move(kept));
}

Form tau_impl(const Form& rho, const CorrespondenceChart& corr) {
    Form up = rho.transfer(corr.frame());
    Form integrand = wedge(exp_form(corr.F()), up);
    return fiber_integrate(integrand, GenTag::Fiber).transfer(corr.dual().frame());
}

std::vector<std::size_t> base_indices(const CoframePtr& frame) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < frame->dim(); ++i)
        if ((*frame)[i].tag == GenTag::Base) out.push_back(i);
    return out;
}

std::size_t circle_index(const BundleChart& ch) {
    if (ch.rank() != 1) throw DualityError("circle data requires a rank-one chart");
    return ch.frame()->require(ch.fibers()[0]);
}

Scalar half(const Scalar& s) { return Scalar(Rational(1, 2)) * s; }

}  // namespace

DualityPair::DualityPair(CorrespondenceChart corr) : corr_(std::move(corr)) {
    if (corr_.m().rank() != corr_.dual().rank()) throw DualityError("fiber ranks differ");
    block_ = corr_.fiber_block();
    if (block_.det().is_zero()) throw DualityError("F is degenerate on the fibers");
    block_inv_ = block_.inverse();
    const std::size_t n = corr_.m().dim();
    if (n <= kMaxCachedDim) {
        tau_basis_.reserve(std::size_t(1) << n);
        for (Mask m = 0; m < (Mask(1) << n); ++m)
            tau_basis_.push_back(tau_impl(Form::from_mask(corr_.m().frame(), m, CScalar(1)), corr_));
    }
}

Form tau(const Form& rho, const DualityPair& d) {
    require_same_frame(rho.frame(), d.m().frame());
    return tau_impl(rho, d.corr());
}

Form tau_reverse(const Form& rho_dual, const DualityPair& d) {
    require_same_frame(rho_dual.frame(), d.dual().frame());
    const auto& corr = d.corr();
    Form up = rho_dual.transfer(corr.frame());
    Form integrand = wedge(exp_form(-corr.F()), up);
    return fiber_integrate(integrand, GenTag::DualFiber).transfer(d.m().frame());
}

int tau_roundtrip_sign(std::size_t k) noexcept { return (k * (k - 1) / 2) % 2 == 0 ? 1 : -1; }

Section phi(const Section& v, const DualityPair& d) {
    require_same_frame(v.frame(), d.m().frame());
    const auto& corr = d.corr();
    const CoframePtr& fc = corr.frame();
    Section up = v.transfer(fc);
    const Form& f = corr.F();
    const std::size_t k = d.rank();

    Form ix_f = contract(up.x, f);
    std::vector<CScalar> rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        FrameVector ei = FrameVector::basis(fc, d.m().fibers()[i]);
        rhs[i] = evaluate_one_form(up.xi, ei) - contract(ei, ix_f).coeff(0);
    }
    // F(∂θ̃ⱼ, ∂θᵢ) = −block(i, j), so the lift coefficients are −block⁻¹·rhs.
    FrameVector xhat = up.x;
    for (std::size_t j = 0; j < k; ++j) {
        CScalar kj;
        for (std::size_t i = 0; i < k; ++i) kj -= CScalar(d.block_inverse()(j, i)) * rhs[i];
        xhat[fc->require(d.dual().fibers()[j])] += kj;
    }
    Form eta = up.xi - contract(xhat, f);

    const Mask fibers = fc->mask(GenTag::Fiber);
    const CoframePtr& target = d.dual().frame();
    FrameVector x_out(target);
    for (std::size_t i = 0; i < fc->dim(); ++i) {
        if (fibers & (Mask(1) << i)) continue;
        x_out[target->require((*fc)[i].name)] = xhat[i];
    }
    return {x_out, drop_generators(eta, fibers).transfer(target)};
}

Eigen::MatrixXcd tau_matrix(const DualityPair& d, const Point& p) {
    const std::size_t n = d.m().dim();
    const auto rows = Eigen::Index(1) << d.dual().dim();
    const auto cols = Eigen::Index(1) << n;
    Eigen::MatrixXcd t(rows, cols);
    const auto& cached = d.tau_basis();
    for (Mask m = 0; m < (Mask(1) << n); ++m) {
        if (!cached.empty()) {
            t.col(m) = cached[m].eval(p);
        } else {
            t.col(m) = tau_impl(Form::from_mask(d.m().frame(), m, CScalar(1)), d.corr()).eval(p);
        }
    }
    return t;
}

Eigen::MatrixXd phi_matrix(const DualityPair& d, const Point& p) {
    const std::size_t n = d.m().dim();
    const auto dim = static_cast<Eigen::Index>(2 * n);
    Eigen::MatrixXd out(static_cast<Eigen::Index>(2 * d.dual().dim()), dim);
    for (std::size_t j = 0; j < 2 * n; ++j) {
        std::vector<CScalar> c(2 * n);
        c[j] = CScalar(1);
        out.col(static_cast<Eigen::Index>(j)) = phi(Section::from_components(d.m().frame(), c), d).eval(p).real();
    }
    return out;
}

double transport_section_compat(const Section& v, const Form& rho, const DualityPair& d,
                                const std::vector<Point>& pts) {
    Form lhs = tau(clifford(v, rho), d);
    Form rhs = clifford(phi(v, d), tau(rho, d));
    return residual(lhs, rhs, pts);
}

GeneralizedMetric transport_metric(const GeneralizedMetric& m, const DualityPair& d) {
    require_same_frame(m.frame, d.m().frame());
    const std::size_t n = m.frame->dim();
    ScalarMatrix bm = matrix_from_two_form(m.b);
    ScalarMatrix t(n, n);
    ScalarMatrix xi(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<CScalar> c(2 * n);
        c[a] = CScalar(1);
        for (std::size_t k = 0; k < n; ++k) c[n + k] = CScalar(bm(a, k) + m.g(a, k));
        Section out = phi(Section::from_components(m.frame, c), d);
        std::vector<CScalar> oc = out.components();
        for (std::size_t k = 0; k < n; ++k) {
            if (!oc[k].is_real() || !oc[n + k].is_real()) throw DualityError("φ produced a complex component");
            t(k, a) = oc[k].re;
            xi(k, a) = oc[n + k].re;
        }
    }
    ScalarMatrix bil = (xi * t.inverse()).transpose();
    ScalarMatrix bt = bil.transpose();
    ScalarMatrix g(n, n);
    ScalarMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            g(i, j) = half(bil(i, j) + bt(i, j));
            b(i, j) = half(bil(i, j) - bt(i, j));
        }
    }
    const CoframePtr& target = d.dual().frame();
    return {target, g, two_form_from_matrix(target, b)};
}

CircleData decompose_circle(const GeneralizedMetric& m, const BundleChart& ch) {
    require_same_frame(m.frame, ch.frame());
    const std::size_t t = circle_index(ch);
    const auto base = base_indices(ch.frame());
    const std::size_t nb = base.size();
    ScalarMatrix bm = matrix_from_two_form(m.b);
    CircleData c{m.g(t, t), {}, ScalarMatrix(nb, nb), {}, ScalarMatrix(nb, nb)};
    for (std::size_t a = 0; a < nb; ++a) {
        c.g1.push_back(m.g(t, base[a]));
        c.b1.push_back(bm(base[a], t));
        for (std::size_t e = 0; e < nb; ++e) {
            c.g2(a, e) = m.g(base[a], base[e]);
            c.b2(a, e) = bm(base[a], base[e]);
        }
    }
    return c;
}

GeneralizedMetric assemble_circle(const CircleData& c, const BundleChart& ch) {
    const std::size_t t = circle_index(ch);
    const auto base = base_indices(ch.frame());
    const std::size_t n = ch.dim();
    ScalarMatrix g(n, n);
    ScalarMatrix b(n, n);
    g(t, t) = c.g0;
    for (std::size_t a = 0; a < base.size(); ++a) {
        g(t, base[a]) = c.g1[a];
        g(base[a], t) = c.g1[a];
        b(base[a], t) = c.b1[a];
        b(t, base[a]) = -c.b1[a];
        for (std::size_t e = 0; e < base.size(); ++e) {
            g(base[a], base[e]) = c.g2(a, e);
            b(base[a], base[e]) = c.b2(a, e);
        }
    }
    return {ch.frame(), g, two_form_from_matrix(ch.frame(), b)};
}

CircleData buscher(const CircleData& c) {
    const std::size_t nb = c.g1.size();
    const Scalar inv = Scalar(1) / c.g0;
    CircleData out{inv, {}, ScalarMatrix(nb, nb), {}, ScalarMatrix(nb, nb)};
    for (std::size_t a = 0; a < nb; ++a) {
        out.g1.push_back(-c.b1[a] * inv);
        out.b1.push_back(-c.g1[a] * inv);
        for (std::size_t e = 0; e < nb; ++e) {
            out.g2(a, e) = c.g2(a, e) + (c.b1[a] * c.b1[e] - c.g1[a] * c.g1[e]) * inv;
            out.b2(a, e) = c.b2(a, e) + (c.g1[a] * c.b1[e] - c.g1[e] * c.b1[a]) * inv;
        }
    }
    return out;
}

GeneralizedMetric buscher(const GeneralizedMetric& m, const DualityPair& d) {
    return assemble_circle(buscher(decompose_circle(m, d.m())), d.dual());
}

DualTypeResult dual_type(const PureSpinor& rho, const DualityPair& d, const Point& p) {
    if (!rho.hint) throw DualityError("dual_type needs the (B, ω, Ω) decomposition");
    const auto& h = *rho.hint;
    const auto& corr = d.corr();
    const int deg = h.big_omega.max_degree();
    if (!h.big_omega.is_homogeneous(deg)) throw DualityError("Ω must be homogeneous");
    Form e = corr.F() + corr.pull_m(h.b) + CScalar::i() * corr.pull_m(h.omega);
    Form power = corr.pull_m(h.big_omega);
    const int k = static_cast<int>(d.rank());
    const double scale = std::max(1.0, h.big_omega.eval(p).cwiseAbs().maxCoeff());
    for (int j = 0; j <= k; ++j) {
        Eigen::VectorXcd v = fiber_integrate(power, GenTag::Fiber).eval(p);
        if (v.size() && v.cwiseAbs().maxCoeff() > 1e-9 * scale) return {j, deg + 2 * j - k};
        power = wedge(e, power);
    }
    throw DualityError("every fiber integral vanishes at the point");
}

Eigen::MatrixXd transport_bihermitian(const Eigen::MatrixXd& i_pm, const GeneralizedMetric& m,
                                      const DualityPair& d, const Point& p, int side) {
    if (side != 1 && side != -1) throw std::invalid_argument("side must be +1 or -1");
    const std::size_t t = circle_index(d.m());
    Eigen::MatrixXd g = m.g_at(p);
    Eigen::MatrixXd b = m.b_at(p);
    const auto n = g.rows();
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    for (Eigen::Index a = 0; a < n; ++a)
        if (a != Eigen::Index(t) && std::abs(g(Eigen::Index(t), a)) > 1e-10 * scale)
            throw DualityError("the fibers must be orthogonal to the base");
    Eigen::MatrixXd q = (phi_matrix(d, p) * c_plus_minus(g, b, side)).topRows(n);
    return q * i_pm * q.inverse();
}

int complex_orientation(const Eigen::MatrixXd& j) {
    const auto n = j.rows();
    Eigen::MatrixXd v(n, 0);
    for (Eigen::Index i = 0; i < n && v.cols() < n; ++i) {
        Eigen::MatrixXd cand(n, v.cols() + 2);
        cand << v, Eigen::VectorXd::Unit(n, i), j.col(i);
        if (rank(cand.cast<std::complex<double>>()) == cand.cols()) v = cand;
    }
    if (v.cols() != n) throw std::invalid_argument("not a complex structure");
    return v.determinant() > 0 ? 1 : -1;
}

double transport_uk(const Form& rho, const DualityPair& d, const Point& p) {
    Eigen::MatrixXcd t = tau_matrix(d, p);
    auto u = uk_spaces(rho, p);
    auto ut = uk_spaces(tau(rho, d), p);
    double worst = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (k >= ut.size() || ut[k].cols() != u[k].cols()) return 1.0;
        worst = std::max(worst, membership_defect(t * u[k], ut[k]));
    }
    return worst;
}

}  // namespace tdual
