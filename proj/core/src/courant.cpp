#include "tdual/courant.hpp"

namespace tdual {

Section::Section(FrameVector x_, Form xi_) : x(std::move(x_)), xi(std::move(xi_)) {
    require_same_frame(x.frame(), xi.frame());
    if (!xi.is_homogeneous(1)) throw std::invalid_argument("section covector part must have degree 1");
}

std::vector<CScalar> Section::components() const {
    const std::size_t n = frame()->dim();
    std::vector<CScalar> c(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = x[i];
        c[n + i] = xi.coeff(Mask(1) << i);
    }
    return c;
}

Section Section::from_components(const CoframePtr& frame, const std::vector<CScalar>& c) {
    const std::size_t n = frame->dim();
    if (c.size() != 2 * n) throw std::invalid_argument("section component count mismatch");
    Section s(frame);
    Form::Terms t;
    for (std::size_t i = 0; i < n; ++i) {
        s.x[i] = c[i];
        if (!c[n + i].is_zero()) t.emplace(Mask(1) << i, c[n + i]);
    }
    s.xi = Form(frame, std::move(t));
    return s;
}

Eigen::VectorXcd Section::eval(const Point& p) const {
    auto c = components();
    Eigen::VectorXcd v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i].eval(p);
    return v;
}

Section Section::transfer(const CoframePtr& target) const {
    FrameVector y(target);
    for (std::size_t i = 0; i < frame()->dim(); ++i) {
        if (x[i].is_zero()) continue;
        int j = target->index_of((*frame())[i].name);
        if (j < 0) throw CoframeMismatch("vector component '" + (*frame())[i].name + "' missing from target");
        y[j] = x[i];
    }
    return {y, xi.transfer(target)};
}

Section operator+(const Section& a, const Section& b) { return {a.x + b.x, a.xi + b.xi}; }
Section operator-(const Section& a, const Section& b) { return {a.x - b.x, a.xi - b.xi}; }
Section operator*(const CScalar& f, const Section& a) { return {f * a.x, f * a.xi}; }

CScalar pairing(const Section& v, const Section& w) {
    require_same_frame(v.frame(), w.frame());
    CScalar s = evaluate_one_form(w.xi, v.x) + evaluate_one_form(v.xi, w.x);
    return Scalar(Rational(1, 2)) * s;
}

Form clifford(const Section& v, const Form& rho) { return clifford(v.x, v.xi, rho); }

Section courant_bracket(const Section& v, const Section& w, const Structure& st, const Form& h) {
    FrameVector xy = st.lie_bracket(v.x, w.x);
    // ℒ_Xη = i_X dη + d i_X η
    Form lie = contract(v.x, st.d(w.xi)) + st.d(contract(v.x, w.xi));
    Form iy_dxi = contract(w.x, st.d(v.xi));
    Form flux = contract(v.x, contract(w.x, h));
    return {xy, lie - iy_dxi + flux};
}

Section courant_bracket(const Section& v, const Section& w, const BundleChart& ch) {
    return courant_bracket(v, w, ch.structure(), ch.flux());
}

Section b_transform(const Form& b, const Section& v) {
    if (!b.is_homogeneous(2)) throw std::invalid_argument("b_transform: B must be a 2-form");
    return {v.x, v.xi - contract(v.x, b)};
}

namespace {

Form dh(const Form& rho, const Structure& st, const Form& h) { return st.d(rho) + wedge(h, rho); }

/// [d_H, v]ρ = d_H(v·ρ) + v·d_Hρ.
Form dh_v(const Section& v, const Form& rho, const Structure& st, const Form& h) {
    return dh(clifford(v, rho), st, h) + clifford(v, dh(rho, st, h));
}

}  // namespace

Form derived_bracket_action(const Section& v, const Section& w, const Form& rho, const Structure& st,
                            const Form& h) {
    return dh_v(v, clifford(w, rho), st, h) - clifford(w, dh_v(v, rho, st, h));
}

double bracket_spinor_oracle(const Section& v, const Section& w, const Form& rho, const BundleChart& ch,
                             const std::vector<Point>& pts) {
    Form lhs = clifford(courant_bracket(v, w, ch), rho);
    Form rhs = derived_bracket_action(v, w, rho, ch.structure(), ch.flux());
    return residual(lhs, rhs, pts);
}

double lift_splitting_residual(const FrameVector& x, const Form& xi, const BundleChart& ch,
                               const std::vector<Point>& pts) {
    return residual(contract(x, ch.flux()), exterior_derivative(xi, ch), pts);
}

bool check_lift_splitting(const FrameVector& x, const Form& xi, const BundleChart& ch, const Sampling& s) {
    return lift_splitting_residual(x, xi, ch, ch.sample(s)) <= s.tol;
}

double residual(const Section& a, const Section& b, const std::vector<Point>& pts) {
    double r = 0.0;
    for (const auto& p : pts) r = std::max(r, (a.eval(p) - b.eval(p)).cwiseAbs().maxCoeff());
    return r;
}

}  // namespace tdual
