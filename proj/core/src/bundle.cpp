#include "tdual/bundle.hpp"

#include <cmath>

namespace tdual {

// ---------------------------------------------------------------- Structure

Structure::Structure(CoframePtr frame, std::vector<Form> d_generators)
    : frame_(std::move(frame)), dgen_(std::move(d_generators)) {
    if (dgen_.size() != frame_->dim()) throw std::invalid_argument("one derivative per generator required");
    for (auto& g : dgen_) {
        require_same_frame(frame_, g.frame());
        if (!g.is_homogeneous(2)) throw std::invalid_argument("d of a generator must be a 2-form");
    }
}

Form Structure::d(const Form& rho) const {
    require_same_frame(frame_, rho.frame());
    const Coframe& fr = *frame_;
    Form out(frame_);
    for (const auto& [m, f] : rho.terms()) {
        // Coefficient derivative: Σₐ ∂ₐf dxᵃ∧e^I.
        for (std::size_t a = 0; a < fr.dim(); ++a) {
            if (fr[a].tag != GenTag::Base) continue;
            Mask bit = Mask(1) << a;
            if (m & bit) continue;
            CScalar df = f.diff(fr[a].variable);
            if (df.is_zero()) continue;
            out += Form::from_mask(frame_, m | bit, wedge_sign(bit, m) > 0 ? df : -df);
        }
        // Leibniz on the generators: d(e^{i1}∧…) = Σ (−1)^k e^{i1}∧…∧de^{ik}∧….
        for (Mask r = m; r; r &= r - 1) {
            int i = __builtin_ctz(r);
            const Form& dg = dgen_[i];
            if (dg.is_zero()) continue;
            Mask below = m & ((Mask(1) << i) - 1);
            Mask above = m & ~((Mask(2) << i) - 1);
            int pos = popcount(below);
            Form piece = wedge(wedge(Form::from_mask(frame_, below, CScalar(1)), dg),
                               Form::from_mask(frame_, above, CScalar(1)));
            out += (pos & 1) ? -(f * piece) : f * piece;
        }
    }
    return out;
}

CScalar Structure::derivative(const FrameVector& x, const CScalar& f) const {
    const Coframe& fr = *frame_;
    CScalar s;
    for (std::size_t a = 0; a < fr.dim(); ++a) {
        if (fr[a].tag != GenTag::Base || x[a].is_zero()) continue;
        CScalar df = f.diff(fr[a].variable);
        if (!df.is_zero()) s += x[a] * df;
    }
    return s;
}

FrameVector Structure::lie_bracket(const FrameVector& x, const FrameVector& y) const {
    require_same_frame(frame_, x.frame());
    require_same_frame(frame_, y.frame());
    FrameVector out(frame_);
    for (std::size_t k = 0; k < frame_->dim(); ++k) {
        CScalar c = derivative(x, y[k]) - derivative(y, x[k]);
        if (!dgen_[k].is_zero()) {
            Form v = contract(y, contract(x, dgen_[k]));
            c -= v.coeff(0);
        }
        out[k] = c;
    }
    return out;
}

// ---------------------------------------------------------------- BundleChart

BundleChart::BundleChart(std::string name, Domain domain, std::vector<std::string> base_vars,
                         std::vector<std::string> fibers)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      base_vars_(std::move(base_vars)),
      fibers_(std::move(fibers)) {
    std::vector<Generator> gens;
    for (const auto& v : base_vars_) gens.push_back({"d" + v, GenTag::Base, v});
    for (const auto& f : fibers_) gens.push_back({f, GenTag::Fiber, ""});
    frame_ = make_coframe(std::move(gens));
    curvature_.assign(fibers_.size(), Form(frame_));
    flux_ = Form(frame_);
    rebuild();
}

void BundleChart::set_curvature(std::size_t i, const Form& c) {
    curvature_.at(i) = c.transfer(frame_);
    rebuild();
}

void BundleChart::set_flux(const Form& h) {
    flux_ = h.transfer(frame_);
    rebuild();
}

void BundleChart::rebuild() {
    std::vector<Form> dg(frame_->dim(), Form(frame_));
    for (std::size_t i = 0; i < fibers_.size(); ++i) dg[frame_->require(fibers_[i])] = curvature_[i];
    structure_ = Structure(frame_, std::move(dg));
}

Form exterior_derivative(const Form& rho, const BundleChart& ch) { return ch.structure().d(rho); }

Form d_H(const Form& rho, const BundleChart& ch) {
    return ch.structure().d(rho) + wedge(ch.flux(), rho);
}

FluxSplit split_flux(const BundleChart& ch) {
    const Form& h = ch.flux();
    const CoframePtr& fr = ch.frame();
    Mask fib = fr->mask(GenTag::Fiber);
    FluxSplit out{std::vector<Form>(ch.rank(), Form(fr)), Form(fr)};
    for (const auto& [m, f] : h.terms()) {
        Mask legs = m & fib;
        int n = popcount(legs);
        if (n >= 2) throw HolonomyError("flux has a component with two fiber legs");
        if (n == 0) {
            out.h += Form::from_mask(fr, m, f);
            continue;
        }
        int i = __builtin_ctz(legs);
        Mask rest = m & ~legs;
        int sign = wedge_sign(rest, legs);
        std::size_t slot = 0;
        while (fr->require(ch.fibers()[slot]) != static_cast<std::size_t>(i)) ++slot;
        out.c_tilde[slot] += Form::from_mask(fr, rest, sign > 0 ? f : -f);
    }
    return out;
}

std::string dual_fiber_name(const std::string& name) {
    if (!name.empty() && name.back() == '~') return name.substr(0, name.size() - 1);
    return name + "~";
}

// ---------------------------------------------------------------- correspondence

CoframePtr CorrespondenceChart::frame_for(const BundleChart& m, const BundleChart& dual) {
    std::vector<Generator> gens;
    for (const auto& v : m.base_vars()) gens.push_back({"d" + v, GenTag::Base, v});
    for (const auto& f : m.fibers()) gens.push_back({f, GenTag::Fiber, ""});
    for (const auto& f : dual.fibers()) gens.push_back({f, GenTag::DualFiber, ""});
    return make_coframe(std::move(gens));
}

CorrespondenceChart::CorrespondenceChart(BundleChart m, BundleChart dual, Form f)
    : m_(std::move(m)), dual_(std::move(dual)) {
    if (m_.base_vars() != dual_.base_vars()) throw std::invalid_argument("charts must share the base");
    frame_ = frame_for(m_, dual_);
    std::vector<Form> dg(frame_->dim(), Form(frame_));
    for (std::size_t i = 0; i < m_.rank(); ++i)
        dg[frame_->require(m_.fibers()[i])] = m_.curvature()[i].transfer(frame_);
    for (std::size_t i = 0; i < dual_.rank(); ++i)
        dg[frame_->require(dual_.fibers()[i])] = dual_.curvature()[i].transfer(frame_);
    structure_ = Structure(frame_, std::move(dg));
    f_ = f.transfer(frame_);
}

Form CorrespondenceChart::df_defect() const {
    return pull_m(m_.flux()) - pull_dual(dual_.flux()) - structure_.d(f_);
}

ScalarMatrix CorrespondenceChart::fiber_block() const {
    ScalarMatrix b(m_.rank(), dual_.rank());
    for (std::size_t i = 0; i < m_.rank(); ++i) {
        FrameVector ei = FrameVector::basis(frame_, m_.fibers()[i]);
        Form ie = contract(ei, f_);
        for (std::size_t j = 0; j < dual_.rank(); ++j) {
            FrameVector ej = FrameVector::basis(frame_, dual_.fibers()[j]);
            CScalar v = contract(ej, ie).coeff(0);
            if (!v.is_real()) throw std::invalid_argument("F must be real");
            b(i, j) = v.re;
        }
    }
    return b;
}

DualConstruction build_dual_chart(const BundleChart& ch) {
    FluxSplit split = split_flux(ch);
    std::vector<std::string> dual_fibers;
    for (const auto& f : ch.fibers()) dual_fibers.push_back(dual_fiber_name(f));
    BundleChart dual(ch.name() + "~", ch.domain(), ch.base_vars(), dual_fibers);
    for (std::size_t i = 0; i < ch.rank(); ++i) dual.set_curvature(i, split.c_tilde[i].transfer(dual.frame()));
    Form h_dual = split.h.transfer(dual.frame());
    for (std::size_t i = 0; i < ch.rank(); ++i)
        h_dual += wedge(ch.curvature()[i].transfer(dual.frame()), dual.gen(dual_fibers[i]));
    dual.set_flux(h_dual);

    CoframePtr cf = CorrespondenceChart::frame_for(ch, dual);
    Form f(cf);
    for (std::size_t i = 0; i < ch.rank(); ++i)
        f -= wedge(Form::generator(cf, ch.fibers()[i]), Form::generator(cf, dual_fibers[i]));
    CorrespondenceChart corr(ch, dual, f);
    return {std::move(dual), std::move(corr)};
}

// ---------------------------------------------------------------- validation

namespace {

double fiber_leg_max(const Form& a, Mask fib, int min_legs, const std::vector<Point>& pts) {
    Form sel(a.frame());
    for (const auto& [m, f] : a.terms())
        if (popcount(m & fib) >= min_legs) sel += Form::from_mask(a.frame(), m, f);
    return max_abs(sel, pts);
}

}  // namespace

ChartReport validate_chart(const BundleChart& ch, const Sampling& s) {
    auto pts = ch.sample(s);
    Mask fib = ch.frame()->mask(GenTag::Fiber);
    ChartReport r;
    r.dH = max_abs(exterior_derivative(ch.flux(), ch), pts);
    r.holonomy = fiber_leg_max(ch.flux(), fib, 2, pts);
    for (const auto& c : ch.curvature()) {
        r.dc = std::max(r.dc, max_abs(exterior_derivative(c, ch), pts));
        r.basic_c = std::max(r.basic_c, fiber_leg_max(c, fib, 1, pts));
    }
    return r;
}

PairReport validate_pair(const CorrespondenceChart& corr, const Sampling& s) {
    auto pts = corr.m().sample(s);
    PairReport r;
    r.dF = max_abs(corr.df_defect(), pts);
    ScalarMatrix block = corr.fiber_block();
    r.min_abs_det = INFINITY;
    if (block.rows() != block.cols()) {
        r.min_abs_det = 0.0;
    } else {
        Scalar det = block.det();
        for (const auto& p : pts) r.min_abs_det = std::min(r.min_abs_det, std::abs(det.eval(p)));
    }
    r.nondegenerate = r.min_abs_det > 1e-12;
    r.constant_block = block.is_constant_rational();
    if (r.constant_block && block.rows() == block.cols()) {
        bool integer = true;
        for (std::size_t i = 0; i < block.rows(); ++i)
            for (std::size_t j = 0; j < block.cols(); ++j) integer &= block(i, j).rational_value()->is_integer();
        const Rational* d = block.det().rational_value();
        r.unimodular = integer && d && (*d == Rational(1) || *d == Rational(-1));
    }
    return r;
}

}  // namespace tdual
