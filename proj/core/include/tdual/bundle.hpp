#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdual/exterior.hpp"

namespace tdual {

/// Exterior derivative on invariant forms from the structure equations
/// d(dxᵃ) = 0, d(eⁱ) = given 2-form, d(f) = Σₐ ∂ₐf dxᵃ.
class Structure {
public:
    Structure() = default;
    Structure(CoframePtr frame, std::vector<Form> d_generators);

    [[nodiscard]] const CoframePtr& frame() const noexcept { return frame_; }
    [[nodiscard]] const Form& d_generator(std::size_t i) const { return dgen_.at(i); }
    [[nodiscard]] Form d(const Form& rho) const;
    /// Directional derivative X(f) = Σₐ Xᵃ ∂f/∂xᵃ.
    [[nodiscard]] CScalar derivative(const FrameVector& x, const CScalar& f) const;
    /// Lie bracket of frame vector fields: [X,Y]ᵏ = X(Yᵏ) − Y(Xᵏ) − deᵏ(X,Y).
    [[nodiscard]] FrameVector lie_bracket(const FrameVector& x, const FrameVector& y) const;

private:
    CoframePtr frame_;
    std::vector<Form> dgen_;
};

/// Chart model of a principal Tᵏ bundle: base box, connection generators,
/// curvature 2-forms and an invariant flux 3-form.
class BundleChart {
public:
    BundleChart() = default;
    /// Base generator for variable v is named "d" + v.
    BundleChart(std::string name, Domain domain, std::vector<std::string> base_vars,
                std::vector<std::string> fibers);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const Domain& domain() const noexcept { return domain_; }
    [[nodiscard]] const CoframePtr& frame() const noexcept { return frame_; }
    [[nodiscard]] const std::vector<std::string>& base_vars() const noexcept { return base_vars_; }
    [[nodiscard]] const std::vector<std::string>& fibers() const noexcept { return fibers_; }
    [[nodiscard]] std::size_t rank() const noexcept { return fibers_.size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return frame_->dim(); }
    [[nodiscard]] const std::vector<Form>& curvature() const noexcept { return curvature_; }
    [[nodiscard]] const Form& flux() const noexcept { return flux_; }
    [[nodiscard]] const Structure& structure() const noexcept { return structure_; }

    /// Curvature of fiber i (a basic 2-form on this chart's coframe).
    void set_curvature(std::size_t i, const Form& c);
    void set_flux(const Form& h);
    void set_domain(Domain d) { domain_ = std::move(d); }

    [[nodiscard]] Form gen(std::string_view name) const { return Form::generator(frame_, name); }
    [[nodiscard]] Form parse_form(std::string_view text) const { return Form::parse(frame_, text); }
    [[nodiscard]] std::vector<Point> sample(const Sampling& s) const {
        return domain_.sample(s.seed, s.samples);
    }

private:
    void rebuild();

    std::string name_;
    Domain domain_;
    std::vector<std::string> base_vars_;
    std::vector<std::string> fibers_;
    CoframePtr frame_;
    std::vector<Form> curvature_;
    Form flux_{nullptr};
    Structure structure_;
};

[[nodiscard]] Form exterior_derivative(const Form& rho, const BundleChart& ch);
[[nodiscard]] Form d_H(const Form& rho, const BundleChart& ch);

/// Thrown when H has a component with two or more fiber legs.
class HolonomyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// H = Σ c̃ᵢ∧θᵢ + h.
struct FluxSplit {
    std::vector<Form> c_tilde;
    Form h;
};

[[nodiscard]] FluxSplit split_flux(const BundleChart& ch);

/// Name of the dual fiber generator: "th" ↔ "th~".
[[nodiscard]] std::string dual_fiber_name(const std::string& name);

/// Fiber product chart {dxᵃ, θᵢ, θ̃ⱼ} of two bundles over a common base with a 2-form F.
class CorrespondenceChart {
public:
    CorrespondenceChart() = default;
    /// F is given on the correspondence coframe (see frame_for).
    CorrespondenceChart(BundleChart m, BundleChart dual, Form f);

    /// Coframe of the correspondence space of two charts.
    [[nodiscard]] static CoframePtr frame_for(const BundleChart& m, const BundleChart& dual);

    [[nodiscard]] const BundleChart& m() const noexcept { return m_; }
    [[nodiscard]] const BundleChart& dual() const noexcept { return dual_; }
    [[nodiscard]] const CoframePtr& frame() const noexcept { return frame_; }
    [[nodiscard]] const Structure& structure() const noexcept { return structure_; }
    [[nodiscard]] const Form& F() const noexcept { return f_; }
    [[nodiscard]] Form pull_m(const Form& rho) const { return rho.transfer(frame_); }
    [[nodiscard]] Form pull_dual(const Form& rho) const { return rho.transfer(frame_); }
    /// p*H − p̃*H̃ − dF.
    [[nodiscard]] Form df_defect() const;
    /// Matrix F(∂θᵢ, ∂θ̃ⱼ).
    [[nodiscard]] ScalarMatrix fiber_block() const;
    [[nodiscard]] CorrespondenceChart with_F(const Form& f) const { return {m_, dual_, f}; }

private:
    BundleChart m_;
    BundleChart dual_;
    CoframePtr frame_;
    Structure structure_;
    Form f_{nullptr};
};

struct DualConstruction {
    BundleChart dual;
    CorrespondenceChart corr;
};

/// Dual chart with curvature c̃, flux Σ cᵢ∧θ̃ᵢ + h, and F = −Σ θᵢ∧θ̃ᵢ.
[[nodiscard]] DualConstruction build_dual_chart(const BundleChart& ch);

struct ChartReport {
    double dH = 0.0;        ///< max |dH|
    double holonomy = 0.0;  ///< max |components of H with ≥ 2 fiber legs|
    double dc = 0.0;        ///< max |dcᵢ|
    double basic_c = 0.0;   ///< max |components of cᵢ with fiber legs|
    [[nodiscard]] bool ok(double tol) const {
        return dH <= tol && holonomy <= tol && dc <= tol && basic_c <= tol;
    }
};

struct PairReport {
    double dF = 0.0;                 ///< max |p*H − p̃*H̃ − dF|
    double min_abs_det = 0.0;        ///< min over samples of |det fiber block|
    bool nondegenerate = false;
    bool constant_block = false;
    bool unimodular = false;
    [[nodiscard]] bool ok(double tol) const { return dF <= tol && nondegenerate; }
};

[[nodiscard]] ChartReport validate_chart(const BundleChart& ch, const Sampling& s);
[[nodiscard]] PairReport validate_pair(const CorrespondenceChart& corr, const Sampling& s);

}  // namespace tdual
