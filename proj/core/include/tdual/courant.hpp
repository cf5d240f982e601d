#pragma once

#include "tdual/bundle.hpp"

namespace tdual {

/// Invariant section X + ξ of (T ⊕ T*) ⊗ ℂ in frame components.
struct Section {
    FrameVector x;
    Form xi;

    explicit Section(const CoframePtr& frame) : x(frame), xi(frame) {}
    Section(FrameVector x_, Form xi_);

    [[nodiscard]] const CoframePtr& frame() const noexcept { return x.frame(); }
    /// Components (X¹..Xᴺ, ξ₁..ξ_N).
    [[nodiscard]] std::vector<CScalar> components() const;
    [[nodiscard]] static Section from_components(const CoframePtr& frame, const std::vector<CScalar>& c);
    /// Values at p as a vector in ℂ^{2N}, vector part first.
    [[nodiscard]] Eigen::VectorXcd eval(const Point& p) const;
    [[nodiscard]] Section transfer(const CoframePtr& target) const;

    friend Section operator+(const Section& a, const Section& b);
    friend Section operator-(const Section& a, const Section& b);
    friend Section operator*(const CScalar& f, const Section& a);
};

/// ½(η(X) + ξ(Y)).
[[nodiscard]] CScalar pairing(const Section& v, const Section& w);

/// Clifford action v·ρ.
[[nodiscard]] Form clifford(const Section& v, const Form& rho);

/// [X+ξ, Y+η]_H = [X,Y] + ℒ_Xη − i_Y dξ − i_Y i_X H.
///
/// The flux term follows the derived bracket of d_H = d + H∧, i.e. +i_X i_Y H.
[[nodiscard]] Section courant_bracket(const Section& v, const Section& w, const Structure& st, const Form& h);
[[nodiscard]] Section courant_bracket(const Section& v, const Section& w, const BundleChart& ch);

/// e^{−B}(X + ξ) = X + ξ − i_X B.
[[nodiscard]] Section b_transform(const Form& b, const Section& v);

/// Spinor-side bracket [[d_H, v], w]·ρ with graded commutators.
[[nodiscard]] Form derived_bracket_action(const Section& v, const Section& w, const Form& rho,
                                          const Structure& st, const Form& h);

/// max over samples of |[v,w]_H·ρ − [[d_H,v],w]·ρ|.
[[nodiscard]] double bracket_spinor_oracle(const Section& v, const Section& w, const Form& rho,
                                           const BundleChart& ch, const std::vector<Point>& pts);

/// Residual of i_X H − dξ at the sample points.
[[nodiscard]] double lift_splitting_residual(const FrameVector& x, const Form& xi, const BundleChart& ch,
                                             const std::vector<Point>& pts);
[[nodiscard]] bool check_lift_splitting(const FrameVector& x, const Form& xi, const BundleChart& ch,
                                        const Sampling& s);

/// Largest component difference of two sections over the sample points.
[[nodiscard]] double residual(const Section& a, const Section& b, const std::vector<Point>& pts);

}  // namespace tdual
