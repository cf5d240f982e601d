#pragma once

#include <vector>

#include "tdual/structures.hpp"

namespace tdual {

class DualityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// T-dual pair carried by a correspondence chart, with the fiber block of F cached.
class DualityPair {
public:
    explicit DualityPair(CorrespondenceChart corr);

    [[nodiscard]] const CorrespondenceChart& corr() const noexcept { return corr_; }
    [[nodiscard]] const BundleChart& m() const noexcept { return corr_.m(); }
    [[nodiscard]] const BundleChart& dual() const noexcept { return corr_.dual(); }
    [[nodiscard]] std::size_t rank() const noexcept { return corr_.m().rank(); }
    /// F(∂θᵢ, ∂θ̃ⱼ).
    [[nodiscard]] const ScalarMatrix& block() const noexcept { return block_; }
    [[nodiscard]] const ScalarMatrix& block_inverse() const noexcept { return block_inv_; }
    /// Symbolic τ of each basis monomial e^I of M, indexed by mask.
    [[nodiscard]] const std::vector<Form>& tau_basis() const noexcept { return tau_basis_; }

private:
    CorrespondenceChart corr_;
    ScalarMatrix block_;
    ScalarMatrix block_inv_;
    std::vector<Form> tau_basis_;
};

/// τ(ρ) = ∫_{Tᵏ} e^F∧ρ, integrating over the fibers of M.
[[nodiscard]] Form tau(const Form& rho, const DualityPair& d);
/// ∫ e^{−F}∧ρ̃ over the fibers of M̃.
[[nodiscard]] Form tau_reverse(const Form& rho_dual, const DualityPair& d);
/// Constant c with tau_reverse(tau(ρ)) = c·ρ for fiber rank k.
[[nodiscard]] int tau_roundtrip_sign(std::size_t k) noexcept;

/// φ(X+ξ) = p̃_*X̂ + p*ξ − i_X̂F with the lift X̂ fixed by (p*ξ − i_X̂F)(∂θᵢ) = 0.
[[nodiscard]] Section phi(const Section& v, const DualityPair& d);

/// Pointwise matrices of τ (2^N × 2^N) and φ (2N × 2N) at p.
[[nodiscard]] Eigen::MatrixXcd tau_matrix(const DualityPair& d, const Point& p);
[[nodiscard]] Eigen::MatrixXd phi_matrix(const DualityPair& d, const Point& p);

/// max |τ(v·ρ) − φ(v)·τ(ρ)| over the sample points.
[[nodiscard]] double transport_section_compat(const Section& v, const Form& rho, const DualityPair& d,
                                              const std::vector<Point>& pts);

/// Transports (g, b) by applying φ to the graph of b + g and re-reading the graph.
[[nodiscard]] GeneralizedMetric transport_metric(const GeneralizedMetric& m, const DualityPair& d);

/// Circle-bundle decomposition g = g₀θ² + 2 g₁·θ + g₂, b = b₁∧θ + b₂ in components:
/// g(∂θ,∂θ) = g₀, g(∂θ,eₐ) = g₁ₐ, b(eₐ,∂θ) = b₁ₐ.
struct CircleData {
    Scalar g0;
    std::vector<Scalar> g1;
    ScalarMatrix g2;
    std::vector<Scalar> b1;
    ScalarMatrix b2;
};

[[nodiscard]] CircleData decompose_circle(const GeneralizedMetric& m, const BundleChart& ch);
/// Assembles (g, b) on a rank-one chart from circle data.
[[nodiscard]] GeneralizedMetric assemble_circle(const CircleData& c, const BundleChart& ch);
/// Closed-form Buscher rules; output data refers to the dual circle.
[[nodiscard]] CircleData buscher(const CircleData& c);
[[nodiscard]] GeneralizedMetric buscher(const GeneralizedMetric& m, const DualityPair& d);

/// Type of τ(ρ) predicted from the smallest j with ∫(F+B+iω)^j∧Ω ≠ 0 at p.
struct DualTypeResult {
    int j = 0;
    int type = 0;
};
[[nodiscard]] DualTypeResult dual_type(const PureSpinor& rho, const DualityPair& d, const Point& p);

/// Ĩ± = Q I Q⁻¹ with Q = π̃ φ π±⁻¹; requires g(∂θ, base) = 0 at p.
[[nodiscard]] Eigen::MatrixXd transport_bihermitian(const Eigen::MatrixXd& i_pm, const GeneralizedMetric& m,
                                                    const DualityPair& d, const Point& p, int side);
/// Sign of det[v₁, Jv₁, v₂, Jv₂, …] for a complex basis v of (ℝ^{2m}, J).
[[nodiscard]] int complex_orientation(const Eigen::MatrixXd& j);

/// Largest relative defect of τ(U^k_M) ⊂ U^k_M̃ over k at p.
[[nodiscard]] double transport_uk(const Form& rho, const DualityPair& d, const Point& p);

}  // namespace tdual
