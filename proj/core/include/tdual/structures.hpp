#pragma once

#include <optional>
#include <vector>

#include "tdual/courant.hpp"
#include "tdual/pointwise.hpp"

namespace tdual {

/// Data (B, ω, Ω) of a spinor e^{B+iω}∧Ω.
struct SpinorData {
    Form b;
    Form omega;
    Form big_omega;
};

/// Complex form generating a pure spinor line, optionally with its decomposition.
struct PureSpinor {
    Form rho;
    std::optional<SpinorData> hint;

    explicit PureSpinor(Form r) : rho(std::move(r)) {}
    /// ρ = e^{B+iω}∧Ω.
    [[nodiscard]] static PureSpinor from_data(const Form& b, const Form& omega, const Form& big_omega);
};

class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Basis (columns in ℂ^{2N}, vector part first) of {v : v·ρ(p) = 0}.
[[nodiscard]] Eigen::MatrixXcd annihilator(const Form& rho, const Point& p);
[[nodiscard]] Eigen::MatrixXcd annihilator_of(std::size_t n, const Eigen::VectorXcd& rho);

/// Degree of the lowest component of ρ(p) above the relative threshold.
[[nodiscard]] int spinor_type(const Form& rho, const Point& p);
[[nodiscard]] int spinor_type_of(const Eigen::VectorXcd& rho, double rel_tol = 1e-10);

/// Top coefficient of (ρ, ρ̄) at p.
[[nodiscard]] std::complex<double> mukai_norm(const Form& rho, const Point& p);

/// True when the degree-k form α (2^N vector) is decomposable: dim{ξ : ξ∧α = 0} = k.
[[nodiscard]] bool is_decomposable(std::size_t n, const Eigen::VectorXcd& alpha, int k);

struct IntegrabilityReport {
    double residual = 0.0;                 ///< max over samples of ‖v·ρ − d_Hρ‖∞
    std::vector<Eigen::VectorXcd> witness;  ///< least-squares v per sample
    [[nodiscard]] bool integrable(double tol) const { return residual <= tol; }
};

/// Pointwise least squares for v with v·ρ = d_Hρ.
[[nodiscard]] IntegrabilityReport check_integrable(const Form& rho, const Structure& st, const Form& h,
                                                   const std::vector<Point>& pts);
[[nodiscard]] IntegrabilityReport check_integrable(const PureSpinor& rho, const BundleChart& ch,
                                                   const std::vector<Point>& pts);

/// Real 2N × 2N matrix of 𝒥: +i on L, −i on L̄.
[[nodiscard]] Eigen::MatrixXd gcs_endomorphism(const Form& rho, const Point& p);
[[nodiscard]] Eigen::MatrixXd gcs_from_annihilator(const Eigen::MatrixXcd& l);

/// Metric g and 2-form b on a coframe.
struct GeneralizedMetric {
    CoframePtr frame;
    ScalarMatrix g;  ///< g(eᵢ, eⱼ)
    Form b;          ///< b = Σ_{i<j} bᵢⱼ eⁱ∧eʲ

    [[nodiscard]] Eigen::MatrixXd g_at(const Point& p) const;
    /// Antisymmetric matrix b(eᵢ, eⱼ).
    [[nodiscard]] Eigen::MatrixXd b_at(const Point& p) const;
};

/// Form Σ_{i<j} mᵢⱼ eⁱ∧eʲ for an antisymmetric symbolic matrix.
[[nodiscard]] Form two_form_from_matrix(const CoframePtr& frame, const ScalarMatrix& m);
/// Symbolic matrix b(eᵢ, eⱼ) of a real 2-form.
[[nodiscard]] ScalarMatrix matrix_from_two_form(const Form& b);

/// 𝒢 = [[−g⁻¹β, g⁻¹], [g − βg⁻¹β, βg⁻¹]] with β the matrix of X ↦ i_X b.
[[nodiscard]] Eigen::MatrixXd metric_endomorphism(const Eigen::MatrixXd& g, const Eigen::MatrixXd& b);
[[nodiscard]] Eigen::MatrixXd metric_endomorphism(const GeneralizedMetric& m, const Point& p);

/// (g, b) from a basis of C₊ = graph(b + g); columns in ℂ^{2N} must be real up to round-off.
struct GB {
    Eigen::MatrixXd g;
    Eigen::MatrixXd b;
};
[[nodiscard]] GB gb_from_Cplus(const Eigen::MatrixXd& basis);

/// Basis of C± = {X + i_X b ± i_X g}.
[[nodiscard]] Eigen::MatrixXd c_plus_minus(const Eigen::MatrixXd& g, const Eigen::MatrixXd& b, int sign);

/// Bases of U^{n−k} = ∧ᵏL̄·ρ(p) for k = 0..N (so entry 0 is the canonical line).
[[nodiscard]] std::vector<Eigen::MatrixXcd> uk_spaces(const Form& rho, const Point& p);
[[nodiscard]] std::vector<Eigen::MatrixXcd> uk_spaces_of(std::size_t n, const Eigen::VectorXcd& rho);

}  // namespace tdual
