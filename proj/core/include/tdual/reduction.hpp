#pragma once

#include <vector>

#include "tdual/duality.hpp"

namespace tdual {

/// Generators Ψ(γ₁..γ_m) at a point, as columns in the 2N-dim pairing space.
struct LiftedActionPoint {
    std::size_t n = 0;
    Eigen::MatrixXd generators;
    bool degenerate = false;  ///< generators linearly dependent

    LiftedActionPoint(std::size_t dim, Eigen::MatrixXd gens);
};

struct ReducedSpace {
    Eigen::MatrixXd k_perp;
    Eigen::MatrixXd k_cap;      ///< K ∩ K^⊥
    Eigen::MatrixXd quotient;   ///< representatives of K^⊥ / (K ∩ K^⊥)
    Eigen::MatrixXd pairing;    ///< induced pairing on the quotient representatives
    Signature signature;
    double well_defined_defect = 0.0;  ///< max |⟨K ∩ K^⊥, K^⊥⟩|
    bool exact = false;                ///< K isotropic
};

[[nodiscard]] ReducedSpace reduce_pointwise(const LiftedActionPoint& a);

/// Lift of the doubled torus on the correspondence: ∂θᵢ + i_{∂θᵢ}F, then ∂θ̃ⱼ.
[[nodiscard]] std::vector<Section> duality_lift(const CorrespondenceChart& corr);

struct PairingConstancy {
    double variation = 0.0;  ///< max |⟨Ψᵢ,Ψⱼ⟩(p) − ⟨Ψᵢ,Ψⱼ⟩(p₀)|
    bool constant = false;
};
[[nodiscard]] PairingConstancy check_pairing_constant(const std::vector<Section>& psi, const std::vector<Point>& pts,
                                                      double tol = 1e-9);

struct ReductionReport {
    double k_isotropy = 0.0;       ///< max |⟨K,K⟩|
    double k_dual_isotropy = 0.0;  ///< max |⟨K̃,K̃⟩|
    Signature doubled;             ///< signature of the pairing on 𝒦 = K ⊕ K̃
    int rank = 0;
    double basic_defect = 0.0;     ///< covector parts along the collapsed fibers
    double isometry_m = 0.0;       ///< pairing defect of 𝒦^⊥ → T⊕T* of M
    double isometry_dual = 0.0;    ///< pairing defect of 𝒦^⊥ → T⊕T* of M̃
    double phi_defect = 0.0;       ///< composite route versus φ

    [[nodiscard]] bool split() const { return doubled.positive == rank && doubled.negative == rank && doubled.zero == 0; }
    [[nodiscard]] double max_defect() const;
    [[nodiscard]] bool ok(double tol) const { return split() && max_defect() <= tol; }
};

/// Builds 𝒦 = K ⊕ K̃ from duality_lift at p and checks both routes from 𝒦^⊥.
[[nodiscard]] ReductionReport duality_via_reduction(const DualityPair& d, const Point& p);

/// Pointwise data on N = M × M̃ with the correspondence embedded along the diagonal of the base.
struct ProductFrame {
    std::size_t n_m = 0;
    std::size_t n_dual = 0;
    Eigen::MatrixXd embed;  ///< (n_m + n_dual) × dim(correspondence)
};
[[nodiscard]] ProductFrame product_frame(const CorrespondenceChart& corr);

/// τ_F = {X + ξ : X ∈ Tℳ, ξ|ℳ = i_X F} as columns in the pairing space of N.
[[nodiscard]] Eigen::MatrixXd generalized_tangent(const CorrespondenceChart& corr, const Point& p);

struct TransversalityReport {
    Eigen::Index intersection_dim = 0;  ///< dim(τ_F ∩ (TM ⊕ T*M))
    bool transversal = false;
    bool block_nondegenerate = false;
    [[nodiscard]] bool agree() const { return transversal == block_nondegenerate; }
};
[[nodiscard]] TransversalityReport check_transversal(const CorrespondenceChart& corr, const Point& p);

struct FourierMukaiReport {
    double invariance_defect = 0.0;  ///< τ_F under 𝒥 ⊕ c𝒥̃c⁻¹
    double conjugation_defect = 0.0; ///< |𝒥̃ − φ𝒥φ⁻¹|
    bool invariant = false;
    bool conjugate = false;
    [[nodiscard]] bool agree() const { return invariant == conjugate; }
};
[[nodiscard]] FourierMukaiReport check_fourier_mukai(const Form& rho, const Form& rho_dual, const DualityPair& d,
                                                     const Point& p, double tol = 1e-8);

}  // namespace tdual
