#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tdual/exterior.hpp"

namespace tdual {

/// Relative singular-value threshold used for every rank decision.
inline constexpr double kRankTol = 1e-8;

/// Orthonormal basis of the nullspace of a (columns as vectors).
[[nodiscard]] Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& a, double rel_tol = kRankTol);
/// Orthonormal basis of the column space of a.
[[nodiscard]] Eigen::MatrixXcd column_space(const Eigen::MatrixXcd& a, double rel_tol = kRankTol);
[[nodiscard]] Eigen::Index rank(const Eigen::MatrixXcd& a, double rel_tol = kRankTol);
/// Largest relative distance of the columns of a from span(basis): max ‖(1−P)aⱼ‖ / ‖aⱼ‖.
[[nodiscard]] double membership_defect(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& basis);
/// Sign of the eigenvalues of a Hermitian matrix: (#positive, #negative, #zero).
struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};
[[nodiscard]] Signature signature(const Eigen::MatrixXcd& hermitian, double rel_tol = kRankTol);

/// Evaluation of all frame data at one base point.
struct PointFrame {
    std::size_t n = 0;            ///< coframe dimension N
    Eigen::MatrixXd pairing;      ///< 2N × 2N matrix of ⟨·,·⟩ in (X, ξ) components
    Eigen::VectorXcd flux;        ///< H at the point, as a 2^N vector

    PointFrame(std::size_t dim, const Form& h, const Point& p);
    explicit PointFrame(std::size_t dim);

    /// Clifford action matrix of v ∈ ℂ^{2N}.
    [[nodiscard]] Eigen::MatrixXcd clifford(const Eigen::VectorXcd& v) const {
        return pointwise::clifford_matrix(n, v);
    }
    /// Matrix whose column j is eⱼ·ρ for the standard basis (∂₁..∂_N, e¹..eᴺ).
    [[nodiscard]] Eigen::MatrixXcd action_on(const Eigen::VectorXcd& rho) const;
};

/// Standard split pairing ½[[0, I], [I, 0]] on ℂ^{2N}.
[[nodiscard]] Eigen::MatrixXd pairing_matrix(std::size_t n);

}  // namespace tdual
