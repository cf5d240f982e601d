#pragma once

#include <string>
#include <vector>

#include "tdual/reduction.hpp"
#include "tdual/tools/pairs.hpp"
#include "tdual/tools/scenarios.hpp"

namespace tdual::tools::detail {

/// Structural equality: same coframe, same monomials, identical coefficients.
[[nodiscard]] bool identical(const Form& a, const Form& b);
[[nodiscard]] bool identical(const Section& a, const Section& b);

/// The same form with every fiber generator renamed to its dual.
[[nodiscard]] Form rename_to_dual(const Form& a, const BundleChart& dual);

[[nodiscard]] std::vector<Point> head(const std::vector<Point>& pts, std::size_t n);

/// max over entries and points of |a − b| / (1 + |a|).
[[nodiscard]] double relative_residual(const Scalar& a, const Scalar& b, const std::vector<Point>& pts);
[[nodiscard]] double metric_residual(const GeneralizedMetric& a, const GeneralizedMetric& b,
                                     const std::vector<Point>& pts);

/// g = g0·θ² + gb·Σ dxᵢ² on a rank-one chart, b = 0.
[[nodiscard]] GeneralizedMetric circle_metric(const BundleChart& ch, const Scalar& g0, const Scalar& gb);

struct LoadedPair {
    ChartFile file;
    DualConstruction dc;
    DualityPair d;
};
[[nodiscard]] LoadedPair load_pair(const Context& c, const std::string& file);

/// Composite Simpson rule with 2n intervals.
[[nodiscard]] double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000);
/// Gauss–Legendre rule with `order` nodes (Golub–Welsch).
[[nodiscard]] double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order = 40);

/// max over points of |d_Hρ| (closedness, stronger than integrability).
[[nodiscard]] double closedness(const Form& rho, const BundleChart& ch, const std::vector<Point>& pts);

/// Random compatible complex structure I = E O J₀ Oᵀ E⁻¹ for the metric g, E = g^{−1/2}.
[[nodiscard]] Eigen::MatrixXd random_compatible_complex(const Eigen::MatrixXd& g, std::mt19937_64& rng);

[[nodiscard]] std::string fmt(double v);

/// max over points of |a(p) − b(p)|.
[[nodiscard]] double scalar_residual(const CScalar& a, const CScalar& b, const std::vector<Point>& pts);

/// Real part of the coefficient of the named 1-form generator.
[[nodiscard]] Scalar component(const Form& one_form, const std::string& name);

/// max over `count` random forms of |d_H̃ τρ − τ d_Hρ| and of the round-trip defect.
struct IntertwiningResult {
    double intertwining = 0.0;
    double roundtrip = 0.0;
};
[[nodiscard]] IntertwiningResult intertwining(const DualityPair& d, RandomData& rd, int count,
                                              const std::vector<Point>& pts);

/// Orthogonality, bracket and τ-compatibility defects of φ over `count` random section pairs.
struct PhiResult {
    double orthogonality = 0.0;
    double bracket = 0.0;
    double compatibility = 0.0;
};
[[nodiscard]] PhiResult phi_properties(const DualityPair& d, RandomData& rd, int count,
                                       const std::vector<Point>& pts);

/// Records the double-reduction checks for a pair at every point.
void reduction_checks(Context& c, const DualityPair& d, const std::vector<Point>& pts, const std::string& label,
                      const std::string& anchor);

}  // namespace tdual::tools::detail
