#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tdual/duality.hpp"
#include "tdual/tools/random_data.hpp"

namespace tdual::tools {

/// Pair built from the canonical dual of `ch`.
[[nodiscard]] DualityPair dual_pair(const BundleChart& ch);

/// Flat chart (zero curvature, zero flux) on a box.
[[nodiscard]] BundleChart flat_chart(const std::string& name,
                                     const std::vector<std::pair<std::string, std::pair<double, double>>>& base,
                                     const std::vector<std::string>& fibers);

/// Rank-two pair with a fiber-mixing term: M carries H + s·d(θ₁∧θ₂) over a random base
/// and F = −Σθᵢ∧θ̃ᵢ + s·θ₁∧θ₂ + β with β closed and basic.
struct MixedPair {
    BundleChart m;
    DualityPair pair;
};
[[nodiscard]] MixedPair mixed_pair(RandomData& rd, Rational s);

enum class FiberKind { Complex, Real, Symplectic, Lagrangian, Other };
[[nodiscard]] const char* to_string(FiberKind k) noexcept;

/// Classifies the fibers relative to the structure of ρ at p: for type 0 by the rank of ω on the fibers,
/// otherwise by the rank of the (1,0)-forms restricted to the fibers.
[[nodiscard]] FiberKind classify_fibers(const Form& rho, const BundleChart& ch, const Point& p);

/// The four constant models of the type-change table on the flat T² bundle over ℝ².
struct TableRow {
    std::string label;
    PureSpinor rho;
    int type_m;
    FiberKind fibers_m;
    int type_dual;
    FiberKind fibers_dual;
};
[[nodiscard]] BundleChart table_chart();
[[nodiscard]] std::vector<TableRow> table_rows(const BundleChart& ch);

}  // namespace tdual::tools
