#pragma once

#include <random>

#include "tdual/structures.hpp"

namespace tdual::tools {

/// Seeded generator of random invariant data on a chart (coefficients depend on base variables only).
class RandomData {
public:
    explicit RandomData(std::uint64_t seed) : rng_(seed) {}

    [[nodiscard]] std::mt19937_64& rng() noexcept { return rng_; }
    [[nodiscard]] int integer(int lo, int hi);
    [[nodiscard]] double uniform(double lo, double hi);
    [[nodiscard]] Rational rational();

    /// Small random expression in the given variables (polynomial, trigonometric or exponential terms).
    [[nodiscard]] Scalar scalar(const std::vector<std::string>& vars);
    /// Strictly positive expression on any box.
    [[nodiscard]] Scalar positive(const std::vector<std::string>& vars);
    [[nodiscard]] CScalar cscalar(const std::vector<std::string>& vars);

    /// Random form on the chart; each monomial kept with probability `density`.
    [[nodiscard]] Form form(const BundleChart& ch, bool complex = true, double density = 0.5);
    [[nodiscard]] Form form_degree(const BundleChart& ch, int k, bool complex, double density = 0.7);
    /// Closed basic 2-form d(a) for a random basic 1-form a.
    [[nodiscard]] Form closed_basic_two_form(const BundleChart& ch);
    [[nodiscard]] Section section(const BundleChart& ch, bool complex = false);
    /// Random spinor data e^{B+iω}∧Ω with Ω a product of `m` random complex 1-forms.
    [[nodiscard]] PureSpinor spinor(const BundleChart& ch, int m);
    /// Positive-definite metric L Lᵀ with L lower triangular and positive diagonal.
    [[nodiscard]] ScalarMatrix metric(const BundleChart& ch);

private:
    std::mt19937_64 rng_;
};

}  // namespace tdual::tools
