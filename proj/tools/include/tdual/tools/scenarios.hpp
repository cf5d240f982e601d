#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tdual/tools/chart_file.hpp"
#include "tdual/tools/random_data.hpp"
#include "tdual/tools/report.hpp"

namespace tdual::tools {

struct RunOptions {
    std::uint64_t seed = 20070401;
    std::size_t samples = 32;
    std::optional<double> tol;  ///< overrides every numeric tolerance when set
    std::filesystem::path scenarios_dir;
};

/// State shared by the checks of one scenario run.
class Context {
public:
    Context(std::string scenario, RunOptions opts);

    [[nodiscard]] const RunOptions& options() const noexcept { return opts_; }
    [[nodiscard]] Sampling sampling() const { return {opts_.seed, opts_.samples, opts_.tol.value_or(1e-9)}; }
    [[nodiscard]] RandomData& random() noexcept { return random_; }
    [[nodiscard]] ChartFile load(const std::string& file) const;
    [[nodiscard]] std::vector<Point> points(const BundleChart& ch) const;

    /// Records residual ≤ tol.
    void check(const std::string& name, const std::string& anchor, double residual, double tol,
               const std::string& notes = "");
    /// Records a predicate as residual 0 (holds) or 1 (fails) against tolerance 0.
    void check_true(const std::string& name, const std::string& anchor, bool ok, const std::string& notes = "");
    /// Records an exception thrown by a check body as a failure.
    void guard(const std::string& name, const std::string& anchor, const std::function<void()>& body);

    [[nodiscard]] Report& report() noexcept { return report_; }

private:
    RunOptions opts_;
    RandomData random_;
    Report report_;
};

struct ScenarioInfo {
    std::string name;
    std::string summary;
    std::function<void(Context&)> run;
};

/// All registered scenarios; the first seven are the end-to-end examples, the rest are property suites.
[[nodiscard]] const std::vector<ScenarioInfo>& scenarios();
[[nodiscard]] const ScenarioInfo* find_scenario(const std::string& name);
/// Runs one scenario; throws std::invalid_argument for an unknown name.
[[nodiscard]] Report run_scenario(const std::string& name, const RunOptions& opts);

// Scenario bodies.
void run_s3_hopf(Context& c);
void run_s3_selfdual(Context& c);
void run_s2_annulus(Context& c);
void run_hopf_surface(Context& c);
void run_gibbons_hawking(Context& c);
void run_buscher_random(Context& c);
void run_reduction_suite(Context& c);
void run_clifford_axioms(Context& c);
void run_intertwining(Context& c);
void run_courant_iso(Context& c);
void run_circle_formula(Context& c);
void run_type_change(Context& c);
void run_integrability(Context& c);
void run_uk_transport(Context& c);

}  // namespace tdual::tools
