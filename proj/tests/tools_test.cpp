#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "tdual/tools/chart_file.hpp"
#include "tdual/tools/pairs.hpp"
#include "tdual/tools/report.hpp"
#include "tdual/tools/scenarios.hpp"

namespace tdual::tools {
namespace {

constexpr const char* kChart = R"(# flat circle bundle with a scalar macro
chart demo
base x -1 1
base y 0 2
fiber th
scalar f (+ 1 (^ x 2))
curvature th (form (term $f 0 dx dy))
form omega (form (term 1 0 dx th))
)";

TEST(ChartFile, ParsesChartsScalarsAndForms) {
    ChartFile f = parse_chart(kChart);
    EXPECT_EQ(f.chart.name(), "demo");
    EXPECT_EQ(f.chart.base_vars(), (std::vector<std::string>{"x", "y"}));
    EXPECT_EQ(f.chart.fibers(), (std::vector<std::string>{"th"}));
    const Point p = f.chart.sample({7, 1, 1e-9}).front();
    EXPECT_DOUBLE_EQ(f.scalar("f").eval(p), 1.0 + p.at("x") * p.at("x"));
    EXPECT_FALSE(f.form("omega").is_zero());
    EXPECT_TRUE(validate_chart(f.chart, {7, 8, 1e-9}).ok(1e-9));
}

TEST(ChartFile, ReportsMalformedInput) {
    EXPECT_THROW((void)parse_chart("chart a\nbase x 0\n"), ConfigError);
    EXPECT_THROW((void)parse_chart("chart a\nbase x 0 1\nfiber t\ncurvature s (form)\n"), ConfigError);
    EXPECT_THROW((void)parse_chart("chart a\nbase x 0 1\nbogus 1\n"), ConfigError);
    EXPECT_THROW((void)parse_chart("chart a\nbase x 0 1\nscalar f (+ $g 1)\n"), ConfigError);
    EXPECT_THROW((void)parse_chart(kChart).form("missing"), ConfigError);
    EXPECT_THROW((void)load_chart("/nonexistent/file.chart"), ConfigError);
}

TEST(ChartFile, ShippedScenarioChartsValidate) {
    for (const char* name : {"hopf", "hopf-flux", "hopf4", "s2", "hopf-surface", "gibbons-hawking"}) {
        ChartFile f = load_chart(std::filesystem::path(TDUAL_SCENARIOS_DIR) / (std::string(name) + ".chart"));
        EXPECT_TRUE(validate_chart(f.chart, {7, 16, 1e-9}).ok(1e-9)) << name;
    }
}

TEST(Report, JsonLinesCarryEveryField) {
    Report r{"demo", {{"first", "anchor", 1e-12, 1e-9, true, "note", 5}, {"second", "a", 2.0, 1.0, false, "", 5}}};
    std::ostringstream os;
    write_jsonl(os, r);
    std::istringstream in(os.str());
    std::string line;
    int count = 0;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        for (const char* key : {"scenario", "name", "anchor", "residual", "tolerance", "pass", "notes", "seed"})
            EXPECT_TRUE(j.contains(key)) << key;
        EXPECT_EQ(j["scenario"], "demo");
        ++count;
    }
    EXPECT_EQ(count, 2);
    EXPECT_EQ(r.failures(), 1u);
    EXPECT_FALSE(r.all_pass());
}

TEST(Scenarios, RegistryIsCompleteAndLookupWorks) {
    EXPECT_EQ(scenarios().size(), 14u);
    EXPECT_NE(find_scenario("s2-annulus"), nullptr);
    EXPECT_EQ(find_scenario("nope"), nullptr);
    RunOptions opts;
    opts.scenarios_dir = TDUAL_SCENARIOS_DIR;
    EXPECT_THROW((void)run_scenario("nope", opts), std::invalid_argument);
}

TEST(Scenarios, RunsAreReproducibleForAFixedSeed) {
    RunOptions opts;
    opts.scenarios_dir = TDUAL_SCENARIOS_DIR;
    opts.samples = 8;
    std::ostringstream a;
    std::ostringstream b;
    write_jsonl(a, run_scenario("s3-hopf", opts));
    write_jsonl(b, run_scenario("s3-hopf", opts));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_FALSE(a.str().empty());
}

TEST(TypeChangeTable, RowsMatchTheirDeclaredTypesAndFibers) {
    BundleChart t = table_chart();
    DualityPair d = dual_pair(t);
    const Point p = t.sample({7, 1, 1e-9}).front();
    const auto rows = table_rows(t);
    ASSERT_EQ(rows.size(), 4u);
    for (const TableRow& row : rows) {
        const Form dual = tau(row.rho.rho, d);
        EXPECT_EQ(spinor_type(row.rho.rho, p), row.type_m) << row.label;
        EXPECT_EQ(spinor_type(dual, p), row.type_dual) << row.label;
        EXPECT_EQ(classify_fibers(row.rho.rho, t, p), row.fibers_m) << row.label;
        EXPECT_EQ(classify_fibers(dual, d.dual(), p), row.fibers_dual) << row.label;
    }
}

}  // namespace
}  // namespace tdual::tools
