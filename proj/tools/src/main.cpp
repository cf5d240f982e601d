#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tdual/tools/scenarios.hpp"

int main(int argc, char** argv) {
    using namespace tdual::tools;

    CLI::App app{"T-duality scenario runner"};
    app.require_subcommand(0, 1);
    bool list = false;
    app.add_flag("--list", list, "List the available scenarios");

    RunOptions opts;
    opts.scenarios_dir = TDUAL_SCENARIOS_DIR;
    std::string name;
    std::string out;
    double tol = 0.0;
    std::string dir = opts.scenarios_dir.string();

    CLI::App* run = app.add_subcommand("run", "Run one scenario, or 'all'");
    run->add_option("scenario", name, "Scenario name")->required();
    run->add_option("--seed", opts.seed, "Random seed")->capture_default_str();
    run->add_option("--samples", opts.samples, "Sample points per identity check")->capture_default_str()
        ->check(CLI::PositiveNumber);
    CLI::Option* tol_opt = run->add_option("--tol", tol, "Override every numeric tolerance")->check(CLI::PositiveNumber);
    run->add_option("--out", out, "Write JSON lines to this file instead of stdout");
    run->add_option("--scenarios", dir, "Directory holding the chart files")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (list || !*run) {
        for (const auto& s : scenarios()) std::cout << s.name << "  " << s.summary << '\n';
        return 0;
    }
    if (*tol_opt) opts.tol = tol;
    opts.scenarios_dir = dir;

    std::vector<std::string> names;
    if (name == "all") {
        for (const auto& s : scenarios()) names.push_back(s.name);
    } else if (!find_scenario(name)) {
        std::cerr << "unknown scenario '" << name << "'; see --list\n";
        return 2;
    } else {
        names.push_back(name);
    }

    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) {
            std::cerr << "cannot open " << out << '\n';
            return 2;
        }
    }
    std::ostream& jsonl = out.empty() ? std::cout : file;

    bool ok = true;
    for (const auto& n : names) {
        Report r = run_scenario(n, opts);
        write_jsonl(jsonl, r);
        write_summary(out.empty() ? std::cerr : std::cout, r);
        ok = ok && r.all_pass();
    }
    return ok ? 0 : 1;
}
