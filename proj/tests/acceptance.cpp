#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "tdual/tools/scenarios.hpp"

namespace {

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> scenarios;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "Clifford-module axioms and Mukai B-invariance", {"clifford-axioms"}},
        {2, "tau intertwines d_H and d_H~ (Hopf and mixed rank-two pairs)", {"intertwining"}},
        {3, "phi is a Courant isomorphism compatible with tau", {"courant-iso"}},
        {4, "circle formula for phi", {"circle-formula"}},
        {5, "Buscher rules equal transported metric", {"buscher-random"}},
        {6, "S2 annulus example", {"s2-annulus"}},
        {7, "type change and the fiber table", {"type-change"}},
        {8, "integrability transport", {"integrability"}},
        {9, "Gibbons-Hawking example", {"gibbons-hawking"}},
        {10, "duality via reduction", {"reduction-suite"}},
        {11, "U^k transport", {"uk-transport"}},
    };
    return list;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace tdual::tools;
    RunOptions opts;
    opts.scenarios_dir = argc > 1 ? argv[1] : TDUAL_SCENARIOS_DIR;

    int failed = 0;
    for (const Criterion& c : criteria()) {
        std::size_t total = 0;
        std::size_t bad = 0;
        std::string first_failure;
        for (const auto& name : c.scenarios) {
            Report r = run_scenario(name, opts);
            total += r.records.size();
            bad += r.failures();
            for (const auto& rec : r.records)
                if (!rec.pass && first_failure.empty()) first_failure = name + ": " + rec.name;
        }
        const bool pass = total > 0 && bad == 0;
        if (!pass) ++failed;
        char line[160];
        std::snprintf(line, sizeof line, "%s  %2d  %-64s %zu/%zu checks", pass ? "PASS" : "FAIL", c.id,
                      c.title.c_str(), total - bad, total);
        std::cout << line;
        if (!first_failure.empty()) std::cout << "  first failure: " << first_failure;
        std::cout << '\n';
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << '\n';
    return failed == 0 ? 0 : 1;
}
