#include "tdual/tools/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace tdual::tools {

bool Report::all_pass() const { return failures() == 0; }

std::size_t Report::failures() const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.pass; }));
}

void write_jsonl(std::ostream& os, const Report& r) {
    for (const auto& c : r.records) {
        nlohmann::ordered_json j;
        j["scenario"] = r.scenario;
        j["name"] = c.name;
        j["anchor"] = c.anchor;
        j["residual"] = c.residual;
        j["tolerance"] = c.tolerance;
        j["pass"] = c.pass;
        j["notes"] = c.notes;
        j["seed"] = c.seed;
        os << j.dump() << '\n';
    }
}

void write_summary(std::ostream& os, const Report& r) {
    char buf[64];
    os << "scenario " << r.scenario << ": " << r.records.size() - r.failures() << "/" << r.records.size()
       << " checks pass\n";
    for (const auto& c : r.records) {
        std::snprintf(buf, sizeof buf, "%-4s  %11.3e  %9.1e  ", c.pass ? "ok" : "FAIL", c.residual, c.tolerance);
        os << "  " << buf << c.name << '\n';
    }
}

}  // namespace tdual::tools
