#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tdual::tools {

/// One verified identity.
struct CheckRecord {
    std::string name;
    std::string anchor;     ///< the mathematical statement being checked
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string notes;      ///< sign conventions and context
    std::uint64_t seed = 0;
};

struct Report {
    std::string scenario;
    std::vector<CheckRecord> records;

    [[nodiscard]] bool all_pass() const;
    [[nodiscard]] std::size_t failures() const;
};

/// One JSON object per record, one per line.
void write_jsonl(std::ostream& os, const Report& r);
/// Aligned table: status, residual, tolerance, name.
void write_summary(std::ostream& os, const Report& r);

}  // namespace tdual::tools
