#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "tdual/bundle.hpp"

namespace tdual::tools {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A chart plus the named scalars and forms declared alongside it.
///
/// Line-oriented format, `#` starts a comment:
///
///     chart NAME
///     base VAR LO HI
///     fiber NAME
///     margin X
///     exclude SCALAR
///     scalar NAME SCALAR
///     curvature FIBER FORM
///     flux FORM
///     form NAME FORM
///
/// `$NAME` inside a scalar or form expands to a previously declared scalar.
/// base and fiber lines must precede lines that need the coframe.
struct ChartFile {
    BundleChart chart;
    std::map<std::string, Scalar> scalars;
    std::map<std::string, Form> forms;

    [[nodiscard]] const Form& form(const std::string& name) const;
    [[nodiscard]] const Scalar& scalar(const std::string& name) const;
};

[[nodiscard]] ChartFile parse_chart(std::string_view text, const std::string& origin = "<string>");
[[nodiscard]] ChartFile load_chart(const std::filesystem::path& path);

}  // namespace tdual::tools
