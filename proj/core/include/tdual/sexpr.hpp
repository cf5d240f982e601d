#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tdual/scalar.hpp"

namespace tdual {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parsed prefix expression: an atom or a parenthesized list.
struct SExpr {
    std::string atom;
    std::vector<SExpr> items;
    bool is_list = false;

    [[nodiscard]] bool is_atom() const noexcept { return !is_list; }
    [[nodiscard]] std::string to_string() const;
};

/// Parses exactly one expression; trailing non-space text is an error.
[[nodiscard]] SExpr parse_sexpr(std::string_view text);

/// Interprets an expression as a Scalar (numbers, identifiers, +, -, *, /, ^, sin, ...).
[[nodiscard]] Scalar scalar_from_sexpr(const SExpr& e);

}  // namespace tdual
