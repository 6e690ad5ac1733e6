#pragma once

#include <stdexcept>
#include <string>

#include "dg/polynomial.hpp"

namespace dg {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    size_t pos;
};

/// Parses the expression grammar
///   expr   := ['-'] term { ('+'|'-') term }
///   term   := coef { '*' factor } | factor { '*' factor }
///   factor := ident [ '^' nat ]
///   coef   := int [ '/' nat ]
/// Whitespace is insignificant; implicit multiplication is not allowed.
Polynomial parse_polynomial(const std::string& text, const Context& ctx);

}  // namespace dg
