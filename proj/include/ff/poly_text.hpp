#pragma once

#include <span>
#include <string>

#include "ff/polynomial.hpp"

namespace ff {

/// Parses the linear-combination text format: terms separated by + / -, each
/// term an optional rational or decimal coefficient and '*'-separated variable
/// powers, e.g. "1 + x1^2", "-x1^2 + x2^2 + x3^2", "3/2*x1*y1".
/// Variable names are resolved against `names`; unknown names throw
/// std::invalid_argument.
Polynomial parse_polynomial(const std::string& text, std::span<const std::string> names);

}  // namespace ff
