#pragma once

#include <functional>
#include <string>
#include <vector>

#include "divprop/types.hpp"

namespace divprop {

using RateFn = std::function<double(double)>;

// Parse an arithmetic expression in the variable t. Supported: decimal
// literals, t, + - * /, ^ with integer exponent, exp(...), ln(...), unary
// minus, parentheses. Throws Errc::parse_error on malformed input.
RateFn parse_rate(const std::string& expr);

// Piecewise-linear interpolant through (times[i], values[i]); clamps outside
// the table range. Times must be strictly increasing.
RateFn tabulated_rate(std::vector<double> times, std::vector<double> values);

}  // namespace divprop
