#pragma once

#include <optional>
#include <vector>

#include "leafchar/numeric/real.hpp"
#include "leafchar/symbolics/expr.hpp"

namespace leafchar {

/// Numeric value of an Expr; values[i] is the value of symbol i of the
/// Expr's context. Throws MissingComponent for a needed symbol without a
/// value and DivisionByZero when the denominator evaluates to 0.
Real evaluate(const Expr& e, const std::vector<std::optional<Real>>& values);

}  // namespace leafchar
