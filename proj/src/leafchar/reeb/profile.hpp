#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leafchar/numeric/real.hpp"
#include "leafchar/parse/ast.hpp"

namespace leafchar {

/// Profile f on |t| < 1, given by an expression in t.
struct ReebProfile {
  std::string description;
  AstPtr ast;
  bool is_default = false;

  /// f(t), f'(t), ..., f^(order)(t) at the current default precision.
  std::vector<Real> jet(const Real& t, unsigned order) const;
};

/// exp(1/(1-t^2)) - exp(1).
ReebProfile default_profile();
/// Parses an expression in t; throws ParseError.
ReebProfile profile_from_expression(const std::string& text);

/// t_k = 1 - 10^-k as an exact rational.
Rational tail_point(unsigned k);

struct NamedCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ProfileReport {
  unsigned precision = 0;
  std::vector<NamedCheck> checks;
  bool passed() const;
};

/// Conditions f(0) = 0, evenness and nonnegativity on `grid`, and the
/// boundary behavior along t_k, k = 1..tail_k: |f^(p)| increasing without
/// bound and |(1/f')^(p)| decreasing to 0 for p = 0..max_order.
ProfileReport check_profile_conditions(const ReebProfile& f, const std::vector<Rational>& grid, unsigned max_order,
                                       unsigned bits, unsigned tail_k = 4);

struct LimitSample {
  unsigned k = 0;
  Real t;
  Real ratio;             ///< f^(n) / (f')^n
  Real ratio_derivative;  ///< d/dt of the ratio
};

struct LimitSeries {
  unsigned n = 0;
  std::vector<LimitSample> samples;
  bool decreasing = false;  ///< |ratio| strictly decreasing in k
  std::optional<Real> threshold;
  std::optional<bool> below_threshold;
};

struct LimitReport {
  unsigned precision = 0;
  unsigned n_max = 0, k_max = 0;
  std::vector<LimitSeries> ratios;
  std::vector<Real> second_over_first;  ///< f''/f' at t_k
  bool increasing = false;
  std::optional<Real> divergence_threshold;
  std::optional<bool> exceeds_threshold;
  bool passed() const;
};

/// Thresholds exist for the default profile only (n <= 6, k_max <= 6):
/// |ratio(t_kmax)| must stay below twice the reference value and f''/f' must
/// exceed half of it.
LimitReport check_limit_conditions(const ReebProfile& f, unsigned n_max, unsigned k_max, unsigned bits);

/// Reference value |f^(n)/(f')^n|(t_k) for the default profile, as text.
const char* golden_ratio(unsigned n, unsigned k);
const char* golden_second_over_first(unsigned k);

}  // namespace leafchar
