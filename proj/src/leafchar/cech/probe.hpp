#pragma once

#include <map>
#include <string>
#include <vector>

#include "leafchar/numeric/real.hpp"
#include "leafchar/reeb/profile.hpp"
#include "leafchar/symbolics/form.hpp"

namespace leafchar {

/// lambda = sum_n lambda_n d(b_n) over n = 0 and n >= 2. Coefficients are
/// expressions in b0, b2, ..., tau, sin(tau*b0) and cos(tau*b0).
struct ProbeCandidate {
  std::string description;
  std::map<unsigned, std::string> components;
};

/// zero, dbeta2, beta2sq_sin, beta3_sin, sin_dbeta0, not_closed,
/// not_periodic. `c` is the constant of dbeta2.
ProbeCandidate preset_candidate(const std::string& name, const Rational& c = Rational(3, 2));
std::vector<std::string> preset_candidate_names();

struct ProbeOptions {
  unsigned k_max = 4;       ///< grid y0 = 1 - 10^-k, k = 1..k_max
  unsigned bits = 256;      ///< base precision
  long tau_multiple = 1;    ///< tau = 2 pi tau_multiple
  double bound_factor = 10;       ///< bounded: max |v_k| <= factor * max(1, |v_1|)
  double divergence_growth = 100; ///< diverges: increasing and v_last >= growth * v_1
};

struct ProbeTerm {
  std::string name;
  Expr symbolic;  ///< in the quotient chart
  std::vector<Real> values;
  bool bounded = false;
};

/// Finite evidence only: the probe checks one candidate on a finite grid.
struct ProbeReport {
  std::string candidate;
  std::string profile;
  unsigned order = 0;
  Form lambda;
  bool closed = false;
  bool periodic = false;
  /// dy0 coefficient of phi^*(b2 db0 + lambda).
  Expr a0;
  /// a0 equals y2 + f''/f' - (lambda0 o phi) f' + sum (lambda_n o phi) d beta_n/dy0.
  bool decomposition_matches = false;
  std::vector<Rational> grid;
  std::vector<unsigned> precision;  ///< bits used at each grid point
  ProbeTerm main;                   ///< y2 + f''/f'
  std::vector<ProbeTerm> corrections;
  bool main_diverges = false;
  bool corrections_bounded = false;
  bool contradiction = false;
  static constexpr bool evidence_only = true;
};

/// Throws CandidateNotClosed, CandidateNotPeriodic, PrecisionInsufficient,
/// ParseError.
ProbeReport nontriviality_probe(const ProbeCandidate& candidate, const ReebProfile& f, const ProbeOptions& opts = {});

}  // namespace leafchar
