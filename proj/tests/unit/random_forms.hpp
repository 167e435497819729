#pragma once

// Seeded generators of small random expressions and forms for property tests.

#include <random>
#include <vector>

#include "leafchar/symbolics/form.hpp"

namespace leafchar::testing {

/// Random polynomial in the given symbols: up to `terms` terms, each symbol to
/// power <= max_power, small integer coefficients.
inline Expr random_polynomial(std::mt19937_64& rng, const ContextPtr& ctx, const std::vector<SymbolId>& symbols,
                              int terms = 3, int max_power = 2) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> power(0, max_power);
  std::uniform_int_distribution<int> count(1, terms);
  Expr sum = Expr::fraction(ctx, Polynomial(), Polynomial(Rational(1)));
  int n = count(rng);
  for (int t = 0; t < n; ++t) {
    Expr term(coeff(rng));
    for (auto s : symbols) {
      int p = power(rng);
      if (p > 0 && std::uniform_int_distribution<int>(0, 1)(rng)) term *= Expr::symbol(ctx, s).pow(p);
    }
    sum += term;
  }
  return sum;
}

/// Random homogeneous form of the given degree in the context's variables.
inline Form random_form(std::mt19937_64& rng, const ContextPtr& ctx, unsigned degree,
                        const std::vector<SymbolId>& coefficient_symbols, int terms = 2) {
  const auto& vars = ctx->variables();
  Form w(ctx, degree);
  if (degree > vars.size()) return w;
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  for (int t = 0; t < terms; ++t) {
    std::vector<SymbolId> key;
    while (key.size() < degree) {
      SymbolId v = vars[pick(rng)];
      if (std::find(key.begin(), key.end(), v) == key.end()) key.push_back(v);
    }
    w += Form::monomial(ctx, random_polynomial(rng, ctx, coefficient_symbols), key);
  }
  return w;
}

}  // namespace leafchar::testing
