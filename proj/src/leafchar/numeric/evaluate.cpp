#include "leafchar/numeric/evaluate.hpp"

#include "leafchar/error.hpp"

namespace leafchar {

namespace {

Real evaluate_polynomial(const Polynomial& p, const std::vector<std::optional<Real>>& values,
                         const ContextPtr& ctx) {
  Real total = 0;
  for (const auto& [mono, coef] : p.terms()) {
    Real term = to_real(coef);
    for (std::size_t id = 0; id < mono.size(); ++id) {
      if (mono[id] == 0) continue;
      if (id >= values.size() || !values[id])
        throw Error(ErrorCode::MissingComponent,
                    "no value for " + (ctx ? ctx->names().at(id) : "symbol " + std::to_string(id)));
      term *= boost::multiprecision::pow(*values[id], static_cast<int>(mono[id]));
    }
    total += term;
  }
  return total;
}

}  // namespace

Real evaluate(const Expr& e, const std::vector<std::optional<Real>>& values) {
  Real den = evaluate_polynomial(e.denominator(), values, e.context());
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator vanishes at the evaluation point");
  return evaluate_polynomial(e.numerator(), values, e.context()) / den;
}

}  // namespace leafchar
