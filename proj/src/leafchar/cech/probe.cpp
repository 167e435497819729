#include "leafchar/cech/probe.hpp"

#include <algorithm>

#include "leafchar/error.hpp"
#include "leafchar/jets/extension.hpp"
#include "leafchar/numeric/evaluate.hpp"
#include "leafchar/parse/ast.hpp"

namespace leafchar {

namespace {

std::string idx(unsigned n) { return std::to_string(n); }

struct ProbeCharts {
  ContextPtr beta, quotient;
  ChartMap phi, shift;
  JetMapExpr ext;
  std::vector<SymbolId> source;
};

ProbeCharts make_charts(unsigned order) {
  ProbeCharts c;
  ContextBuilder bb;
  bb.variable("b0");
  for (unsigned n = 2; n <= order; ++n) bb.variable("b" + idx(n));
  bb.constant("tau");
  bb.dependent("S", "b0", [](const ContextPtr& ctx) { return Expr::symbol(ctx, "tau") * Expr::symbol(ctx, "C"); });
  bb.dependent("C", "b0", [](const ContextPtr& ctx) { return -(Expr::symbol(ctx, "tau") * Expr::symbol(ctx, "S")); });
  c.beta = bb.build();

  ContextBuilder yb;
  yb.variable("y0");
  for (unsigned n = 2; n <= order; ++n) yb.variable("y" + idx(n));
  yb.chain("f", "y0", order + 2);
  yb.constant("tau");
  yb.dependent("Sf", "y0", [](const ContextPtr& ctx) {
    return -(Expr::symbol(ctx, "tau") * Expr::symbol(ctx, "f_1") * Expr::symbol(ctx, "Cf"));
  });
  yb.dependent("Cf", "y0", [](const ContextPtr& ctx) {
    return Expr::symbol(ctx, "tau") * Expr::symbol(ctx, "f_1") * Expr::symbol(ctx, "Sf");
  });
  c.quotient = yb.build();

  c.source.push_back(c.quotient->id("y0"));
  for (unsigned n = 2; n <= order; ++n) c.source.push_back(c.quotient->id("y" + idx(n)));
  c.ext = extend_morphism(c.quotient, "f", c.source, order);

  c.phi = ChartMap{c.quotient, c.beta, std::vector<std::optional<Expr>>(c.beta->size())};
  c.phi.set("b0", c.ext.beta0);
  for (unsigned n = 2; n <= order; ++n) c.phi.set("b" + idx(n), c.ext.component(n));
  c.phi.set("tau", Expr::symbol(c.quotient, "tau"));
  c.phi.set("S", Expr::symbol(c.quotient, "Sf"));
  c.phi.set("C", Expr::symbol(c.quotient, "Cf"));

  c.shift = ChartMap::identity(c.beta);
  c.shift.set("b0", Expr::symbol(c.beta, "b0") + 1);
  return c;
}

bool strictly_increasing(const std::vector<Real>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

}  // namespace

std::vector<std::string> preset_candidate_names() {
  return {"zero", "dbeta2", "beta2sq_sin", "beta3_sin", "sin_dbeta0", "not_closed", "not_periodic"};
}

ProbeCandidate preset_candidate(const std::string& name, const Rational& c) {
  if (name == "zero") return {"lambda = 0", {}};
  if (name == "dbeta2") return {"lambda = " + c.get_str() + " d(beta2)", {{2, c.get_str()}}};
  if (name == "beta2sq_sin")
    return {"lambda = d(beta2^2 sin(tau beta0))", {{0, "tau*b2^2*cos(tau*b0)"}, {2, "2*b2*sin(tau*b0)"}}};
  if (name == "beta3_sin")
    return {"lambda = d(beta3 sin(tau beta0))", {{0, "tau*b3*cos(tau*b0)"}, {3, "sin(tau*b0)"}}};
  if (name == "sin_dbeta0") return {"lambda = sin(tau beta0) d(beta0)", {{0, "sin(tau*b0)"}}};
  if (name == "not_closed") return {"lambda = beta2 d(beta0)", {{0, "b2"}}};
  if (name == "not_periodic") return {"lambda = beta0 d(beta0)", {{0, "b0"}}};
  throw Error(ErrorCode::InvalidArgument, "unknown candidate " + name);
}

ProbeReport nontriviality_probe(const ProbeCandidate& candidate, const ReebProfile& f, const ProbeOptions& opts) {
  if (opts.k_max < 2) throw Error(ErrorCode::InvalidArgument, "probe grid needs k_max >= 2");
  if (opts.tau_multiple == 0) throw Error(ErrorCode::InvalidArgument, "tau multiple must be nonzero");
  unsigned order = 2;
  for (const auto& [n, text] : candidate.components) {
    if (n == 1) throw Error(ErrorCode::InvalidArgument, "lambda has no d(beta1) component");
    order = std::max(order, n);
  }
  std::vector<AstPtr> asts;
  for (const auto& [n, text] : candidate.components) asts.push_back(parse_expression(text));
  // coefficients may mention b_m beyond the largest differential
  auto mentioned = [](const Ast& a, auto&& self, unsigned& m) -> void {
    if (a.kind == Ast::Kind::Symbol && a.name.size() > 1 && a.name[0] == 'b' &&
        std::all_of(a.name.begin() + 1, a.name.end(), ::isdigit))
      m = std::max(m, static_cast<unsigned>(std::stoul(a.name.substr(1))));
    for (const auto& c : a.args) self(*c, self, m);
  };
  for (const auto& a : asts) mentioned(*a, mentioned, order);

  ProbeCharts ch = make_charts(order);
  ProbeReport r;
  r.candidate = candidate.description;
  r.profile = f.description;
  r.order = order;

  std::vector<TrigPair> trig{
      TrigPair{"S", "C", Expr::symbol(ch.beta, "tau") * Expr::symbol(ch.beta, "b0")}};
  std::map<unsigned, Expr> lam;
  r.lambda = Form(ch.beta, 1);
  {
    std::size_t i = 0;
    for (const auto& [n, text] : candidate.components) {
      Expr coef = to_expr(*asts[i++], ch.beta, trig);
      lam.emplace(n, coef);
      r.lambda += coef * Form::differential(ch.beta, "b" + idx(n));
    }
  }

  Form dl = exterior_derivative(r.lambda);
  if (!dl.is_zero()) throw Error(ErrorCode::CandidateNotClosed, "d lambda = " + dl.to_string());
  r.closed = true;
  Form shifted = pullback(ch.shift, r.lambda);
  if (!shifted.equals(r.lambda))
    throw Error(ErrorCode::CandidateNotPeriodic, "T^* lambda - lambda = " + (shifted - r.lambda).to_string());
  r.periodic = true;

  Form gamma = Expr::symbol(ch.beta, "b2") * Form::differential(ch.beta, "b0") + r.lambda;
  Form pulled = pullback(ch.phi, gamma);
  const SymbolId y0 = ch.quotient->id("y0");
  r.a0 = pulled.coefficient(FormKey{y0});

  const ContextPtr& q = ch.quotient;
  Expr f1 = Expr::symbol(q, "f_1"), f2 = Expr::symbol(q, "f_2");
  r.main = ProbeTerm{"y2 + f''/f'", Expr::symbol(q, "y2") + f2 / f1, {}, false};
  Expr total = r.main.symbolic;
  for (const auto& [n, coef] : lam) {
    Expr composed = pullback(ch.phi, coef);
    ProbeTerm t;
    if (n == 0) {
      t.name = "-(lambda0 o phi) f'";
      t.symbolic = -(composed * f1);
    } else {
      t.name = "(lambda" + idx(n) + " o phi) d(beta" + idx(n) + ")/dy0";
      t.symbolic = composed * extension_closed_form(q, "f", ch.source, n).derivative(y0);
    }
    total = total + t.symbolic;
    r.corrections.push_back(std::move(t));
  }
  r.decomposition_matches = expr_equal(total, r.a0);

  // numeric evidence along y0 = t_k, y_n = 0
  for (unsigned k = 1; k <= opts.k_max; ++k) {
    Rational tq = tail_point(k);
    r.grid.push_back(tq);
    long exponent = 0;
    {
      PrecisionGuard g(opts.bits);
      Real f0 = f.jet(to_real(tq), 0)[0];
      exponent = std::max(0L, binary_exponent(f0) + 3 + static_cast<long>(std::abs(opts.tau_multiple)));
    }
    unsigned bits = opts.bits + static_cast<unsigned>(exponent) + 64;
    r.precision.push_back(bits);
    PrecisionGuard g(bits);
    std::vector<Real> jet = f.jet(to_real(tq), order + 2);
    if (jet[1] == 0)
      throw Error(ErrorCode::PrecisionInsufficient, "f'(" + tq.get_str() + ") is zero at working precision");
    std::vector<std::optional<Real>> vals(q->size());
    vals[y0] = to_real(tq);
    for (unsigned n = 2; n <= order; ++n) vals[q->id("y" + idx(n))] = Real(0);
    const auto& chain = q->chain("f");
    for (unsigned j = 0; j < chain.symbols.size() && j < jet.size(); ++j) vals[chain.symbols[j]] = jet[j];
    Real tau = 2 * pi_value() * opts.tau_multiple;
    vals[q->id("tau")] = tau;
    vals[q->id("Sf")] = boost::multiprecision::sin(-tau * jet[0]);
    vals[q->id("Cf")] = boost::multiprecision::cos(-tau * jet[0]);
    r.main.values.push_back(evaluate(r.main.symbolic, vals));
    for (auto& t : r.corrections) t.values.push_back(evaluate(t.symbolic, vals));
  }

  auto bounded = [&](const std::vector<Real>& v) {
    Real cap = abs(v.front()) > 1 ? Real(abs(v.front())) : Real(1);
    cap *= opts.bound_factor;
    return std::all_of(v.begin(), v.end(), [&](const Real& x) { return abs(x) <= cap; });
  };
  for (auto& t : r.corrections) t.bounded = bounded(t.values);
  r.main.bounded = bounded(r.main.values);
  r.main_diverges = r.main.values.front() > 0 && strictly_increasing(r.main.values) &&
                    r.main.values.back() >= opts.divergence_growth * r.main.values.front();
  r.corrections_bounded =
      std::all_of(r.corrections.begin(), r.corrections.end(), [](const ProbeTerm& t) { return t.bounded; });
  r.contradiction = r.main_diverges && r.corrections_bounded;
  return r;
}

}  // namespace leafchar
