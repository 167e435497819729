#include "leafchar/gk/gelfand_kazhdan.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "leafchar/error.hpp"
#include "leafchar/jets/jet.hpp"

namespace leafchar {

namespace {

/// a + u b with u^2 = 0.
struct Dual {
  Expr a, b;
  Dual() = default;
  Dual(Expr a_, Expr b_) : a(std::move(a_)), b(std::move(b_)) {}

  Dual& operator+=(const Dual& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  friend Dual operator*(const Dual& x, const Dual& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
  friend Dual operator/(const Dual& x, const Dual& y) {
    return {x.a / y.a, (x.b * y.a - x.a * y.b) / (y.a * y.a)};
  }
  Dual operator-() const { return {-a, -b}; }
};

}  // namespace

template <>
struct FieldTraits<Dual> {
  static Dual from_rational(const Rational& q) { return {Expr(q), Expr(0)}; }
  static bool is_zero(const Dual& x) { return x.a.is_zero() && x.b.is_zero(); }
};

GKChart gk_chart(unsigned order) {
  if (order < 2) throw Error(ErrorCode::InvalidArgument, "truncation order must be at least 2");
  const unsigned N = order;
  ContextBuilder xb, wb, yb;
  for (unsigned p = 0; p <= N; ++p) {
    xb.variable("x" + std::to_string(p));
    wb.variable("x" + std::to_string(p));
  }
  for (unsigned p = 0; p <= N; ++p) wb.variable("v" + std::to_string(p));
  yb.variable("y0");
  for (unsigned p = 2; p <= N; ++p) yb.variable("y" + std::to_string(p));
  GKChart chart;
  chart.order = N;
  chart.x = xb.build();
  chart.y = yb.build();
  auto work = wb.build();
  auto x = [&](unsigned p) { return Expr::symbol(work, "x" + std::to_string(p)); };
  auto v = [&](unsigned p) { return Expr::symbol(work, "v" + std::to_string(p)); };

  // k_0 translated to the origin, and its inverse g
  std::vector<Expr> k0{Expr(0)};
  for (unsigned p = 1; p <= N; ++p) k0.push_back(x(p));
  Jet<Expr> g = jet_invert(Jet<Expr>(k0));
  // k_u - x_0 and k_0^{-1} expanded at the moved base point u v_0
  std::vector<Dual> ku, gu;
  for (unsigned p = 0; p <= N; ++p) {
    ku.emplace_back(p == 0 ? Expr(0) : x(p), v(p));
    gu.emplace_back(g[p], p < N ? v(0) * g[p + 1] : Expr(0));
  }
  Jet<Dual> h = jet_compose(Jet<Dual>(gu), Jet<Dual>(ku));

  std::vector<std::optional<Expr>> to_x(work->size());
  for (unsigned p = 0; p <= N; ++p) {
    to_x[work->id("x" + std::to_string(p))] = Expr::symbol(chart.x, "x" + std::to_string(p));
    to_x[work->id("v" + std::to_string(p))] = Expr(0);
  }
  // g_{N+1} is unknown at this truncation, so h_N is incomplete
  for (unsigned p = 0; p < N; ++p) {
    Expr tangent = -h[p].b;
    Form w(chart.x, 1);
    for (unsigned q = 0; q <= N; ++q) {
      Expr coef = tangent.derivative("v" + std::to_string(q)).substitute(chart.x, to_x);
      if (!coef.is_zero()) w += coef * Form::differential(chart.x, "x" + std::to_string(q));
    }
    chart.omega.push_back(std::move(w));
  }
  return chart;
}

std::vector<Form> gk_form_components(unsigned order) { return gk_chart(order).omega; }

Form alpha(const WCochain& c, const GKChart& chart) {
  Form out(chart.x, c.degree());
  for (const auto& [key, coef] : c.terms()) {
    Form term = Form::scalar(chart.x, Expr(coef));
    for (const auto& g : key) {
      if (g.upper != 1 || std::any_of(g.lower.begin(), g.lower.end(), [](unsigned j) { return j != 1; }))
        throw Error(ErrorCode::InvalidArgument, "alpha is defined on cochains of W_1");
      if (g.lower.size() >= chart.omega.size())
        throw Error(ErrorCode::TruncationExceeded, g.to_string() + " needs omega_" + std::to_string(g.lower.size()) +
                                                       " beyond truncation " + std::to_string(chart.order));
      term = wedge(term, chart.omega[g.lower.size()]);
    }
    out += term;
  }
  return out;
}

ConnectionCurvature connection_and_curvature(const GKChart& chart) {
  if (chart.order < 3) throw Error(ErrorCode::TruncationExceeded, "curvature needs truncation order at least 3");
  Form beta = -alpha(WCochain::generator(WGenerator(1, {1})), chart);
  Form curvature = exterior_derivative(beta) + wedge(beta, beta);
  return {std::move(beta), std::move(curvature)};
}

VectorField gl1_euler_field(const GKChart& chart) {
  VectorField e;
  for (unsigned p = 1; p <= chart.order; ++p) {
    auto id = chart.x->id("x" + std::to_string(p));
    e.emplace(id, Expr(static_cast<long>(p)) * Expr::symbol(chart.x, id));
  }
  return e;
}

Form reduce_to_quotient(const Form& w, const GKChart& chart) {
  VectorField e = gl1_euler_field(chart);
  if (!interior_product(e, w).is_zero()) throw Error(ErrorCode::NotBasic, "form is not horizontal");
  if (!lie_derivative(e, w).is_zero()) throw Error(ErrorCode::NotBasic, "form is not GL(1)-invariant");
  ChartMap slice{chart.y, chart.x, {}};
  slice.set("x0", Expr::symbol(chart.y, "y0")).set("x1", Expr(1));
  for (unsigned p = 2; p <= chart.order; ++p)
    slice.set("x" + std::to_string(p), Expr::symbol(chart.y, "y" + std::to_string(p)));
  return pullback(slice, w);
}

}  // namespace leafchar
