#include <doctest.h>

#include <random>

#include "../common/jet_oracle.hpp"
#include "leafchar/jets/extension.hpp"
#include "leafchar/jets/jet.hpp"
#include "leafchar/symbolics/form.hpp"

using namespace leafchar;

using namespace leafchar::testing;

TEST_CASE("jet_compose: identity is neutral") {
  auto ctx = series_context(4);
  auto f = symbolic_jet(ctx, "f", 4);
  auto h = jet_compose(Jet<Expr>::identity(4), f);
  // identity jet has g_0 = 0, so compare from order 1
  for (unsigned n = 1; n <= 4; ++n) CHECK(expr_equal(h[n], f[n]));
}

TEST_CASE("jet_compose: low orders by hand") {
  auto ctx = series_context(3);
  auto g = symbolic_jet(ctx, "g", 3), f = symbolic_jet(ctx, "f", 3);
  auto h = jet_compose(g, f);
  CHECK(expr_equal(h[2], g[2] * f[1] * f[1] + g[1] * f[2]));
  CHECK(expr_equal(h[3], g[3] * f[1].pow(3) + Expr(3) * g[2] * f[1] * f[2] + g[1] * f[3]));
  CHECK_THROWS_AS(jet_compose(g, Jet<Expr>::identity(2)), Error);
}

TEST_CASE("jet_compose matches series differentiation for all orders <= 8") {
  const unsigned order = 8;
  auto ctx = series_context(order);
  auto h = jet_compose(symbolic_jet(ctx, "g", order), symbolic_jet(ctx, "f", order));
  auto oracle = composite_by_differentiation(ctx, order);
  for (unsigned n = 0; n <= order; ++n) {
    CAPTURE(n);
    CHECK(expr_equal(h[n], oracle[n]));
  }
}

TEST_CASE("jet group laws") {
  SUBCASE("symbolic associativity at order 4") {
    ContextBuilder b;
    for (char c : {'a', 'b', 'c'})
      for (unsigned i = 0; i <= 4; ++i) b.variable(std::string(1, c) + std::to_string(i));
    auto ctx = b.build();
    auto a = symbolic_jet(ctx, "a", 4), bj = symbolic_jet(ctx, "b", 4), c = symbolic_jet(ctx, "c", 4);
    auto left = jet_compose(a, jet_compose(bj, c));
    auto right = jet_compose(jet_compose(a, bj), c);
    for (unsigned n = 0; n <= 4; ++n) CHECK(expr_equal(left[n], right[n]));
  }
  SUBCASE("exact associativity and inverses at order 8") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      auto a = random_jet(rng, 8, false), bj = random_jet(rng, 8, false), c = random_jet(rng, 8, false);
      auto left = jet_compose(a, jet_compose(bj, c));
      auto right = jet_compose(jet_compose(a, bj), c);
      CHECK(left.entries() == right.entries());
      auto f = random_jet(rng, 8, true);
      auto g = jet_invert(f);
      CHECK(jet_compose(g, f).entries() == Jet<Rational>::identity(8).entries());
      CHECK(jet_compose(f, g).entries() == Jet<Rational>::identity(8).entries());
    }
  }
  SUBCASE("symbolic inverse at order 6") {
    ContextBuilder b;
    for (unsigned i = 1; i <= 6; ++i) b.variable("x" + std::to_string(i));
    auto ctx = b.build();
    std::vector<Expr> e{Expr(0)};
    for (unsigned i = 1; i <= 6; ++i) e.push_back(Expr::symbol(ctx, "x" + std::to_string(i)));
    Jet<Expr> f(e);
    auto g = jet_invert(f);
    auto id1 = jet_compose(g, f), id2 = jet_compose(f, g);
    for (unsigned n = 0; n <= 6; ++n) {
      CHECK(expr_equal(id1[n], Expr(n == 1 ? 1 : 0)));
      CHECK(expr_equal(id2[n], Expr(n == 1 ? 1 : 0)));
    }
  }
}

TEST_CASE("jet_invert examples and errors") {
  CHECK(jet_invert(Jet<Rational>::identity(5)).entries() == Jet<Rational>::identity(5).entries());
  auto linear = jet_invert(Jet<Rational>({0, 3, 0, 0}));
  CHECK(linear.entries() == std::vector<Rational>{0, Rational(1, 3), 0, 0});
  auto g = jet_invert(Jet<Rational>({0, 1, 5, 0}));
  CHECK(g[1] == 1);
  CHECK(g[2] == -5);
  CHECK_THROWS_AS(jet_invert(Jet<Rational>({1, 1, 0})), Error);
  CHECK_THROWS_AS(jet_invert(Jet<Rational>({0, 0, 1})), Error);
}

TEST_CASE("gl1_act and normalize_jet") {
  Jet<Rational> s({7, 1, 3});
  CHECK(gl1_act(Rational(1), s).entries() == s.entries());
  auto ctx = ContextBuilder().variable("x0").variable("x1").variable("x2").variable("x3").variable("lambda").build();
  Expr x0 = Expr::symbol(ctx, "x0"), x1 = Expr::symbol(ctx, "x1"), x2 = Expr::symbol(ctx, "x2"),
       x3 = Expr::symbol(ctx, "x3"), lambda = Expr::symbol(ctx, "lambda");
  auto scaled = gl1_act(Expr(2), Jet<Expr>({x0, x1, x2}));
  CHECK(expr_equal(scaled[0], x0));
  CHECK(expr_equal(scaled[1], Expr(2) * x1));
  CHECK(expr_equal(scaled[2], Expr(4) * x2));
  CHECK_THROWS_AS(gl1_act(Rational(0), s), Error);

  auto n1 = normalize_jet(Jet<Rational>({5, 1, 0, 0}));
  CHECK(n1[0] == 5);
  CHECK(n1[2] == 0);
  auto n2 = normalize_jet(Jet<Rational>({0, 2, 8}));
  CHECK(n2[2] == 2);
  CHECK_THROWS_AS(normalize_jet(Jet<Rational>({0, 0, 8})), Error);

  Jet<Expr> sym({x0, x1, x2, x3});
  auto ny = normalize_jet(sym);
  CHECK(expr_equal(ny[2], x2 / (x1 * x1)));
  auto moved = normalize_jet(gl1_act(lambda, sym));
  for (unsigned p : {0u, 2u, 3u}) CHECK(expr_equal(moved[p], ny[p]));
}

TEST_CASE("extend_morphism: generic pipeline equals the closed form") {
  const unsigned order = 6;
  auto ext = extend_morphism("f", order);
  CHECK(expr_equal(ext.beta0, -Expr::symbol(ext.context, "f_0")));
  for (unsigned n = 2; n <= order; ++n) {
    CAPTURE(n);
    CHECK(expr_equal(ext.component(n), extension_closed_form(ext.context, "f", ext.source, n)));
  }
  // beta_2 = -(y2/f1 + f2/f1^2)
  Expr f1 = Expr::symbol(ext.context, "f_1"), f2 = Expr::symbol(ext.context, "f_2");
  CHECK(expr_equal(ext.component(2), -(Expr::symbol(ext.context, "y2") / f1 + f2 / (f1 * f1))));
  CHECK_THROWS_AS(extend_morphism(make_quotient_context("y", 4, "f", 3), "f", {}, 4), Error);
}

TEST_CASE("extend_morphism: concrete chain f = t^3 + t reproduces direct composition") {
  const unsigned order = 5;
  auto ext = extend_morphism("f", order);
  const auto& ctx = ext.context;
  Expr y0 = Expr::symbol(ctx, "y0");
  // f^(k)(y0) for f(t) = t^3 + t
  std::vector<Expr> fk{y0.pow(3) + y0, Expr(3) * y0 * y0 + 1, Expr(6) * y0, Expr(6)};
  while (fk.size() <= order + 2) fk.emplace_back(0);
  std::vector<std::optional<Expr>> images(ctx->size());
  for (SymbolId i = 0; i < ctx->size(); ++i) images[i] = Expr::symbol(ctx, i);
  for (unsigned k = 0; k <= order + 2; ++k) images[ctx->chain_symbol("f", k)] = fk[k];

  // Direct route: alpha(s) = -f(t(s)), t(s) = y0 + s + sum y_p s^p / p!, in a
  // context with an extra variable s; differentiate in s at 0, then normalize.
  ContextBuilder b;
  b.variable("y0");
  for (unsigned p = 2; p <= order; ++p) b.variable("y" + std::to_string(p));
  b.variable("s");
  auto big = b.build();
  Expr s = Expr::symbol(big, "s");
  Expr ts = Expr::symbol(big, "y0") + s;
  for (unsigned p = 2; p <= order; ++p)
    ts += Expr::symbol(big, "y" + std::to_string(p)) * s.pow(static_cast<int>(p)) * Expr(1 / factorial(p));
  Expr alpha = -(ts.pow(3) + ts);
  std::vector<std::optional<Expr>> at_zero(big->size());
  for (SymbolId i = 0; i < big->size(); ++i)
    if (big->names()[i] != "s") at_zero[i] = Expr::symbol(ctx, ctx->id(big->names()[i]));
  at_zero[big->id("s")] = Expr(0);
  std::vector<Expr> direct;
  for (unsigned n = 0; n <= order; ++n) {
    direct.push_back(alpha.substitute(ctx, at_zero));
    alpha = alpha.derivative("s");
  }
  auto normalized = normalize_jet(Jet<Expr>(direct));
  for (unsigned n : {0u, 2u, 3u, 4u, 5u}) {
    CAPTURE(n);
    CHECK(expr_equal(ext.component(n).substitute(ctx, images), normalized[n]));
  }
}

TEST_CASE("compositions enumerate ordered partitions") {
  CHECK(compositions(4, 2) == std::vector<std::vector<unsigned>>{{1, 3}, {2, 2}, {3, 1}});
  CHECK(compositions(3, 3).size() == 1);
  CHECK(compositions(5, 6).empty());
}
