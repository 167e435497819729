#include <doctest.h>

#include <set>

#include "../common/cech_property.hpp"
#include "leafchar/cech/chern.hpp"
#include "leafchar/cech/site.hpp"
#include "leafchar/error.hpp"
#include "leafchar/jets/extension.hpp"
#include "leafchar/numeric/evaluate.hpp"
#include "leafchar/reeb/presentation.hpp"

using namespace leafchar;

namespace {

const AtlasPresentation& reeb(unsigned order = 3) {
  static std::map<unsigned, AtlasPresentation> cache;
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, reeb_presentation(default_profile(), order)).first;
  return it->second;
}

std::set<std::string> names(const std::vector<ChartString>& ss, const AtlasPresentation& p) {
  std::set<std::string> out;
  for (const auto& s : ss) out.insert(to_string(s, p));
  return out;
}

AtlasPresentation point_presentation() {
  AtlasPresentation p;
  p.charts.push_back(Chart{"U", ContextBuilder().variable("x").variable("y").build(), "R^2"});
  return p;
}

}  // namespace

TEST_CASE("composable strings") {
  const auto& p = reeb();
  CHECK(names(composable_strings(p, 0, 1), p) == std::set<std::string>{"(C_alpha)", "(C_t)"});
  CHECK(names(composable_strings(p, 1, 1), p) ==
        std::set<std::string>{"(C_alpha, id_C_alpha)", "(C_alpha, T)", "(C_alpha, Ti)", "(C_t, id_C_t)",
                              "(C_t, phi)"});
  auto two = names(composable_strings(p, 2, 2), p);
  CHECK(two.count("(C_t, phi, T)"));
  CHECK(two.count("(C_t, phi.T, Ti)"));
  CHECK(two.count("(C_alpha, T.T, Ti.Ti)"));
  CHECK_FALSE(two.count("(C_alpha, T.Ti, T)"));
  // arrows out of C_alpha with word length <= b: T^j, |j| <= b
  CHECK(p.arrows_from(0, 3).size() == 7);
  CHECK(p.arrows_from(1, 3).size() == 1 + 5);
  CHECK_THROWS_AS(composable_strings(p, 1, 0), Error);
}

TEST_CASE("word reduction and composite maps") {
  const auto& p = reeb();
  std::size_t t = p.generator_index("T"), ti = p.generator_index("Ti"), phi = p.generator_index("phi");
  CHECK(p.reduce({t, t, ti, ti, t}) == Word{t});
  Arrow a{1, {phi, t, t}};
  CHECK(p.target(a) == 0);
  CHECK(p.name(a) == "phi.T.T");
  const ChartMap& m = p.chart_map(a);
  Expr expected = Expr::symbol(p.charts[1].context, "f_0") * -1 + 2;
  CHECK(expr_equal(*m.images[p.charts[0].context->id("alpha0")], expected));
  CHECK_THROWS_AS(p.compose(Arrow{0, {t}}, Arrow{1, {}}), Error);
}

TEST_CASE("reeb presentation: jet extension") {
  const auto& p = reeb(4);
  const auto& tctx = p.charts[1].context;
  const auto& actx = p.charts[0].context;
  const auto& phi = p.generators[p.generator_index("phi")].map;
  CHECK(expr_equal(*phi.images[actx->id("alpha0")], -Expr::symbol(tctx, "f_0")));
  std::vector<SymbolId> src{tctx->id("t0"), tctx->id("t2"), tctx->id("t3"), tctx->id("t4")};
  JetMapExpr ext = extend_morphism(tctx, "f", src, 4);
  for (unsigned n = 2; n <= 4; ++n)
    CHECK(expr_equal(*phi.images[actx->id("alpha" + std::to_string(n))], ext.component(n)));

  // beta_n(t_k, 0, ...) -> 0 for the default profile
  PrecisionGuard g(256);
  ReebProfile f = default_profile();
  for (unsigned n = 2; n <= 4; ++n) {
    Real prev = -1;
    for (unsigned k = 1; k <= 4; ++k) {
      std::vector<Real> jet = f.jet(to_real(tail_point(k)), 8);
      std::vector<std::optional<Real>> vals(tctx->size());
      vals[tctx->id("t0")] = to_real(tail_point(k));
      for (unsigned q = 2; q <= 4; ++q) vals[tctx->id("t" + std::to_string(q))] = Real(0);
      for (unsigned j = 0; j <= 8; ++j) vals[tctx->chain_symbol("f", j)] = jet[j];
      Real v = abs(evaluate(*phi.images[actx->id("alpha" + std::to_string(n))], vals));
      if (k > 1) CHECK(v < prev);
      prev = v;
    }
    CHECK(prev < Real("1e-3"));
  }
}

TEST_CASE("delta in degree 0") {
  const auto& p = reeb();
  CechCochain w = random_cochain(p, 0, 1, 5);
  CechCochain dw = cech_delta(w, p, 1);
  for (const auto& [s, v] : dw.values) {
    std::size_t u1 = p.target(s.arrows[0]);
    Form expected = p.pullback(s.arrows[0], w.value(ChartString{u1, {}}, p)) - w.value(ChartString{s.source, {}}, p);
    CHECK(v.equals(expected));
  }
  // identity arrows give zero
  CHECK(dw.values.at(ChartString{0, {Arrow{0, {}}}}).is_zero());
  CHECK_FALSE(dw.values.at(ChartString{1, {Arrow{1, {2}}}}).is_zero());
}

TEST_CASE("delta of a constant cochain on an identity-only presentation") {
  AtlasPresentation p = point_presentation();
  const auto& ctx = p.charts[0].context;
  CechCochain w{0, 1, {}, {}};
  w.values.emplace(ChartString{0, {}}, Form::differential(ctx, "x"));
  CechCochain dw = cech_delta(w, p, 3);
  REQUIRE(dw.values.size() == 1);
  CHECK_FALSE(first_nonzero(dw));
}

TEST_CASE("missing strings are reported") {
  const auto& p = reeb();
  CechCochain w{0, 0, {}, {}};
  w.values.emplace(ChartString{0, {}}, Form::scalar(p.charts[0].context, 1));
  try {
    cech_delta(w, p, 1);
    FAIL("expected MissingString");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingString);
  }
}

TEST_CASE("delta^2 = 0 and D^2 = 0 on random cochains") {
  const auto& p = reeb(2);
  for (unsigned k = 0; k <= 2; ++k)
    for (unsigned l = 0; l <= 2; ++l) {
      auto o = testing::check_squares(p, k, l, 1000 + 3 * k + l, k == 2 ? 1 : 2);
      CHECK_MESSAGE(o.delta_ok, o.witness);
      CHECK_MESSAGE(o.total_ok, o.witness);
      CHECK(o.strings > 0);
    }
}

TEST_CASE("random cochains are not trivially zero") {
  const auto& p = reeb(2);
  CechCochain w = random_cochain(p, 1, 1, 9);
  CechCochain dw = cech_delta(lazy_cech_delta(random_cochain(p, 0, 1, 9), p), p, 1);
  CHECK_FALSE(first_nonzero(dw));
  CHECK(first_nonzero(cech_delta(w, p, 1)));
}

TEST_CASE("D with the unsigned de Rham part does not square to zero") {
  const auto& p = reeb(2);
  CechCochain w = random_cochain(p, 1, 0, 21);
  // delta(d w) + d(delta w) in bidegree (2, 1); the correct sign makes it a difference
  CechCochain dw = signed_de_rham(w, p, 4);
  for (auto& [s, v] : dw.values) v = -v;  // undo (-1)^k for k = 1
  CechCochain a = cech_delta(dw, p, 1);
  CechCochain b = signed_de_rham(cech_delta(w, p, 2), p, 1);  // (-1)^2 d delta w
  bool all_zero = true;
  for (const auto& [s, v] : a.values)
    if (!(v + b.values.at(s)).is_zero()) all_zero = false;
  CHECK_FALSE(all_zero);
}

TEST_CASE("delta commutes with the T-action") {
  const auto& p = reeb(2);
  std::size_t t = p.generator_index("T"), ti = p.generator_index("Ti");
  // w(g_1, ...) = (T^j)^* rho(g_1', ...) with g_1 = g_1' after T^j
  CechCochain rho = random_cochain(p, 1, 1, 77);
  CechCochain w{1, 1, {}, {}};
  w.generator = [&](const ChartString& s) {
    if (s.source != 0) return rho.value(s, p);
    Word word = s.arrows[0].word;
    long j = 0;
    std::size_t i = 0;
    for (; i < word.size() && (word[i] == t || word[i] == ti); ++i) j += word[i] == t ? 1 : -1;
    ChartString stripped = s;
    stripped.arrows[0].word.assign(word.begin() + static_cast<long>(i), word.end());
    Arrow shift{0, Word(static_cast<std::size_t>(std::abs(j)), j >= 0 ? t : ti)};
    return p.pullback(shift, rho.value(stripped, p));
  };
  CechCochain dw = lazy_cech_delta(w, p);
  for (const auto& s : composable_strings(p, 2, 2)) {
    if (s.source != 0) continue;
    ChartString moved = s;
    moved.arrows[0] = p.compose(Arrow{0, {t}}, s.arrows[0]);
    CHECK(dw.value(moved, p).equals(p.pullback(Arrow{0, {t}}, dw.value(s, p))));
  }
  // the invariance itself, at T^m
  ChartString base{0, {Arrow{0, {}}, Arrow{0, {t}}}};
  ChartString shifted{0, {Arrow{0, {t, t, t}}, Arrow{0, {t}}}};
  CHECK(w.value(shifted, p).equals(p.pullback(Arrow{0, {t, t, t}}, w.value(base, p))));
}

TEST_CASE("pullback identity") {
  for (unsigned order : {3u, 4u, 5u}) {
    PullbackIdentityReport r = verify_pullback_identity(reeb(order), order);
    CHECK_FALSE(r.literal_holds);
    CHECK(r.consistent_holds);
    CHECK(r.sign == -1);
  }
  CHECK_THROWS_AS(verify_pullback_identity(reeb(3), 2), Error);

  AtlasPresentation flipped = reeb(3);
  auto& phi = flipped.generators[flipped.generator_index("phi")].map;
  const auto& actx = flipped.charts[0].context;
  SymbolId a2 = actx->id("alpha2");
  phi.images[a2] = -*phi.images[a2];
  PullbackIdentityReport f = verify_pullback_identity(flipped, 3);
  CHECK(f.literal_holds);
  CHECK_FALSE(f.consistent_holds);
  phi.images[a2] = *phi.images[a2] * 2;
  f = verify_pullback_identity(flipped, 3);
  CHECK_FALSE(f.literal_holds);
  CHECK_FALSE(f.consistent_holds);
  CHECK(f.sign == 0);

  // identity in place of phi
  AtlasPresentation self = reeb(3);
  self.generators.push_back(Generator{"id", 0, 0, ChartMap::identity(actx)});
  PullbackIdentityReport id = verify_pullback_identity(self, 3, "id");
  CHECK(id.pulled.equals(wedge(Form::differential(actx, "alpha0"), Form::differential(actx, "alpha2"))));
  CHECK(id.consistent_holds);
  CHECK(id.sign == -1);
}

TEST_CASE("Chern representative is D-closed in the consistent orientation") {
  const auto& p = reeb(3);
  for (bool consistent : {false, true}) {
    CechCochain c = chern_representative(p, consistent);
    auto parts = total_differential(c, p, 2);
    CHECK_FALSE(first_nonzero(parts.d));
    CHECK(first_nonzero(parts.delta).has_value() == !consistent);
  }
}

TEST_CASE("site axioms: trivial site") {
  SiteReport r = verify_site_axioms(trivial_site());
  CHECK(r.passed());
  CHECK(r.axioms.size() == 3);
}

TEST_CASE("site axioms: induced Reeb site and mutations") {
  FiniteSite s = induced_site(with_finite_period(reeb(2), 3));
  CHECK(s.objects == std::vector<std::string>{"C_alpha", "C_t"});
  CHECK(s.morphisms.size() == 3 + 1 + 3);
  CHECK(maximal_sieve(s, 0).size() == 6);
  CHECK(verify_site_axioms(s).passed());
  // the sieve generated by phi and T is maximal
  std::size_t phi = 0, t = 0;
  for (std::size_t i = 0; i < s.morphisms.size(); ++i) {
    if (s.morphisms[i].name == "phi") phi = i;
    if (s.morphisms[i].name == "T") t = i;
  }
  CHECK(generated_sieve(s, 0, {phi, t}) == maximal_sieve(s, 0));
  CHECK(all_sieves(s, 0).size() == 8 + 1);  // subsets of the three phi-morphisms, plus the maximal sieve

  SiteReport m1 = verify_site_axioms(mutate_site(s, 1, 0, 1));
  CHECK_FALSE(m1.axioms[0].passed);
  CHECK(m1.axioms[1].passed);
  CHECK(m1.axioms[2].passed);
  CHECK(m1.axioms[0].witness == "object C_alpha");

  SiteReport m2 = verify_site_axioms(mutate_site(s, 2, 0, 1));
  CHECK(m2.axioms[0].passed);
  CHECK_FALSE(m2.axioms[1].passed);
  CHECK(m2.axioms[2].passed);
  CHECK(m2.axioms[1].witness.rfind("f = phi,", 0) == 0);

  SiteReport m3 = verify_site_axioms(mutate_site(s, 3, 0, 1));
  CHECK(m3.axioms[0].passed);
  CHECK(m3.axioms[1].passed);
  CHECK_FALSE(m3.axioms[2].passed);
  CHECK(m3.axioms[2].witness == "S = {phi, phi.T, phi.T.T}, R = {}");
}

TEST_CASE("site axioms: malformed input") {
  FiniteSite s = trivial_site();
  s.compose[0][0] = -1;
  CHECK_THROWS_AS(verify_site_axioms(s), Error);
  FiniteSite r = induced_site(with_finite_period(reeb(2), 2));
  r.covers[0].push_back(Sieve{0});  // identity alone is not closed under precomposition
  try {
    verify_site_axioms(r);
    FAIL("expected MalformedSite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedSite);
  }
  FiniteSite a = induced_site(with_finite_period(reeb(2), 2));
  std::swap(a.compose[1][1], a.compose[1][0]);
  CHECK_THROWS_AS(verify_site_axioms(a), Error);
  CHECK_THROWS_AS(induced_site(reeb(2), 50), Error);
}
