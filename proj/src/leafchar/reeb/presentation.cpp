#include "leafchar/reeb/presentation.hpp"

#include "leafchar/error.hpp"
#include "leafchar/jets/extension.hpp"

namespace leafchar {

AtlasPresentation reeb_presentation(const ReebProfile& f, unsigned order, unsigned chain_slack) {
  if (order < 2) throw Error(ErrorCode::InvalidArgument, "jet order must be at least 2");
  ContextBuilder ab, tb;
  ab.variable("alpha0");
  tb.variable("t0");
  for (unsigned p = 2; p <= order; ++p) {
    ab.variable("alpha" + std::to_string(p));
    tb.variable("t" + std::to_string(p));
  }
  tb.chain("f", "t0", order + chain_slack);
  ContextPtr actx = ab.build(), tctx = tb.build();

  AtlasPresentation p;
  p.description = "phi: alpha = -f(t), f = " + f.description;
  p.charts.push_back(Chart{"C_alpha", actx, "alpha0 in R, shift T: alpha0 -> alpha0 + 1"});
  p.charts.push_back(Chart{"C_t", tctx, "|t0| < 1"});

  ChartMap shift = ChartMap::identity(actx), back = ChartMap::identity(actx);
  Expr a0 = Expr::symbol(actx, "alpha0");
  shift.set("alpha0", a0 + 1);
  back.set("alpha0", a0 - 1);

  std::vector<SymbolId> source{tctx->id("t0")};
  for (unsigned q = 2; q <= order; ++q) source.push_back(tctx->id("t" + std::to_string(q)));
  JetMapExpr ext = extend_morphism(tctx, "f", source, order);
  ChartMap phi{tctx, actx, std::vector<std::optional<Expr>>(actx->size())};
  phi.set("alpha0", ext.beta0);
  for (unsigned q = 2; q <= order; ++q) phi.set("alpha" + std::to_string(q), ext.component(q));

  p.generators.push_back(Generator{"T", 0, 0, shift});
  p.generators.push_back(Generator{"Ti", 0, 0, back});
  p.generators.push_back(Generator{"phi", 1, 0, phi});
  p.relations.push_back(Relation{{0, 1}, {}});
  p.relations.push_back(Relation{{1, 0}, {}});
  p.validate();
  return p;
}

AtlasPresentation with_finite_period(AtlasPresentation p, unsigned period) {
  if (period == 0) throw Error(ErrorCode::InvalidArgument, "period must be positive");
  std::size_t t = p.generator_index("T"), ti = p.generator_index("Ti");
  p.relations.push_back(Relation{Word(period, t), {}});
  p.relations.push_back(Relation{{ti}, Word(period - 1, t)});
  return p;
}

}  // namespace leafchar
