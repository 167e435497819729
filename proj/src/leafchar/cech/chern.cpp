#include "leafchar/cech/chern.hpp"

#include "leafchar/error.hpp"

namespace leafchar {

namespace {

Form two_form(const ContextPtr& ctx, std::size_t first, std::size_t second) {
  const auto& vars = ctx->variables();
  if (vars.size() < 2) throw Error(ErrorCode::TruncationExceeded, "chart has fewer than two coordinates");
  return wedge(Form::differential(ctx, vars[first]), Form::differential(ctx, vars[second]));
}

}  // namespace

PullbackIdentityReport verify_pullback_identity(const AtlasPresentation& p, unsigned order,
                                                std::string_view generator) {
  if (order < 3) throw Error(ErrorCode::TruncationExceeded, "pullback identity needs jet order >= 3");
  const Generator& g = p.generators.at(p.generator_index(generator));
  const ContextPtr& src = p.charts.at(g.source).context;
  const ContextPtr& tgt = p.charts.at(g.target).context;
  PullbackIdentityReport r;
  r.order = order;
  r.pulled = pullback(g.map, two_form(tgt, 0, 1));
  r.expected = two_form(src, 1, 0);
  r.literal_holds = r.pulled.equals(r.expected);
  r.consistent_holds = pullback(g.map, two_form(tgt, 1, 0)).equals(r.expected);
  if (r.literal_holds) r.sign = 1;
  else if (r.pulled.equals(-r.expected)) r.sign = -1;
  return r;
}

CechCochain chern_representative(const AtlasPresentation& p, bool consistent, std::string_view generator) {
  const Generator& g = p.generators.at(p.generator_index(generator));
  CechCochain c{0, 2, {}, {}};
  for (std::size_t i = 0; i < p.charts.size(); ++i) {
    const ContextPtr& ctx = p.charts[i].context;
    Form v(ctx, 2);
    if (i == g.target) v = consistent ? two_form(ctx, 1, 0) : two_form(ctx, 0, 1);
    else if (i == g.source) v = two_form(ctx, 1, 0);
    c.values.emplace(ChartString{i, {}}, std::move(v));
  }
  return c;
}

}  // namespace leafchar
