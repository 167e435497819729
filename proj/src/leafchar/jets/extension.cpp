#include "leafchar/jets/extension.hpp"

#include "leafchar/error.hpp"
#include "leafchar/jets/jet.hpp"

namespace leafchar {

const Expr& JetMapExpr::component(unsigned p) const {
  if (p == 0) return beta0;
  if (p == 1 || p > order) throw Error(ErrorCode::IndexOutOfRange, "jet map component " + std::to_string(p));
  return higher[p - 2];
}

ContextPtr make_quotient_context(std::string_view prefix, unsigned order, std::string_view chain,
                                 unsigned chain_order) {
  ContextBuilder b;
  std::string p(prefix);
  b.variable(p + "0");
  for (unsigned i = 2; i <= order; ++i) b.variable(p + std::to_string(i));
  b.chain(std::string(chain), p + "0", chain_order);
  return b.build();
}

namespace {

void check_source(const ContextPtr& ctx, std::string_view chain, const std::vector<SymbolId>& source,
                  unsigned order) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "extension order must be positive");
  if (source.size() != order)
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(order) + " source coordinates");
  const auto& info = ctx->chain(chain);
  if (info.base != source[0]) throw Error(ErrorCode::InvalidArgument, "chain must be based at the y_0 coordinate");
  if (info.max_order < order)
    throw Error(ErrorCode::TruncationExceeded, "chain " + info.name + " truncated below the extension order");
}

/// y_i with y_1 = 1.
Expr quotient_coordinate(const ContextPtr& ctx, const std::vector<SymbolId>& source, unsigned i) {
  if (i == 1) return Expr(1);
  return Expr::symbol(ctx, source[i == 0 ? 0 : i - 1]);
}

}  // namespace

JetMapExpr extend_morphism(const ContextPtr& ctx, std::string_view chain, const std::vector<SymbolId>& source,
                           unsigned order) {
  check_source(ctx, chain, source, order);
  std::vector<Expr> g, t;
  for (unsigned k = 0; k <= order; ++k) {
    g.push_back(-Expr::symbol(ctx, ctx->chain_symbol(chain, k)));
    t.push_back(quotient_coordinate(ctx, source, k));
  }
  Jet<Expr> alpha = jet_compose(Jet<Expr>(std::move(g)), Jet<Expr>(std::move(t)));
  NormalizedJet<Expr> beta = normalize_jet(alpha);
  JetMapExpr out;
  out.context = ctx;
  out.order = order;
  out.source = source;
  out.chain = std::string(chain);
  out.beta0 = beta[0];
  for (unsigned p = 2; p <= order; ++p) out.higher.push_back(beta[p]);
  return out;
}

JetMapExpr extend_morphism(std::string_view chain, unsigned order) {
  auto ctx = make_quotient_context("y", order, chain, order + 2);
  std::vector<SymbolId> source{ctx->id("y0")};
  for (unsigned p = 2; p <= order; ++p) source.push_back(ctx->id("y" + std::to_string(p)));
  return extend_morphism(ctx, chain, source, order);
}

std::vector<std::vector<unsigned>> compositions(unsigned n, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  if (k == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  for (unsigned first = 1; first + (k - 1) <= n; ++first)
    for (auto& rest : compositions(n - first, k - 1)) {
      rest.insert(rest.begin(), first);
      out.push_back(std::move(rest));
    }
  return out;
}

Expr extension_closed_form(const ContextPtr& ctx, std::string_view chain, const std::vector<SymbolId>& source,
                           unsigned n) {
  if (n == 0) return -Expr::symbol(ctx, ctx->chain_symbol(chain, 0));
  if (n == 1) throw Error(ErrorCode::IndexOutOfRange, "beta_1 is normalized away");
  Expr f1n = Expr::symbol(ctx, ctx->chain_symbol(chain, 1)).pow(static_cast<int>(n));
  Expr inner(0);
  for (unsigned k = 1; k < n; ++k) {
    Expr sum(0);
    for (const auto& parts : compositions(n, k)) {
      Expr prod(1);
      for (unsigned i : parts) prod *= quotient_coordinate(ctx, source, i) * Expr(1 / factorial(i));
      sum += prod;
    }
    inner += Expr(factorial(n) / factorial(k)) * Expr::symbol(ctx, ctx->chain_symbol(chain, k)) / f1n * sum;
  }
  inner += Expr::symbol(ctx, ctx->chain_symbol(chain, n)) / f1n;
  return (n % 2 == 1) ? inner : -inner;
}

}  // namespace leafchar
