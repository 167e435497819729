#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "leafchar/symbolics/expr.hpp"

namespace leafchar {

/// Jet extension of the chart morphism alpha = -f(t) to quotient coordinates:
/// components beta_0, beta_2..beta_N as Exprs in y_0, y_2..y_N and the chain f
/// (based at y_0).
struct JetMapExpr {
  ContextPtr context;
  unsigned order = 0;
  std::vector<SymbolId> source;  ///< y_0, y_2..y_N
  std::string chain;
  Expr beta0;
  std::vector<Expr> higher;  ///< beta_2..beta_N

  /// p = 0 or 2 <= p <= order.
  const Expr& component(unsigned p) const;
};

/// Context with variables <prefix>0, <prefix>2..<prefix>N and chain `chain`
/// on <prefix>0 truncated at `chain_order`.
ContextPtr make_quotient_context(std::string_view prefix, unsigned order, std::string_view chain, unsigned chain_order);

/// Generic route: Faa di Bruno with g = -f applied to the source jet
/// (y_0, 1, y_2, ..., y_N), followed by normalization.
JetMapExpr extend_morphism(const ContextPtr& ctx, std::string_view chain, const std::vector<SymbolId>& source,
                           unsigned order);
/// Same, in a fresh context with variables y0, y2..yN and chain order N + 2.
JetMapExpr extend_morphism(std::string_view chain, unsigned order);

/// Closed form of the extension, from an explicit enumeration of
/// compositions i_1 + ... + i_k = n:
///   beta_n = (-1)^(n-1) ( n! sum_{k<n} f^(k)/(k! f'^n) sum prod y_{i_j}/i_j!
///                         + f^(n)/f'^n ),  y_1 = 1.
Expr extension_closed_form(const ContextPtr& ctx, std::string_view chain, const std::vector<SymbolId>& source,
                           unsigned n);

/// All compositions of n into k positive parts, in lexicographic order.
std::vector<std::vector<unsigned>> compositions(unsigned n, unsigned k);

}  // namespace leafchar
