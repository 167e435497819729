#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leafchar/symbolics/expr.hpp"

namespace leafchar {

/// Strictly increasing list of Variable ids; dx_{i1} ^ ... ^ dx_{ik}.
using FormKey = std::vector<SymbolId>;

/// Homogeneous differential form with Expr coefficients. Terms are keyed by
/// strictly increasing differential indices (the fixed canonical order of
/// wedge monomials); zero coefficients are never stored.
class Form {
 public:
  Form() = default;
  Form(ContextPtr ctx, unsigned degree) : ctx_(std::move(ctx)), degree_(degree) {}

  static Form scalar(const ContextPtr& ctx, const Expr& f);
  /// d(var) for a Variable symbol.
  static Form differential(const ContextPtr& ctx, SymbolId var);
  static Form differential(const ContextPtr& ctx, std::string_view var);
  /// Coefficient times the wedge of the given (unsorted) differentials.
  static Form monomial(const ContextPtr& ctx, const Expr& coefficient, std::vector<SymbolId> vars);

  const ContextPtr& context() const { return ctx_; }
  unsigned degree() const { return degree_; }
  const std::map<FormKey, Expr>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of a canonical key (zero if absent).
  Expr coefficient(const FormKey& key) const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  Form operator-() const;
  friend Form operator*(const Expr& f, const Form& w);

  bool equals(const Form& o) const;

  std::string to_string() const;

 private:
  void add_term(const FormKey& key, const Expr& c);
  void check_compatible(const Form& o) const;

  ContextPtr ctx_;
  unsigned degree_ = 0;
  std::map<FormKey, Expr> terms_;
};

Form wedge(const Form& a, const Form& b);
Form exterior_derivative(const Form& w);

/// A smooth map between charts: images[i] is the pullback of target symbol i,
/// as an Expr in the source context.
struct ChartMap {
  ContextPtr source;
  ContextPtr target;
  std::vector<std::optional<Expr>> images;

  static ChartMap identity(const ContextPtr& ctx);
  ChartMap& set(std::string_view target_symbol, Expr image);
  /// Maps target symbols to same-named source symbols where both exist and
  /// no image was set yet.
  ChartMap& match_names();
  /// this after first (first applied first): source(first) -> target(this).
  ChartMap after(const ChartMap& first) const;
};

Expr pullback(const ChartMap& phi, const Expr& e);
Form pullback(const ChartMap& phi, const Form& w);

/// Vector field as per-variable components, in the form's context.
using VectorField = std::map<SymbolId, Expr>;

Form interior_product(const VectorField& x, const Form& w);
/// Cartan: L_X = d i_X + i_X d.
Form lie_derivative(const VectorField& x, const Form& w);

}  // namespace leafchar
