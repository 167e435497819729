#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leafchar/symbolics/context.hpp"
#include "leafchar/symbolics/polynomial.hpp"

namespace leafchar {

/// Element of the differential field Q(symbols): a reduced quotient of
/// polynomials. Equality is decided by cross-multiplication, so the stored
/// pair is normalized but not guaranteed to be in lowest terms.
///
/// An Expr with no context is a rational constant and combines with any
/// context.
class Expr {
 public:
  Expr() = default;
  Expr(const Rational& c);  // NOLINT(google-explicit-constructor)
  Expr(long c) : Expr(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Expr(int c) : Expr(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Expr symbol(const ContextPtr& ctx, SymbolId id);
  static Expr symbol(const ContextPtr& ctx, std::string_view name);
  /// Builds num/den in ctx; throws DivisionByZero if den is zero.
  static Expr fraction(const ContextPtr& ctx, Polynomial num, Polynomial den);

  const ContextPtr& context() const { return ctx_; }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Value of a constant Expr; throws InvalidArgument otherwise.
  Rational constant_value() const;
  bool depends_on(SymbolId id) const { return num_.depends_on(id) || den_.depends_on(id); }

  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  Expr& operator/=(const Expr& o);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(Expr a, const Expr& b) { return a *= b; }
  friend Expr operator/(Expr a, const Expr& b) { return a /= b; }
  Expr operator-() const;
  Expr pow(int e) const;

  /// Exact partial derivative with respect to a Variable symbol. Chain and
  /// Dependent symbols based on `var` are differentiated by their rules.
  Expr derivative(SymbolId var) const;
  Expr derivative(std::string_view var) const;

  /// Substitutes images[i] for source symbol i. Symbols that occur and have
  /// no image raise MissingComponent.
  Expr substitute(const ContextPtr& target, std::span<const std::optional<Expr>> images) const;

  std::string to_string() const;

 private:
  void normalize();
  static ContextPtr join(const ContextPtr& a, const ContextPtr& b);

  ContextPtr ctx_;
  Polynomial num_;
  Polynomial den_{Rational(1)};
};

/// True iff a - b is zero in the field.
bool expr_equal(const Expr& a, const Expr& b);

/// Derivative of a polynomial, as an Expr, using the context's rules.
Expr polynomial_derivative(const ContextPtr& ctx, const Polynomial& p, SymbolId var);

}  // namespace leafchar
