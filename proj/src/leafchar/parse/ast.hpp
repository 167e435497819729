#pragma once

// Recursive-descent parser for the expression language used in configs:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | ident | ident '(' expr ')' | '(' expr ')'
//
// Numbers are decimal literals read exactly as rationals. Identifiers are
// [A-Za-z_][A-Za-z0-9_]*. Calls: sin, cos, exp, log, and chain names.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "leafchar/symbolics/expr.hpp"

namespace leafchar {

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
  enum class Kind { Number, Symbol, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind;
  Rational value;    // Number
  std::string name;  // Symbol, Call
  std::vector<AstPtr> args;

  std::string to_string() const;
};

/// Throws ParseError with the offending position.
AstPtr parse_expression(std::string_view text);

/// sin(a) / cos(a) stand for the symbols sin_name / cos_name when a equals
/// `argument`.
struct TrigPair {
  std::string sin_name, cos_name;
  Expr argument;
};

/// Converts to an exact Expr. Identifiers name symbols of ctx; `g(x)` with g a
/// chain based at x gives g_0. Exponents must be integer constants.
Expr to_expr(const Ast& ast, const ContextPtr& ctx, const std::vector<TrigPair>& trig = {});

}  // namespace leafchar
