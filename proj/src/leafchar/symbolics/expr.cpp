#include "leafchar/symbolics/expr.hpp"

#include <map>

#include "leafchar/error.hpp"

namespace leafchar {

Expr::Expr(const Rational& c) : num_(c) {}

Expr Expr::symbol(const ContextPtr& ctx, SymbolId id) {
  if (!ctx || id >= ctx->size()) throw Error(ErrorCode::UnknownSymbol, "symbol id out of range");
  Expr e;
  e.ctx_ = ctx;
  e.num_ = Polynomial::symbol(id);
  return e;
}

Expr Expr::symbol(const ContextPtr& ctx, std::string_view name) {
  if (!ctx) throw Error(ErrorCode::UnknownSymbol, "no context for symbol '" + std::string(name) + "'");
  return symbol(ctx, ctx->id(name));
}

Expr Expr::fraction(const ContextPtr& ctx, Polynomial num, Polynomial den) {
  Expr e;
  e.ctx_ = ctx;
  e.num_ = std::move(num);
  e.den_ = std::move(den);
  e.normalize();
  return e;
}

Rational Expr::constant_value() const {
  if (!is_constant()) throw Error(ErrorCode::InvalidArgument, "expression is not constant: " + to_string());
  return num_.constant_term() / den_.constant_term();
}

ContextPtr Expr::join(const ContextPtr& a, const ContextPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  throw Error(ErrorCode::ContextMismatch, "expressions belong to different contexts");
}

void Expr::normalize() {
  if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial(Rational(1));
    return;
  }
  Monomial g = monomial_gcd(num_.content_monomial(), den_.content_monomial());
  if (!g.empty()) {
    num_ = num_.divide_monomial(g);
    den_ = den_.divide_monomial(g);
  }
  if (!den_.is_monomial()) {
    if (auto q = num_.divide_exact(den_)) {
      num_ = std::move(*q);
      den_ = Polynomial(Rational(1));
      return;
    }
    if (auto q = den_.divide_exact(num_)) {
      num_ = Polynomial(Rational(1));
      den_ = std::move(*q);
    }
  }
  Rational lc = den_.leading_coefficient();
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

Expr& Expr::operator+=(const Expr& o) {
  ctx_ = join(ctx_, o.ctx_);
  if (o.num_.is_zero()) return *this;
  if (num_.is_zero()) {
    num_ = o.num_;
    den_ = o.den_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
  } else if (den_.is_monomial() && o.den_.is_monomial()) {
    const Monomial& m1 = den_.leading_monomial();
    const Monomial& m2 = o.den_.leading_monomial();
    Monomial l = monomial_lcm(m1, m2);
    num_ = num_.multiply_monomial(monomial_quotient(l, m1)) +
           o.num_.multiply_monomial(monomial_quotient(l, m2));
    den_ = Polynomial::monomial(l);
  } else if (auto q = o.den_.divide_exact(den_)) {
    num_ = num_ * *q + o.num_;
    den_ = o.den_;
  } else if (auto q2 = den_.divide_exact(o.den_)) {
    num_ += o.num_ * *q2;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

Expr& Expr::operator-=(const Expr& o) { return *this += -o; }

Expr& Expr::operator*=(const Expr& o) {
  ctx_ = join(ctx_, o.ctx_);
  if (num_.is_zero()) return *this;
  if (o.num_.is_zero()) {
    num_ = Polynomial();
    den_ = Polynomial(Rational(1));
    return *this;
  }
  if (o.is_constant()) {
    num_ *= o.num_.constant_term() / o.den_.constant_term();
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

Expr& Expr::operator/=(const Expr& o) {
  ctx_ = join(ctx_, o.ctx_);
  if (o.num_.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero expression");
  if (num_.is_zero()) return *this;
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  normalize();
  return *this;
}

Expr Expr::operator-() const {
  Expr r = *this;
  r.num_ = -r.num_;
  return r;
}

Expr Expr::pow(int e) const {
  if (e < 0) {
    if (num_.is_zero()) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    Expr inv;
    inv.ctx_ = ctx_;
    inv.num_ = den_;
    inv.den_ = num_;
    inv.normalize();
    return inv.pow(-e);
  }
  Expr r;
  r.ctx_ = ctx_;
  r.num_ = num_.pow(static_cast<unsigned>(e));
  r.den_ = den_.pow(static_cast<unsigned>(e));
  r.normalize();
  return r;
}

Expr polynomial_derivative(const ContextPtr& ctx, const Polynomial& p, SymbolId var) {
  if (!ctx || p.is_constant()) return Expr(0);
  if (var >= ctx->size() || !ctx->is_variable(var))
    throw Error(ErrorCode::UnknownSymbol, "derivative with respect to a non-variable symbol");
  Polynomial poly_part;
  Expr rational_part(0);
  bool has_rational = false;
  std::size_t bound = p.symbol_bound();
  for (SymbolId s = 0; s < bound; ++s) {
    if (!p.depends_on(s)) continue;
    const Symbol& sym = ctx->symbol(s);
    if (s == var) {
      poly_part += p.partial(s);
      continue;
    }
    if (!sym.base || *sym.base != var) continue;
    if (sym.kind == SymbolKind::Chain) {
      const ChainInfo& chain = ctx->chains()[sym.chain];
      if (sym.order >= chain.max_order)
        throw Error(ErrorCode::TruncationExceeded,
                    "differentiating " + sym.name + " needs " + chain.name + "_" +
                        std::to_string(sym.order + 1) + " beyond max order " +
                        std::to_string(chain.max_order));
      poly_part += p.partial(s) * Polynomial::symbol(chain.symbols[sym.order + 1]);
    } else if (sym.kind == SymbolKind::Dependent) {
      const auto& [rn, rd] = ctx->dependent_rule(s);
      if (rd.is_constant()) {
        poly_part += p.partial(s) * rn * (1 / rd.constant_term());
      } else {
        rational_part += Expr::fraction(ctx, p.partial(s) * rn, rd);
        has_rational = true;
      }
    }
  }
  Expr result = Expr::fraction(ctx, std::move(poly_part), Polynomial(Rational(1)));
  if (has_rational) result += rational_part;
  return result;
}

Expr Expr::derivative(SymbolId var) const {
  if (!ctx_) return Expr(0);
  Expr dn = polynomial_derivative(ctx_, num_, var);
  if (den_.is_constant()) {
    return dn * Expr(1 / den_.constant_term());
  }
  Expr dd = polynomial_derivative(ctx_, den_, var);
  Expr n = Expr::fraction(ctx_, num_, Polynomial(Rational(1)));
  Expr d = Expr::fraction(ctx_, den_, Polynomial(Rational(1)));
  return (dn * d - n * dd) / (d * d);
}

Expr Expr::derivative(std::string_view var) const {
  if (!ctx_) throw Error(ErrorCode::UnknownSymbol, "constant expression has no variable '" + std::string(var) + "'");
  return derivative(ctx_->id(var));
}

namespace {

Expr substitute_polynomial(const Polynomial& p, const ContextPtr& target,
                           std::span<const std::optional<Expr>> images,
                           const std::vector<std::string>& names,
                           std::map<std::pair<SymbolId, unsigned>, Expr>& powers) {
  Expr sum(0);
  if (target) sum = Expr::fraction(target, Polynomial(), Polynomial(Rational(1)));
  for (const auto& [m, c] : p.terms()) {
    Expr term(c);
    for (SymbolId i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= images.size() || !images[i])
        throw Error(ErrorCode::MissingComponent,
                    "no image for symbol '" + (i < names.size() ? names[i] : std::to_string(i)) + "'");
      auto key = std::make_pair(i, static_cast<unsigned>(m[i]));
      auto it = powers.find(key);
      if (it == powers.end()) it = powers.emplace(key, images[i]->pow(m[i])).first;
      term *= it->second;
    }
    sum += term;
  }
  return sum;
}

}  // namespace

Expr Expr::substitute(const ContextPtr& target, std::span<const std::optional<Expr>> images) const {
  static const std::vector<std::string> kNoNames;
  const auto& names = ctx_ ? ctx_->names() : kNoNames;
  std::map<std::pair<SymbolId, unsigned>, Expr> powers;
  Expr n = substitute_polynomial(num_, target, images, names, powers);
  if (den_.is_constant()) return n * Expr(1 / den_.constant_term());
  Expr d = substitute_polynomial(den_, target, images, names, powers);
  return n / d;
}

std::string Expr::to_string() const {
  static const std::vector<std::string> kNoNames;
  const auto& names = ctx_ ? ctx_->names() : kNoNames;
  if (den_.is_constant() && den_.constant_term() == 1) return num_.to_string(names);
  return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.context() && b.context() && a.context() != b.context())
    throw Error(ErrorCode::ContextMismatch, "comparing expressions from different contexts");
  if (a.denominator() == b.denominator()) return a.numerator() == b.numerator();
  return a.numerator() * b.denominator() == b.numerator() * a.denominator();
}

}  // namespace leafchar
