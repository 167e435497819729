#include "leafchar/numeric/taylor.hpp"

#include <utility>

#include "leafchar/error.hpp"

namespace leafchar {

namespace {

void check_orders(const Taylor& a, const Taylor& b) {
  if (a.order() != b.order()) throw Error(ErrorCode::OrderMismatch, "Taylor series of different orders");
}

/// Sine and cosine series together.
std::pair<Taylor, Taylor> sin_cos(const Taylor& a) {
  const unsigned m = a.order();
  std::vector<Real> s(m + 1), c(m + 1);
  s[0] = boost::multiprecision::sin(a[0]);
  c[0] = boost::multiprecision::cos(a[0]);
  for (unsigned k = 1; k <= m; ++k) {
    Real sk = 0, ck = 0;
    for (unsigned j = 1; j <= k; ++j) {
      sk += j * a[j] * c[k - j];
      ck -= j * a[j] * s[k - j];
    }
    s[k] = sk / k;
    c[k] = ck / k;
  }
  return {Taylor(std::move(s)), Taylor(std::move(c))};
}

}  // namespace

Taylor Taylor::constant(const Real& x, unsigned order) {
  std::vector<Real> c(order + 1, Real(0));
  c[0] = x;
  return Taylor(std::move(c));
}

Taylor Taylor::variable(const Real& t0, unsigned order) {
  Taylor t = constant(t0, order);
  if (order >= 1) t.c_[1] = 1;
  return t;
}

Real Taylor::derivative(unsigned p) const {
  Real r = c_.at(p);
  for (unsigned i = 2; i <= p; ++i) r *= i;
  return r;
}

std::vector<Real> Taylor::derivatives() const {
  std::vector<Real> d;
  for (unsigned p = 0; p <= order(); ++p) d.push_back(derivative(p));
  return d;
}

Taylor& Taylor::operator+=(const Taylor& o) {
  check_orders(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Taylor& Taylor::operator-=(const Taylor& o) {
  check_orders(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Taylor Taylor::operator-() const {
  Taylor r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Taylor operator*(const Taylor& a, const Taylor& b) {
  check_orders(a, b);
  const unsigned m = a.order();
  std::vector<Real> c(m + 1, Real(0));
  for (unsigned i = 0; i <= m; ++i)
    for (unsigned j = 0; i + j <= m; ++j) c[i + j] += a[i] * b[j];
  return Taylor(std::move(c));
}

Taylor operator/(const Taylor& a, const Taylor& b) {
  check_orders(a, b);
  if (b[0] == 0) throw Error(ErrorCode::DivisionByZero, "Taylor division by a series vanishing at the point");
  const unsigned m = a.order();
  std::vector<Real> c(m + 1);
  for (unsigned k = 0; k <= m; ++k) {
    Real acc = a[k];
    for (unsigned j = 1; j <= k; ++j) acc -= b[j] * c[k - j];
    c[k] = acc / b[0];
  }
  return Taylor(std::move(c));
}

Taylor exp(const Taylor& a) {
  const unsigned m = a.order();
  std::vector<Real> e(m + 1);
  e[0] = boost::multiprecision::exp(a[0]);
  for (unsigned k = 1; k <= m; ++k) {
    Real acc = 0;
    for (unsigned j = 1; j <= k; ++j) acc += j * a[j] * e[k - j];
    e[k] = acc / k;
  }
  return Taylor(std::move(e));
}

Taylor log(const Taylor& a) {
  if (a[0] <= 0) throw Error(ErrorCode::InvalidArgument, "log of a nonpositive value");
  const unsigned m = a.order();
  std::vector<Real> l(m + 1);
  l[0] = boost::multiprecision::log(a[0]);
  for (unsigned k = 1; k <= m; ++k) {
    Real acc = k * a[k];
    for (unsigned j = 1; j < k; ++j) acc -= j * l[j] * a[k - j];
    l[k] = acc / (k * a[0]);
  }
  return Taylor(std::move(l));
}

Taylor sin(const Taylor& a) { return sin_cos(a).first; }
Taylor cos(const Taylor& a) { return sin_cos(a).second; }

Taylor pow(const Taylor& a, long n) {
  if (n < 0) return Taylor::constant(Real(1), a.order()) / pow(a, -n);
  Taylor result = Taylor::constant(Real(1), a.order()), base = a;
  while (n) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

Taylor differentiate(const Taylor& a) {
  if (a.order() == 0) throw Error(ErrorCode::TruncationExceeded, "cannot differentiate an order-0 series");
  std::vector<Real> c;
  for (unsigned k = 1; k <= a.order(); ++k) c.push_back(k * a[k]);
  return Taylor(std::move(c));
}

Taylor evaluate_taylor(const Ast& ast, const std::string& variable, const Real& t0, unsigned order) {
  auto rec = [&](const Ast& a) { return evaluate_taylor(a, variable, t0, order); };
  switch (ast.kind) {
    case Ast::Kind::Number: return Taylor::constant(to_real(ast.value), order);
    case Ast::Kind::Symbol:
      if (ast.name == variable) return Taylor::variable(t0, order);
      if (ast.name == "pi") return Taylor::constant(pi_value(), order);
      if (ast.name == "e") return Taylor::constant(boost::multiprecision::exp(Real(1)), order);
      throw Error(ErrorCode::UnknownSymbol, "unknown identifier " + ast.name);
    case Ast::Kind::Neg: return -rec(*ast.args[0]);
    case Ast::Kind::Add: return rec(*ast.args[0]) + rec(*ast.args[1]);
    case Ast::Kind::Sub: return rec(*ast.args[0]) - rec(*ast.args[1]);
    case Ast::Kind::Mul: return rec(*ast.args[0]) * rec(*ast.args[1]);
    case Ast::Kind::Div: return rec(*ast.args[0]) / rec(*ast.args[1]);
    case Ast::Kind::Pow: {
      const Ast& ex = *ast.args[1];
      Rational q;
      if (ex.kind == Ast::Kind::Number)
        q = ex.value;
      else if (ex.kind == Ast::Kind::Neg && ex.args[0]->kind == Ast::Kind::Number)
        q = -ex.args[0]->value;
      else
        throw Error(ErrorCode::InvalidArgument, "exponent must be an integer literal: " + ex.to_string());
      if (q.get_den() != 1 || !q.get_num().fits_slong_p())
        throw Error(ErrorCode::InvalidArgument, "exponent must be an integer literal: " + ex.to_string());
      return pow(rec(*ast.args[0]), q.get_num().get_si());
    }
    case Ast::Kind::Call: {
      Taylor a = rec(*ast.args[0]);
      if (ast.name == "exp") return exp(a);
      if (ast.name == "log") return log(a);
      if (ast.name == "sin") return sin(a);
      if (ast.name == "cos") return cos(a);
      throw Error(ErrorCode::UnknownSymbol, "unknown function " + ast.name);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "bad expression node");
}

}  // namespace leafchar
