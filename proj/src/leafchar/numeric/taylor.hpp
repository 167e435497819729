#pragma once

// Truncated Taylor series c_0 + c_1 h + ... + c_m h^m with multiprecision
// coefficients. Derivatives are p! c_p.

#include <vector>

#include "leafchar/numeric/real.hpp"
#include "leafchar/parse/ast.hpp"

namespace leafchar {

class Taylor {
 public:
  Taylor() = default;
  Taylor(std::vector<Real> coefficients) : c_(std::move(coefficients)) {}
  static Taylor constant(const Real& x, unsigned order);
  /// The series of t at t0: t0 + h.
  static Taylor variable(const Real& t0, unsigned order);

  unsigned order() const { return static_cast<unsigned>(c_.size() - 1); }
  const Real& operator[](unsigned k) const { return c_.at(k); }
  const std::vector<Real>& coefficients() const { return c_; }
  /// p-th derivative at the expansion point.
  Real derivative(unsigned p) const;
  std::vector<Real> derivatives() const;

  Taylor& operator+=(const Taylor& o);
  Taylor& operator-=(const Taylor& o);
  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend Taylor operator*(const Taylor& a, const Taylor& b);
  friend Taylor operator/(const Taylor& a, const Taylor& b);
  Taylor operator-() const;

 private:
  std::vector<Real> c_;
};

Taylor exp(const Taylor& a);
Taylor log(const Taylor& a);
Taylor sin(const Taylor& a);
Taylor cos(const Taylor& a);
Taylor pow(const Taylor& a, long n);
/// Series of the derivative, one order lower.
Taylor differentiate(const Taylor& a);

/// Evaluates an expression in one variable as a Taylor series at t0. Besides
/// `variable`, the identifiers `pi` and `e` are recognized.
Taylor evaluate_taylor(const Ast& ast, const std::string& variable, const Real& t0, unsigned order);

}  // namespace leafchar
