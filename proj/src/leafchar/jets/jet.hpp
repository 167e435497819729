#pragma once

// Truncated jets of maps of the line. Entries store derivatives, not Taylor
// coefficients: x_p = d^p k / dt^p (0).

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "leafchar/error.hpp"
#include "leafchar/symbolics/expr.hpp"

namespace leafchar {

template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static Rational from_rational(const Rational& q) { return q; }
  static bool is_zero(const Rational& x) { return x == 0; }
};

template <>
struct FieldTraits<Expr> {
  static Expr from_rational(const Rational& q) { return Expr(q); }
  static bool is_zero(const Expr& x) { return x.is_zero(); }
};

inline Rational factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return Rational(r);
}

template <class T>
class Jet {
 public:
  Jet() = default;
  /// entries x_0..x_N; N >= 1.
  explicit Jet(std::vector<T> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 2) throw Error(ErrorCode::InvalidArgument, "jet order must be positive");
  }

  static Jet identity(unsigned order) {
    std::vector<T> e(order + 1, FieldTraits<T>::from_rational(0));
    e[1] = FieldTraits<T>::from_rational(1);
    return Jet(std::move(e));
  }

  unsigned order() const { return static_cast<unsigned>(entries_.size() - 1); }
  const T& operator[](std::size_t p) const { return entries_.at(p); }
  const std::vector<T>& entries() const { return entries_; }
  bool is_regular() const { return !FieldTraits<T>::is_zero(entries_[1]); }

 private:
  std::vector<T> entries_;
};

/// Quotient coordinates of a regular jet: y_0 = x_0, y_p = x_p / x_1^p for
/// p >= 2 (y_1 = 1 is implicit).
template <class T>
class NormalizedJet {
 public:
  NormalizedJet(T y0, std::vector<T> higher) : y0_(std::move(y0)), higher_(std::move(higher)) {}

  unsigned order() const { return static_cast<unsigned>(higher_.size() + 1); }
  /// p = 0 or 2 <= p <= order.
  const T& operator[](std::size_t p) const {
    if (p == 0) return y0_;
    if (p == 1 || p > order()) throw Error(ErrorCode::IndexOutOfRange, "normalized jet index " + std::to_string(p));
    return higher_[p - 2];
  }

 private:
  T y0_;
  std::vector<T> higher_;
};

/// Partial Bell polynomials of the derivative sequence f_1..f_N:
/// table[n][k] = n!/k! [t^n] (sum_{i>=1} f_i t^i / i!)^k, for 1 <= k <= n <= N.
template <class T>
std::vector<std::vector<T>> bell_table(const std::vector<T>& f, unsigned order) {
  using FT = FieldTraits<T>;
  const T zero = FT::from_rational(0);
  std::vector<T> series(order + 1, zero);
  for (unsigned i = 1; i <= order; ++i) series[i] = f[i] * FT::from_rational(1 / factorial(i));
  std::vector<std::vector<T>> table(order + 1, std::vector<T>(order + 1, zero));
  std::vector<T> power = series;  // series^k, truncated at t^order
  for (unsigned k = 1; k <= order; ++k) {
    for (unsigned n = k; n <= order; ++n) table[n][k] = power[n] * FT::from_rational(factorial(n) / factorial(k));
    if (k == order) break;
    std::vector<T> next(order + 1, zero);
    for (unsigned a = k; a <= order; ++a) {
      if (FT::is_zero(power[a])) continue;
      for (unsigned b = 1; a + b <= order; ++b) {
        if (FT::is_zero(series[b])) continue;
        next[a + b] += power[a] * series[b];
      }
    }
    power = std::move(next);
  }
  return table;
}

/// Faa di Bruno: the jet of g o f, where g's derivatives are taken at f_0.
template <class T>
Jet<T> jet_compose(const Jet<T>& g, const Jet<T>& f) {
  if (g.order() != f.order())
    throw Error(ErrorCode::OrderMismatch,
                "composing jets of orders " + std::to_string(g.order()) + " and " + std::to_string(f.order()));
  const unsigned order = f.order();
  auto bell = bell_table(f.entries(), order);
  std::vector<T> h(order + 1, FieldTraits<T>::from_rational(0));
  h[0] = g[0];
  for (unsigned n = 1; n <= order; ++n)
    for (unsigned k = 1; k <= n; ++k) {
      if (FieldTraits<T>::is_zero(bell[n][k]) || FieldTraits<T>::is_zero(g[k])) continue;
      h[n] += g[k] * bell[n][k];
    }
  return Jet<T>(std::move(h));
}

/// Compositional inverse of a regular jet based at the origin.
template <class T>
Jet<T> jet_invert(const Jet<T>& f) {
  using FT = FieldTraits<T>;
  if (!FT::is_zero(f[0])) throw Error(ErrorCode::NonzeroBasePoint, "jet_invert needs x_0 = 0");
  if (!f.is_regular()) throw Error(ErrorCode::NotRegular, "jet_invert needs x_1 != 0");
  const unsigned order = f.order();
  auto bell = bell_table(f.entries(), order);
  std::vector<T> g(order + 1, FT::from_rational(0));
  g[1] = FT::from_rational(1) / f[1];
  T f1_power = f[1];
  for (unsigned n = 2; n <= order; ++n) {
    f1_power = f1_power * f[1];
    T acc = FT::from_rational(0);
    for (unsigned k = 1; k < n; ++k) acc += g[k] * bell[n][k];
    g[n] = -acc / f1_power;
  }
  return Jet<T>(std::move(g));
}

/// GL(1) action: entry p scaled by lambda^p.
template <class T>
Jet<T> gl1_act(const T& lambda, const Jet<T>& s) {
  if (FieldTraits<T>::is_zero(lambda)) throw Error(ErrorCode::ZeroScalar, "GL(1) acts by nonzero scalars");
  std::vector<T> e = s.entries();
  T scale = FieldTraits<T>::from_rational(1);
  for (unsigned p = 1; p < e.size(); ++p) {
    scale = scale * lambda;
    e[p] = e[p] * scale;
  }
  return Jet<T>(std::move(e));
}

template <class T>
NormalizedJet<T> normalize_jet(const Jet<T>& s) {
  if (!s.is_regular()) throw Error(ErrorCode::NotRegular, "normalize_jet needs x_1 != 0");
  std::vector<T> higher;
  T x1_power = s[1];
  for (unsigned p = 2; p <= s.order(); ++p) {
    x1_power = x1_power * s[1];
    higher.push_back(s[p] / x1_power);
  }
  return NormalizedJet<T>(s[0], std::move(higher));
}

}  // namespace leafchar
