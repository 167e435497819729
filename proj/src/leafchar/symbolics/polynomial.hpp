#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace leafchar {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exponent vector indexed by symbol id. Trailing zeros are always trimmed so
/// that equal monomials compare equal regardless of context size.
using Monomial = std::vector<std::uint16_t>;

unsigned total_degree(const Monomial& m);
Monomial monomial_product(const Monomial& a, const Monomial& b);
bool monomial_divides(const Monomial& d, const Monomial& m);
Monomial monomial_quotient(const Monomial& m, const Monomial& d);
Monomial monomial_gcd(const Monomial& a, const Monomial& b);
Monomial monomial_lcm(const Monomial& a, const Monomial& b);

/// Graded-lexicographic order, greatest first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over Q. Terms are kept in descending grlex
/// order, so the first term is the leading term.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  Polynomial() = default;
  explicit Polynomial(const Rational& c);
  static Polynomial monomial(const Monomial& m, const Rational& c = 1);
  static Polynomial symbol(std::size_t id, unsigned power = 1);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t term_count() const { return terms_.size(); }
  /// Constant term (zero if absent).
  Rational constant_term() const;
  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;

  /// One past the largest symbol id that occurs.
  std::size_t symbol_bound() const;
  bool depends_on(std::size_t id) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  Polynomial operator-() const;
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  Polynomial pow(unsigned e) const;
  /// Formal partial derivative with respect to the symbol with the given id.
  Polynomial partial(std::size_t id) const;
  Polynomial multiply_monomial(const Monomial& m, const Rational& c = 1) const;
  /// Requires every term to be divisible by m.
  Polynomial divide_monomial(const Monomial& m) const;
  /// gcd of all term monomials.
  Monomial content_monomial() const;
  /// Quotient if `d` divides this polynomial exactly, nullopt otherwise.
  std::optional<Polynomial> divide_exact(const Polynomial& d) const;

  /// Canonical text; names[i] is the printed name of symbol i.
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

}  // namespace leafchar
