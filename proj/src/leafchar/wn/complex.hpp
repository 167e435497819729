#pragma once

// Polynomial cochains on the Lie algebra W_n of formal vector fields.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "leafchar/symbolics/polynomial.hpp"

namespace leafchar {

/// c^i_{j_1...j_r}: upper index i, sorted lower indices, all in 1..n.
struct WGenerator {
  unsigned upper = 1;
  std::vector<unsigned> lower;

  WGenerator() = default;
  WGenerator(unsigned i, std::vector<unsigned> j);

  int weight() const { return static_cast<int>(lower.size()) - 1; }
  std::string to_string() const;
};

/// Weight, then upper index, then lower indices lexicographically.
bool operator<(const WGenerator& a, const WGenerator& b);
bool operator==(const WGenerator& a, const WGenerator& b);

using WMonomial = std::vector<WGenerator>;  // strictly increasing

class WCochain {
 public:
  explicit WCochain(unsigned degree = 0) : degree_(degree) {}

  static WCochain scalar(const Rational& c);
  static WCochain generator(const WGenerator& g);
  /// Sorts the factors, tracking the sign; repeated factors give zero.
  static WCochain monomial(const Rational& c, WMonomial factors);

  unsigned degree() const { return degree_; }
  const std::map<WMonomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const WMonomial& key) const;
  /// Distinct term weights.
  std::vector<int> weights() const;

  /// key must already be canonical.
  void add_term(const WMonomial& key, const Rational& c);

  WCochain& operator+=(const WCochain& o);
  WCochain& operator-=(const WCochain& o);
  WCochain operator-() const;
  friend WCochain operator+(WCochain a, const WCochain& b) { return a += b; }
  friend WCochain operator-(WCochain a, const WCochain& b) { return a -= b; }
  friend WCochain operator*(const Rational& c, const WCochain& a);
  bool operator==(const WCochain& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

  std::string to_string() const;

 private:
  unsigned degree_;
  std::map<WMonomial, Rational> terms_;
};

int monomial_weight(const WMonomial& m);

WCochain wedge(const WCochain& a, const WCochain& b);

std::vector<WGenerator> enumerate_generators(unsigned n, int max_weight);

/// The sum over l runs over 1..n, so the dimension is explicit.
WCochain differential(const WGenerator& g, unsigned n);
WCochain differential(const WCochain& c, unsigned n);

/// Psi_p = tr(Psi ^ ... ^ Psi), Psi^i_j = sum_k c^i_{jk} ^ c^k.
WCochain chern_cocycle(unsigned p, unsigned n);

/// Interior product with x^b d/dx^a (removes c^a_b).
WCochain linear_interior(unsigned a, unsigned b, const WCochain& c);
/// Lie derivative along x^b d/dx^a by the coadjoint action
///   L c^i_J = -mult_b(J) c^i_{J-b+a} + delta^i_a c^b_J.
WCochain linear_lie_derivative(unsigned a, unsigned b, const WCochain& c);

bool is_relative(const WCochain& c, unsigned n);

/// Canonical monomials of the given degree and weight.
std::vector<WMonomial> weight_basis(unsigned n, int weight, unsigned degree, std::size_t budget);

struct CohomologyRow {
  unsigned degree = 0;
  std::size_t dim = 0;
  std::size_t rank = 0;   ///< rank of d on this degree
  std::size_t betti = 0;
  std::size_t rank_mod[2] = {0, 0};
};

struct CohomologyTable {
  unsigned n = 0;
  int weight = 0;
  bool relative = false;
  std::vector<CohomologyRow> rows;
  bool modular_agrees() const;
};

inline constexpr std::size_t kDefaultBasisBudget = 20000;

/// Ranks of the weight-graded truncation for degrees 0..max_degree.
/// Throws ResourceBudgetExceeded when a basis outgrows `budget`.
CohomologyTable cohomology_ranks(unsigned n, int weight, unsigned max_degree, bool relative,
                                 std::size_t budget = kDefaultBasisBudget);

/// Whether c = d x for some x of the same weight (inside the relative
/// subcomplex when `relative`). c must be weight-homogeneous.
bool is_coboundary(const WCochain& c, unsigned n, bool relative, std::size_t budget = kDefaultBasisBudget);

}  // namespace leafchar
