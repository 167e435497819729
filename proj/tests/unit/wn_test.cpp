#include <doctest.h>

#include <numeric>
#include <random>

#include "leafchar/error.hpp"
#include "leafchar/linalg/rank.hpp"
#include "leafchar/wn/complex.hpp"

using namespace leafchar;

namespace {

// A formal vector field as its n polynomial components; x^j has symbol id j-1.
using Field = std::vector<Polynomial>;

Field random_field(std::mt19937_64& rng, unsigned n, unsigned max_degree = 3) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Field xi(n);
  for (unsigned i = 0; i < n; ++i)
    for (int t = 0; t < 6; ++t) {
      Monomial m(n, 0);
      unsigned left = std::uniform_int_distribution<unsigned>(0, max_degree)(rng);
      while (left--) ++m[std::uniform_int_distribution<unsigned>(0, n - 1)(rng)];
      while (!m.empty() && m.back() == 0) m.pop_back();
      xi[i] += Polynomial::monomial(m, coef(rng));
    }
  return xi;
}

Field bracket(const Field& xi, const Field& eta) {
  const std::size_t n = xi.size();
  Field out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += xi[j] * eta[i].partial(j) - eta[j] * xi[i].partial(j);
  return out;
}

/// c^i_J(xi) = d_J xi^i (0).
Rational evaluate(const WGenerator& g, const Field& xi) {
  Polynomial p = xi[g.upper - 1];
  for (unsigned j : g.lower) p = p.partial(j - 1);
  return p.constant_term();
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t q = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < q; ++c) {
    std::size_t piv = c;
    while (piv < q && m[piv][c] == 0) ++piv;
    if (piv == q) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < q; ++i) {
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < q; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

/// Alternating evaluation: (g_1 ^ ... ^ g_q)(xi_1..xi_q) = det[g_a(xi_b)].
Rational evaluate(const WCochain& c, const std::vector<Field>& args) {
  Rational total = 0;
  for (const auto& [key, coef] : c.terms()) {
    std::vector<std::vector<Rational>> m(key.size(), std::vector<Rational>(key.size()));
    for (std::size_t a = 0; a < key.size(); ++a)
      for (std::size_t b = 0; b < key.size(); ++b) m[a][b] = evaluate(key[a], args[b]);
    total += coef * determinant(m);
  }
  return total;
}

/// Chevalley-Eilenberg differential for trivial coefficients:
/// (d w)(xi_0..xi_q) = sum_{i<j} (-1)^(i+j) w([xi_i, xi_j], ..., ^i, ^j, ...).
Rational ce_differential(const WCochain& w, const std::vector<Field>& args) {
  Rational total = 0;
  for (std::size_t i = 0; i < args.size(); ++i)
    for (std::size_t j = i + 1; j < args.size(); ++j) {
      std::vector<Field> rest{bracket(args[i], args[j])};
      for (std::size_t k = 0; k < args.size(); ++k)
        if (k != i && k != j) rest.push_back(args[k]);
      total += ((i + j) % 2 ? -1 : 1) * evaluate(w, rest);
    }
  return total;
}

Field linear_field(unsigned n, unsigned a, unsigned b) {
  Field x(n);
  x[a - 1] = Polynomial::symbol(b - 1);
  return x;
}

WCochain random_cochain(std::mt19937_64& rng, unsigned n, unsigned degree, int max_weight, int terms = 3) {
  auto gens = enumerate_generators(n, max_weight);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> coef(-4, 4);
  WCochain c(degree);
  for (int t = 0; t < terms; ++t) {
    WMonomial m;
    for (unsigned k = 0; k < degree; ++k) m.push_back(gens[pick(rng)]);
    c += WCochain::monomial(coef(rng), m);
  }
  return c;
}

}  // namespace

TEST_CASE("enumerate_generators") {
  auto g0 = enumerate_generators(1, 0);
  REQUIRE(g0.size() == 2);
  CHECK(g0[0] == WGenerator(1, {}));
  CHECK(g0[1] == WGenerator(1, {1}));
  auto g1 = enumerate_generators(1, 1);
  REQUIRE(g1.size() == 3);
  CHECK(g1[2] == WGenerator(1, {1, 1}));
  auto g2 = enumerate_generators(2, -1);
  REQUIRE(g2.size() == 2);
  CHECK(g2[0] == WGenerator(1, {}));
  CHECK(g2[1] == WGenerator(2, {}));
  // n = 2 up to weight 1: 2 + 4 + 6
  CHECK(enumerate_generators(2, 1).size() == 12);
  CHECK(std::is_sorted(g1.begin(), g1.end()));
  CHECK(WGenerator(1, {2, 1}).lower == std::vector<unsigned>{1, 2});
  CHECK(WGenerator(1, {1, 1}).to_string() == "c^1_11");
}

TEST_CASE("differential: examples") {
  WGenerator c1(1, {}), c11(1, {1});
  CHECK(differential(c1, 1) == WCochain::monomial(1, {c11, c1}));
  CHECK(differential(WCochain::scalar(5), 1).is_zero());
  CHECK(differential(chern_cocycle(1, 1), 1).is_zero());
  // d c^1_1 = c^1_11 ^ c^1 = Psi_1
  CHECK(differential(c11, 1) == chern_cocycle(1, 1));
  CHECK(differential(c11, 1).to_string() == "-c^1 ∧ c^1_11");
}

TEST_CASE("differential matches the Chevalley-Eilenberg formula on formal fields") {
  std::mt19937_64 rng(31);
  for (unsigned n : {1u, 2u}) {
    for (const auto& g : enumerate_generators(n, 2)) {
      Field xi = random_field(rng, n), eta = random_field(rng, n);
      CAPTURE(g.to_string());
      CHECK(evaluate(differential(g, n), {xi, eta}) == ce_differential(WCochain::generator(g), {xi, eta}));
    }
    for (int trial = 0; trial < 10; ++trial) {
      WCochain w = random_cochain(rng, n, 2, 1);
      std::vector<Field> args{random_field(rng, n), random_field(rng, n), random_field(rng, n)};
      CHECK(evaluate(differential(w, n), args) == ce_differential(w, args));
    }
  }
}

TEST_CASE("d o d = 0 and weight preservation on generators of weight <= 3") {
  for (unsigned n : {1u, 2u})
    for (const auto& g : enumerate_generators(n, 3)) {
      CAPTURE(g.to_string());
      WCochain dg = differential(g, n);
      CHECK(differential(dg, n).is_zero());
      for (int w : dg.weights()) CHECK(w == g.weight());
    }
}

TEST_CASE("d is an antiderivation on random products") {
  std::mt19937_64 rng(5);
  for (unsigned n : {1u, 2u})
    for (int trial = 0; trial < 30; ++trial) {
      unsigned da = 1 + trial % 3, db = 1 + (trial / 3) % 2;
      WCochain a = random_cochain(rng, n, da, 2), b = random_cochain(rng, n, db, 2);
      WCochain rhs = wedge(differential(a, n), b);
      WCochain second = wedge(a, differential(b, n));
      rhs += (da % 2) ? -second : second;
      CHECK(differential(wedge(a, b), n) == rhs);
    }
}

TEST_CASE("coadjoint action matches direct evaluation and the Cartan formula") {
  std::mt19937_64 rng(77);
  for (unsigned n : {1u, 2u}) {
    for (unsigned a = 1; a <= n; ++a)
      for (unsigned b = 1; b <= n; ++b) {
        Field x = linear_field(n, a, b);
        // (L_X c)(xi) = -c([X, xi])
        for (const auto& g : enumerate_generators(n, 2)) {
          Field xi = random_field(rng, n);
          WCochain c = WCochain::generator(g);
          CHECK(evaluate(linear_lie_derivative(a, b, c), {xi}) == -evaluate(c, {bracket(x, xi)}));
          CHECK(evaluate(linear_interior(a, b, c), {}) == evaluate(c, {x}));
        }
        for (int trial = 0; trial < 8; ++trial) {
          WCochain c = random_cochain(rng, n, 1 + trial % 3, 1);
          WCochain cartan = differential(linear_interior(a, b, c), n) + linear_interior(a, b, differential(c, n));
          CHECK(linear_lie_derivative(a, b, c) == cartan);
        }
      }
  }
}

TEST_CASE("chern cocycles") {
  WCochain psi1 = chern_cocycle(1, 1);
  CHECK(psi1 == WCochain::monomial(1, {WGenerator(1, {1, 1}), WGenerator(1, {})}));
  for (auto [n, p] : {std::pair{1u, 1u}, {2u, 1u}, {2u, 2u}}) {
    WCochain psi = chern_cocycle(p, n);
    CHECK(psi.degree() == 2 * p);
    CHECK_FALSE(psi.is_zero());
    CHECK(psi.weights() == std::vector<int>{0});
    CHECK(differential(psi, n).is_zero());
    CHECK(is_relative(psi, n));
  }
  CHECK_THROWS_AS(chern_cocycle(0, 1), Error);
  CHECK_THROWS_AS(chern_cocycle(3, 2), Error);
  try {
    chern_cocycle(2, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndexOutOfRange);
  }
}

TEST_CASE("is_relative examples") {
  CHECK(is_relative(WCochain::scalar(1), 1));
  CHECK_FALSE(is_relative(WCochain::generator(WGenerator(1, {})), 1));
  CHECK_FALSE(is_relative(WCochain::generator(WGenerator(1, {1})), 1));
  // Euler field acts by minus the weight
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    WCochain c = random_cochain(rng, 2, 2, 2, 1);
    if (c.is_zero()) continue;
    WCochain euler = linear_lie_derivative(1, 1, c) + linear_lie_derivative(2, 2, c);
    CHECK(euler == Rational(-c.weights()[0]) * c);
  }
}

TEST_CASE("cohomology of the weight-0 truncation of W_1") {
  auto table = cohomology_ranks(1, 0, 5, false);
  REQUIRE(table.rows.size() == 6);
  std::vector<std::size_t> dims, betti;
  for (const auto& r : table.rows) {
    dims.push_back(r.dim);
    betti.push_back(r.betti);
  }
  CHECK(dims == std::vector<std::size_t>{1, 1, 1, 1, 0, 0});
  CHECK(betti == std::vector<std::size_t>{1, 0, 0, 1, 0, 0});
  CHECK(table.modular_agrees());
  CHECK(table.rows[0].rank == 0);
}

TEST_CASE("Euler characteristic and modular agreement across windows") {
  for (auto [n, w, q] : {std::tuple{1u, 0, 5u}, {1u, 1, 5u}, {1u, 2, 5u}, {2u, 0, 4u}, {2u, -1, 4u}, {2u, 1, 3u}}) {
    for (bool relative : {false, true}) {
      CAPTURE(n);
      CAPTURE(w);
      CAPTURE(relative);
      auto table = cohomology_ranks(n, w, q, relative);
      CHECK(table.modular_agrees());
      long chi_c = 0, chi_b = 0;
      for (const auto& r : table.rows) {
        long s = (r.degree % 2) ? -1 : 1;
        chi_c += s * static_cast<long>(r.dim);
        chi_b += s * static_cast<long>(r.betti);
      }
      // the window is a complete complex only when the top rank vanishes
      long top = static_cast<long>(table.rows.back().rank);
      CHECK(chi_c == chi_b + ((q % 2) ? -top : top));
      if (w == 0) CHECK(table.rows[0].betti == 1);
    }
  }
}

TEST_CASE("Psi_1 is a relative cocycle but not a relative coboundary") {
  WCochain psi1 = chern_cocycle(1, 1);
  CHECK(differential(psi1, 1).is_zero());
  CHECK_FALSE(is_coboundary(psi1, 1, true));
  // in the full complex it is d c^1_1
  CHECK(is_coboundary(psi1, 1, false));
  auto rel = cohomology_ranks(1, 0, 2, true);
  CHECK(rel.rows[1].dim == 0);
  CHECK(rel.rows[2].betti == 1);
}

TEST_CASE("resource budget") {
  CHECK_THROWS_AS(cohomology_ranks(2, 2, 4, false, 10), Error);
  try {
    weight_basis(2, 2, 4, 10);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResourceBudgetExceeded);
  }
}

TEST_CASE("rank oracles") {
  for (auto p : kRankPrimes) {
    CHECK(p > (1ULL << 30));
    Integer z(static_cast<unsigned long>(p));
    CHECK(mpz_probab_prime_p(z.get_mpz_t(), 40) > 0);
  }
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> e(-3, 3), dim(1, 7);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = dim(rng), cols = dim(rng), target = std::min<std::size_t>(dim(rng), std::min(rows, cols));
    // product of random rows x target and target x cols has rank <= target
    RationalMatrix a(rows, std::vector<Rational>(target)), b(target, std::vector<Rational>(cols));
    for (auto& r : a)
      for (auto& x : r) {
        x = Rational(e(rng), 1 + (trial % 3));
        x.canonicalize();
      }
    for (auto& r : b)
      for (auto& x : r) x = e(rng);
    RationalMatrix m(rows, std::vector<Rational>(cols, Rational(0)));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t k = 0; k < target; ++k) m[i][j] += a[i][k] * b[k][j];
    std::size_t r = exact_rank(m);
    CHECK(r <= target);
    CHECK(modular_rank(m, kRankPrimes[0]) == r);
    CHECK(modular_rank(m, kRankPrimes[1]) == r);
    auto ker = kernel_basis(m, cols);
    CHECK(ker.size() == cols - r);
    for (const auto& v : ker)
      for (const auto& row : m) {
        Rational dot = 0;
        for (std::size_t j = 0; j < cols; ++j) dot += row[j] * v[j];
        CHECK(dot == 0);
      }
  }
  CHECK(bareiss_rank({{2, 4}, {1, 2}}) == 1);
  CHECK(bareiss_rank({}) == 0);
}
