#include "leafchar/wn/complex.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "leafchar/error.hpp"
#include "leafchar/linalg/rank.hpp"

namespace leafchar {

WGenerator::WGenerator(unsigned i, std::vector<unsigned> j) : upper(i), lower(std::move(j)) {
  std::sort(lower.begin(), lower.end());
}

std::string WGenerator::to_string() const {
  std::string s = "c^" + std::to_string(upper);
  if (lower.empty()) return s;
  bool wide = std::any_of(lower.begin(), lower.end(), [](unsigned j) { return j > 9; });
  s += "_";
  for (std::size_t k = 0; k < lower.size(); ++k) {
    if (wide && k) s += ",";
    s += std::to_string(lower[k]);
  }
  return s;
}

bool operator<(const WGenerator& a, const WGenerator& b) {
  if (a.weight() != b.weight()) return a.weight() < b.weight();
  if (a.upper != b.upper) return a.upper < b.upper;
  return a.lower < b.lower;
}

bool operator==(const WGenerator& a, const WGenerator& b) { return a.upper == b.upper && a.lower == b.lower; }

namespace {

/// Sorts in place; returns the permutation sign, or 0 on a repeated factor.
int canonicalize(WMonomial& m) {
  int sign = 1;
  for (std::size_t i = 1; i < m.size(); ++i)
    for (std::size_t k = i; k > 0 && m[k] < m[k - 1]; --k) {
      std::swap(m[k], m[k - 1]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < m.size(); ++i)
    if (m[i] == m[i - 1]) return 0;
  return sign;
}

void check_degree(const WCochain& a, const WCochain& b) {
  if (!a.is_zero() && !b.is_zero() && a.degree() != b.degree())
    throw Error(ErrorCode::InvalidArgument, "adding cochains of degrees " + std::to_string(a.degree()) + " and " +
                                                std::to_string(b.degree()));
}

}  // namespace

WCochain WCochain::scalar(const Rational& c) {
  WCochain out(0);
  out.add_term({}, c);
  return out;
}

WCochain WCochain::generator(const WGenerator& g) {
  WCochain out(1);
  out.add_term({g}, 1);
  return out;
}

WCochain WCochain::monomial(const Rational& c, WMonomial factors) {
  WCochain out(static_cast<unsigned>(factors.size()));
  int sign = canonicalize(factors);
  if (sign != 0) out.add_term(factors, sign * c);
  return out;
}

Rational WCochain::coefficient(const WMonomial& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<int> WCochain::weights() const {
  std::set<int> w;
  for (const auto& [k, c] : terms_) w.insert(monomial_weight(k));
  return {w.begin(), w.end()};
}

void WCochain::add_term(const WMonomial& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

WCochain& WCochain::operator+=(const WCochain& o) {
  check_degree(*this, o);
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

WCochain& WCochain::operator-=(const WCochain& o) { return *this += -o; }

WCochain WCochain::operator-() const {
  WCochain out(degree_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
  return out;
}

WCochain operator*(const Rational& c, const WCochain& a) {
  WCochain out(a.degree());
  if (c == 0) return out;
  for (const auto& [k, v] : a.terms()) out.add_term(k, c * v);
  return out;
}

std::string WCochain::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    Rational mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (mag != 1 || k.empty()) os << mag.get_str() << (k.empty() ? "" : " ");
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? " ∧ " : "") << k[i].to_string();
    first = false;
  }
  return os.str();
}

int monomial_weight(const WMonomial& m) {
  int w = 0;
  for (const auto& g : m) w += g.weight();
  return w;
}

WCochain wedge(const WCochain& a, const WCochain& b) {
  WCochain out(a.degree() + b.degree());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      WMonomial m = ka;
      m.insert(m.end(), kb.begin(), kb.end());
      int sign = canonicalize(m);
      if (sign != 0) out.add_term(m, sign * ca * cb);
    }
  return out;
}

std::vector<WGenerator> enumerate_generators(unsigned n, int max_weight) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (max_weight < -1) throw Error(ErrorCode::InvalidArgument, "max_weight must be at least -1");
  std::vector<WGenerator> out;
  for (int r = 0; r <= max_weight + 1; ++r) {
    // sorted multi-indices of length r, lexicographic
    std::vector<std::vector<unsigned>> lowers;
    std::vector<unsigned> cur;
    std::function<void(unsigned)> rec = [&](unsigned from) {
      if (cur.size() == static_cast<std::size_t>(r)) {
        lowers.push_back(cur);
        return;
      }
      for (unsigned j = from; j <= n; ++j) {
        cur.push_back(j);
        rec(j);
        cur.pop_back();
      }
    };
    rec(1);
    for (unsigned i = 1; i <= n; ++i)
      for (const auto& l : lowers) out.emplace_back(i, l);
  }
  return out;
}

WCochain differential(const WGenerator& g, unsigned n) {
  // Sum over subsets S of positions of the lower index and over l:
  //   c^i_{l, J\S} ^ c^l_{J_S}.
  const std::size_t r = g.lower.size();
  WCochain out(2);
  for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
    std::vector<unsigned> in, rest;
    for (std::size_t s = 0; s < r; ++s) ((mask >> s) & 1 ? in : rest).push_back(g.lower[s]);
    for (unsigned l = 1; l <= n; ++l) {
      std::vector<unsigned> first = rest;
      first.push_back(l);
      WMonomial m{WGenerator(g.upper, first), WGenerator(l, in)};
      int sign = canonicalize(m);
      if (sign != 0) out.add_term(m, sign);
    }
  }
  return out;
}

namespace {

/// Applies a degree +1 operation on generators as an antiderivation.
WCochain extend_antiderivation(const WCochain& c, const std::function<WCochain(const WGenerator&)>& on_gen,
                               int op_degree) {
  WCochain out(static_cast<unsigned>(static_cast<int>(c.degree()) + op_degree));
  for (const auto& [key, coef] : c.terms())
    for (std::size_t i = 0; i < key.size(); ++i) {
      WCochain image = on_gen(key[i]);
      // op passes the first i factors: sign (-1)^(i * op_degree)
      Rational sign = ((i * static_cast<std::size_t>(op_degree < 0 ? -op_degree : op_degree)) % 2) ? -1 : 1;
      for (const auto& [ikey, icoef] : image.terms()) {
        WMonomial m(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(i));
        m.insert(m.end(), ikey.begin(), ikey.end());
        m.insert(m.end(), key.begin() + static_cast<std::ptrdiff_t>(i) + 1, key.end());
        int s = canonicalize(m);
        if (s != 0) out.add_term(m, s * sign * coef * icoef);
      }
    }
  return out;
}

}  // namespace

WCochain differential(const WCochain& c, unsigned n) {
  return extend_antiderivation(c, [n](const WGenerator& g) { return differential(g, n); }, 1);
}

WCochain chern_cocycle(unsigned p, unsigned n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (p < 1 || p > n)
    throw Error(ErrorCode::IndexOutOfRange, "Chern index " + std::to_string(p) + " outside 1.." + std::to_string(n));
  std::vector<std::vector<WCochain>> psi(n, std::vector<WCochain>(n, WCochain(2)));
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j)
      for (unsigned k = 1; k <= n; ++k)
        psi[i - 1][j - 1] += WCochain::monomial(1, {WGenerator(i, {j, k}), WGenerator(k, {})});
  // power = Psi^p as a matrix of forms
  auto power = psi;
  for (unsigned step = 1; step < p; ++step) {
    std::vector<std::vector<WCochain>> next(n, std::vector<WCochain>(n, WCochain(2 * (step + 1))));
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        for (unsigned k = 0; k < n; ++k) next[i][j] += wedge(power[i][k], psi[k][j]);
    power = std::move(next);
  }
  WCochain trace(2 * p);
  for (unsigned i = 0; i < n; ++i) trace += power[i][i];
  return trace;
}

WCochain linear_interior(unsigned a, unsigned b, const WCochain& c) {
  const WGenerator target(a, {b});
  WCochain out(c.degree() == 0 ? 0 : c.degree() - 1);
  for (const auto& [key, coef] : c.terms())
    for (std::size_t i = 0; i < key.size(); ++i)
      if (key[i] == target) {
        WMonomial m = key;
        m.erase(m.begin() + static_cast<std::ptrdiff_t>(i));
        out.add_term(m, (i % 2) ? -coef : coef);
      }
  return out;
}

WCochain linear_lie_derivative(unsigned a, unsigned b, const WCochain& c) {
  auto on_gen = [a, b](const WGenerator& g) {
    WCochain img(1);
    auto mult = static_cast<long>(std::count(g.lower.begin(), g.lower.end(), b));
    if (mult) {
      std::vector<unsigned> j = g.lower;
      j.erase(std::find(j.begin(), j.end(), b));
      j.push_back(a);
      img.add_term({WGenerator(g.upper, j)}, -mult);
    }
    if (g.upper == a) img.add_term({WGenerator(b, g.lower)}, 1);
    return img;
  };
  return extend_antiderivation(c, on_gen, 0);
}

bool is_relative(const WCochain& c, unsigned n) {
  for (unsigned a = 1; a <= n; ++a)
    for (unsigned b = 1; b <= n; ++b)
      if (!linear_interior(a, b, c).is_zero() || !linear_lie_derivative(a, b, c).is_zero()) return false;
  return true;
}

std::vector<WMonomial> weight_basis(unsigned n, int weight, unsigned degree, std::size_t budget) {
  std::vector<WMonomial> out;
  if (degree == 0) {
    if (weight == 0) out.push_back({});
    return out;
  }
  int max_gen_weight = weight + static_cast<int>(std::min<unsigned>(n, degree - 1));
  if (max_gen_weight < -1) return out;
  auto gens = enumerate_generators(n, max_gen_weight);
  // prefix sums of weights for the smallest-k lower bound
  WMonomial cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int sum) {
    std::size_t left = degree - cur.size();
    if (left == 0) {
      if (sum == weight) {
        out.push_back(cur);
        if (out.size() > budget)
          throw Error(ErrorCode::ResourceBudgetExceeded,
                      "basis in degree " + std::to_string(degree) + " exceeds " + std::to_string(budget));
      }
      return;
    }
    for (std::size_t i = from; i + left <= gens.size(); ++i) {
      int lower_bound = sum;
      for (std::size_t k = 0; k < left; ++k) lower_bound += gens[i + k].weight();
      if (lower_bound > weight) break;  // weights are nondecreasing along gens
      cur.push_back(gens[i]);
      rec(i + 1, sum + gens[i].weight());
      cur.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

namespace {

struct Graded {
  std::vector<WMonomial> basis;
  std::map<WMonomial, std::size_t> index;
  RationalMatrix space;  ///< rows span the (relative) subspace, in basis coordinates
};

std::vector<Rational> coordinates(const WCochain& c, const Graded& g) {
  std::vector<Rational> v(g.basis.size(), Rational(0));
  for (const auto& [k, coef] : c.terms()) {
    auto it = g.index.find(k);
    if (it == g.index.end()) throw Error(ErrorCode::InvalidArgument, "cochain term outside the weight window");
    v[it->second] = coef;
  }
  return v;
}

WCochain from_coordinates(const std::vector<Rational>& v, const Graded& g, unsigned degree) {
  WCochain c(degree);
  for (std::size_t i = 0; i < v.size(); ++i) c.add_term(g.basis[i], v[i]);
  return c;
}

Graded graded_piece(unsigned n, int weight, unsigned degree, bool relative, std::size_t budget) {
  Graded g;
  g.basis = weight_basis(n, weight, degree, budget);
  for (std::size_t i = 0; i < g.basis.size(); ++i) g.index.emplace(g.basis[i], i);
  if (!relative) {
    for (std::size_t i = 0; i < g.basis.size(); ++i) {
      std::vector<Rational> e(g.basis.size(), Rational(0));
      e[i] = 1;
      g.space.push_back(std::move(e));
    }
    return g;
  }
  // constraint rows: every coefficient of every interior product and Lie
  // derivative along gl_n
  std::map<std::pair<int, WMonomial>, std::size_t> row_of;
  RationalMatrix constraints;
  for (std::size_t col = 0; col < g.basis.size(); ++col) {
    WCochain m(degree);
    m.add_term(g.basis[col], 1);
    int tag = 0;
    for (unsigned a = 1; a <= n; ++a)
      for (unsigned b = 1; b <= n; ++b) {
        for (const WCochain& img : {linear_interior(a, b, m), linear_lie_derivative(a, b, m)}) {
          for (const auto& [k, coef] : img.terms()) {
            auto [it, fresh] = row_of.try_emplace({tag, k}, constraints.size());
            if (fresh) constraints.emplace_back(g.basis.size(), Rational(0));
            constraints[it->second][col] = coef;
          }
          ++tag;
        }
      }
  }
  g.space = kernel_basis(constraints, g.basis.size());
  return g;
}

RationalMatrix differential_matrix(const Graded& from, const Graded& to, unsigned degree, unsigned n) {
  RationalMatrix m;
  for (const auto& v : from.space) m.push_back(coordinates(differential(from_coordinates(v, from, degree), n), to));
  return m;
}

}  // namespace

bool CohomologyTable::modular_agrees() const {
  for (const auto& r : rows)
    if (r.rank_mod[0] != r.rank || r.rank_mod[1] != r.rank) return false;
  return true;
}

CohomologyTable cohomology_ranks(unsigned n, int weight, unsigned max_degree, bool relative, std::size_t budget) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  CohomologyTable table;
  table.n = n;
  table.weight = weight;
  table.relative = relative;
  std::vector<Graded> pieces;
  for (unsigned q = 0; q <= max_degree + 1; ++q) pieces.push_back(graded_piece(n, weight, q, relative, budget));
  std::size_t previous_rank = 0;
  for (unsigned q = 0; q <= max_degree; ++q) {
    CohomologyRow row;
    row.degree = q;
    row.dim = pieces[q].space.size();
    RationalMatrix d = differential_matrix(pieces[q], pieces[q + 1], q, n);
    row.rank = exact_rank(d);
    for (int k = 0; k < 2; ++k) row.rank_mod[k] = modular_rank(d, kRankPrimes[k]);
    row.betti = row.dim - row.rank - previous_rank;
    previous_rank = row.rank;
    table.rows.push_back(row);
  }
  return table;
}

bool is_coboundary(const WCochain& c, unsigned n, bool relative, std::size_t budget) {
  if (c.is_zero()) return true;
  auto weights = c.weights();
  if (weights.size() != 1) throw Error(ErrorCode::InvalidArgument, "cochain is not weight-homogeneous");
  if (c.degree() == 0) return false;
  Graded from = graded_piece(n, weights[0], c.degree() - 1, relative, budget);
  Graded to = graded_piece(n, weights[0], c.degree(), false, budget);
  RationalMatrix d = differential_matrix(from, to, c.degree() - 1, n);
  std::size_t r = exact_rank(d);
  d.push_back(coordinates(c, to));
  return exact_rank(d) == r;
}

}  // namespace leafchar
