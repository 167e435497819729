#include "leafchar/symbolics/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace leafchar {

namespace {

void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

}  // namespace

unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = static_cast<std::uint16_t>(r[i] + b[i]);
  return r;
}

bool monomial_divides(const Monomial& d, const Monomial& m) {
  if (d.size() > m.size()) return false;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > m[i]) return false;
  return true;
}

Monomial monomial_quotient(const Monomial& m, const Monomial& d) {
  Monomial r = m;
  for (std::size_t i = 0; i < d.size(); ++i) r[i] = static_cast<std::uint16_t>(r[i] - d[i]);
  trim(r);
  return r;
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  Monomial r(std::min(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::min(a[i], b[i]);
  trim(r);
  return r;
}

Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint16_t x = i < a.size() ? a[i] : 0;
    std::uint16_t y = i < b.size() ? b[i] : 0;
    r[i] = std::max(x, y);
  }
  return r;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::uint16_t x = i < a.size() ? a[i] : 0;
    std::uint16_t y = i < b.size() ? b[i] : 0;
    if (x != y) return x > y;
  }
  return false;
}

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p;
  Monomial t = m;
  trim(t);
  if (c != 0) p.terms_.emplace(std::move(t), c);
  return p;
}

Polynomial Polynomial::symbol(std::size_t id, unsigned power) {
  Monomial m(id + 1, 0);
  m[id] = static_cast<std::uint16_t>(power);
  return monomial(m);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Polynomial::leading_monomial() const { return terms_.begin()->first; }
const Rational& Polynomial::leading_coefficient() const { return terms_.begin()->second; }

std::size_t Polynomial::symbol_bound() const {
  std::size_t b = 0;
  for (const auto& [m, c] : terms_) b = std::max(b, m.size());
  return b;
}

bool Polynomial::depends_on(std::size_t id) const {
  for (const auto& [m, c] : terms_)
    if (id < m.size() && m[id] != 0) return true;
  return false;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  if (a.is_zero() || b.is_zero()) return r;
  if (a.is_constant()) return b * a.terms_.begin()->second;
  if (b.is_constant()) return a * b.terms_.begin()->second;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(monomial_product(ma, mb), ca * cb);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(Rational(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::partial(std::size_t id) const {
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    if (id >= m.size() || m[id] == 0) continue;
    Monomial t = m;
    Rational k = c * static_cast<unsigned long>(t[id]);
    t[id] = static_cast<std::uint16_t>(t[id] - 1);
    trim(t);
    r.add_term(t, k);
  }
  return r;
}

Polynomial Polynomial::multiply_monomial(const Monomial& m, const Rational& c) const {
  Polynomial r;
  if (c == 0) return r;
  for (const auto& [t, v] : terms_) r.terms_.emplace(monomial_product(t, m), v * c);
  return r;
}

Polynomial Polynomial::divide_monomial(const Monomial& m) const {
  Polynomial r;
  for (const auto& [t, v] : terms_) r.terms_.emplace(monomial_quotient(t, m), v);
  return r;
}

Monomial Polynomial::content_monomial() const {
  if (terms_.empty()) return {};
  Monomial g = terms_.begin()->first;
  for (const auto& [m, c] : terms_) {
    g = monomial_gcd(g, m);
    if (g.empty()) break;
  }
  return g;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
  if (d.is_zero()) return std::nullopt;
  if (d.is_monomial()) {
    const auto& [dm, dc] = *d.terms_.begin();
    Polynomial q;
    for (const auto& [m, c] : terms_) {
      if (!monomial_divides(dm, m)) return std::nullopt;
      q.terms_.emplace(monomial_quotient(m, dm), c / dc);
    }
    return q;
  }
  Polynomial rem = *this;
  Polynomial q;
  const Monomial& lm = d.leading_monomial();
  const Rational& lc = d.leading_coefficient();
  while (!rem.is_zero()) {
    const Monomial& rm = rem.leading_monomial();
    if (!monomial_divides(lm, rm)) return std::nullopt;
    Monomial qm = monomial_quotient(rm, lm);
    Rational qc = rem.leading_coefficient() / lc;
    q.add_term(qm, qc);
    rem -= d.multiply_monomial(qm, qc);
  }
  return q;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    bool negative = c < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool unit = (mag == 1);
    bool wrote = false;
    if (!unit || m.empty()) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << (i < names.size() ? names[i] : "s" + std::to_string(i));
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace leafchar
