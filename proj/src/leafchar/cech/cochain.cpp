#include "leafchar/cech/cochain.hpp"

#include <memory>
#include <mutex>
#include <random>

#include "leafchar/error.hpp"

namespace leafchar {

namespace {

/// The string with arrows i and i+1 merged (0-based).
ChartString merge(const ChartString& s, std::size_t i, const AtlasPresentation& p) {
  ChartString t{s.source, {}};
  for (std::size_t j = 0; j < s.arrows.size(); ++j) {
    if (j == i) {
      t.arrows.push_back(p.compose(s.arrows[i], s.arrows[i + 1]));
      ++j;
    } else {
      t.arrows.push_back(s.arrows[j]);
    }
  }
  return t;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t string_hash(const ChartString& s) {
  std::uint64_t h = mix(0x51ed270b27a3c6e5ULL, s.source);
  for (const auto& a : s.arrows) {
    h = mix(h, 0xa5a5a5a5ULL);
    h = mix(h, a.source);
    for (std::size_t g : a.word) h = mix(h, g + 1);
  }
  return h;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

void monomials(std::size_t nvars, unsigned degree, std::size_t start, Monomial& cur, std::vector<Monomial>& out) {
  out.push_back(cur);
  if (degree == 0) return;
  for (std::size_t i = start; i < nvars; ++i) {
    ++cur[i];
    monomials(nvars, degree - 1, i, cur, out);
    --cur[i];
  }
}

}  // namespace

Form CechCochain::value(const ChartString& s, const AtlasPresentation& p) const {
  if (auto it = values.find(s); it != values.end()) return it->second;
  if (generator) return generator(s);
  throw Error(ErrorCode::MissingString, "cochain has no value on " + to_string(s, p));
}

Form delta_value(const CechCochain& w, const AtlasPresentation& p, const ChartString& s) {
  const std::size_t n = s.arrows.size();  // k + 1
  if (n != w.k + 1) throw Error(ErrorCode::InvalidArgument, "string length does not match the cochain degree");
  // g_1^* w(g_2, ..., g_{k+1})
  ChartString tail{p.target(s.arrows[0]), {s.arrows.begin() + 1, s.arrows.end()}};
  Form acc = p.pullback(s.arrows[0], w.value(tail, p));
  for (std::size_t i = 1; i < n; ++i) {
    Form term = w.value(merge(s, i - 1, p), p);
    if (i % 2) acc -= term;
    else acc += term;
  }
  ChartString head{s.source, {s.arrows.begin(), s.arrows.end() - 1}};
  Form last = w.value(head, p);
  if (n % 2) acc -= last;
  else acc += last;
  return acc;
}

CechCochain cech_delta(const CechCochain& w, const AtlasPresentation& p, unsigned word_bound) {
  CechCochain out{w.k + 1, w.l, {}, {}};
  for (const auto& s : composable_strings(p, w.k + 1, word_bound)) out.values.emplace(s, delta_value(w, p, s));
  return out;
}

namespace {

/// Wraps a per-string rule with a shared memo table.
std::function<Form(const ChartString&)> memoized(std::function<Form(const ChartString&)> rule) {
  struct Memo {
    std::mutex mutex;
    std::map<ChartString, Form> table;
  };
  auto memo = std::make_shared<Memo>();
  return [memo, rule = std::move(rule)](const ChartString& s) {
    {
      std::lock_guard lock(memo->mutex);
      if (auto it = memo->table.find(s); it != memo->table.end()) return it->second;
    }
    Form v = rule(s);
    std::lock_guard lock(memo->mutex);
    return memo->table.emplace(s, std::move(v)).first->second;
  };
}

}  // namespace

CechCochain lazy_cech_delta(const CechCochain& w, const AtlasPresentation& p) {
  CechCochain out{w.k + 1, w.l, {}, {}};
  out.generator = memoized([w, pp = &p](const ChartString& s) { return delta_value(w, *pp, s); });
  return out;
}

CechCochain signed_de_rham(const CechCochain& w, const AtlasPresentation& p, unsigned word_bound) {
  CechCochain out{w.k, w.l + 1, {}, {}};
  for (const auto& s : composable_strings(p, w.k, word_bound)) {
    Form dv = exterior_derivative(w.value(s, p));
    if (w.k % 2) dv = -dv;
    out.values.emplace(s, std::move(dv));
  }
  return out;
}

TotalDifferential total_differential(const CechCochain& w, const AtlasPresentation& p, unsigned word_bound) {
  return {cech_delta(w, p, word_bound), signed_de_rham(w, p, word_bound)};
}

TotalCochain lazy_total_differential(const TotalCochain& w, const AtlasPresentation& p) {
  std::map<std::pair<unsigned, unsigned>, std::vector<std::pair<int, std::function<Form(const ChartString&)>>>> parts;
  for (const auto& [key, c] : w) {
    CechCochain delta = lazy_cech_delta(c, p);
    parts[{c.k + 1, c.l}].emplace_back(1, delta.generator);
    int sign = c.k % 2 ? -1 : 1;
    parts[{c.k, c.l + 1}].emplace_back(sign, [c, pp = &p](const ChartString& s) {
      return exterior_derivative(c.value(s, *pp));
    });
  }
  TotalCochain out;
  for (auto& [key, rules] : parts) {
    CechCochain c{key.first, key.second, {}, {}};
    c.generator = memoized([rules, l = key.second, pp = &p](const ChartString& s) {
      Form acc(pp->charts.at(s.source).context, l);
      for (const auto& [sign, rule] : rules) {
        if (sign > 0) acc += rule(s);
        else acc -= rule(s);
      }
      return acc;
    });
    out.emplace(key, std::move(c));
  }
  return out;
}

TotalCochain total_differential(const TotalCochain& w, const AtlasPresentation& p, unsigned word_bound) {
  TotalCochain out;
  auto accumulate = [&](CechCochain c) {
    auto key = std::make_pair(c.k, c.l);
    auto it = out.find(key);
    if (it == out.end()) {
      out.emplace(key, std::move(c));
      return;
    }
    for (auto& [s, v] : c.values) {
      auto jt = it->second.values.find(s);
      if (jt == it->second.values.end()) it->second.values.emplace(s, std::move(v));
      else jt->second += v;
    }
  };
  for (const auto& [key, c] : w) {
    auto parts = total_differential(c, p, word_bound);
    accumulate(std::move(parts.delta));
    accumulate(std::move(parts.d));
  }
  return out;
}

std::optional<ChartString> first_nonzero(const CechCochain& w) {
  for (const auto& [s, v] : w.values)
    if (!v.is_zero()) return s;
  return std::nullopt;
}

CechCochain random_cochain(const AtlasPresentation& p, unsigned k, unsigned l, std::uint64_t seed,
                           unsigned max_degree) {
  CechCochain c{k, l, {}, {}};
  const AtlasPresentation* pp = &p;
  c.generator = [pp, l, seed, max_degree](const ChartString& s) {
    const ContextPtr& ctx = pp->charts.at(s.source).context;
    const auto& vars = ctx->variables();
    Form out(ctx, l);
    if (l > vars.size()) return out;
    std::mt19937_64 rng(mix(seed, string_hash(s)));
    std::uniform_int_distribution<int> coef(-3, 3);
    std::vector<std::vector<std::size_t>> keys;
    std::vector<std::size_t> cur;
    subsets(vars.size(), l, 0, cur, keys);
    std::vector<Monomial> monos;
    Monomial m(vars.size(), 0);
    monomials(vars.size(), max_degree, 0, m, monos);
    for (const auto& key : keys) {
      Polynomial poly;
      for (const auto& mono : monos) {
        int c0 = coef(rng);
        if (c0 == 0 || rng() % 2) continue;
        Monomial full(ctx->size(), 0);
        for (std::size_t i = 0; i < vars.size(); ++i) full[vars[i]] = mono[i];
        while (!full.empty() && full.back() == 0) full.pop_back();
        poly += Polynomial::monomial(full, c0);
      }
      if (poly.is_zero()) continue;
      std::vector<SymbolId> dvars;
      for (std::size_t i : key) dvars.push_back(vars[i]);
      out += Form::monomial(ctx, Expr::fraction(ctx, poly, Polynomial(1)), dvars);
    }
    return out;
  };
  return c;
}

}  // namespace leafchar
