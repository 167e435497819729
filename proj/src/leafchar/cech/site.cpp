#include "leafchar/cech/site.hpp"

#include <algorithm>
#include <set>

#include "leafchar/error.hpp"

namespace leafchar {

namespace {

constexpr std::size_t kMaxSieveMorphisms = 20;

bool contains(const Sieve& s, std::size_t f) { return std::binary_search(s.begin(), s.end(), f); }

long comp(const FiniteSite& s, std::size_t g, std::size_t f) { return s.compose.at(g).at(f); }

std::vector<std::size_t> into(const FiniteSite& s, std::size_t object) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < s.morphisms.size(); ++f)
    if (s.morphisms[f].target == object) out.push_back(f);
  return out;
}

void check_category(const FiniteSite& s) {
  const std::size_t n = s.morphisms.size();
  if (s.identities.size() != s.objects.size() || s.covers.size() != s.objects.size())
    throw Error(ErrorCode::MalformedSite, "identity or cover lists do not match the objects");
  if (s.compose.size() != n) throw Error(ErrorCode::MalformedSite, "composition table has wrong size");
  for (const auto& row : s.compose)
    if (row.size() != n) throw Error(ErrorCode::MalformedSite, "composition table has wrong size");
  for (const auto& m : s.morphisms)
    if (m.source >= s.objects.size() || m.target >= s.objects.size())
      throw Error(ErrorCode::MalformedSite, "morphism " + m.name + " has an unknown endpoint");
  for (std::size_t a = 0; a < s.objects.size(); ++a) {
    std::size_t id = s.identities[a];
    if (id >= n || s.morphisms[id].source != a || s.morphisms[id].target != a)
      throw Error(ErrorCode::MalformedSite, "identity of " + s.objects[a] + " is not an endomorphism of it");
  }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      long h = s.compose[g][f];
      bool composable = s.morphisms[f].target == s.morphisms[g].source;
      if (!composable) {
        if (h != -1) throw Error(ErrorCode::MalformedSite, "composite defined for non-composable pair");
        continue;
      }
      if (h < 0 || static_cast<std::size_t>(h) >= n)
        throw Error(ErrorCode::MalformedSite, s.morphisms[g].name + " after " + s.morphisms[f].name + " is missing");
      const auto& hm = s.morphisms[static_cast<std::size_t>(h)];
      if (hm.source != s.morphisms[f].source || hm.target != s.morphisms[g].target)
        throw Error(ErrorCode::MalformedSite, "composite " + hm.name + " has wrong endpoints");
    }
  for (std::size_t f = 0; f < n; ++f) {
    const auto& m = s.morphisms[f];
    if (comp(s, s.identities[m.target], f) != static_cast<long>(f) ||
        comp(s, f, s.identities[m.source]) != static_cast<long>(f))
      throw Error(ErrorCode::MalformedSite, "identities are not units for " + m.name);
  }
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g) {
      if (s.morphisms[f].target != s.morphisms[g].source) continue;
      auto gf = static_cast<std::size_t>(comp(s, g, f));
      for (std::size_t h = 0; h < n; ++h) {
        if (s.morphisms[g].target != s.morphisms[h].source) continue;
        auto hg = static_cast<std::size_t>(comp(s, h, g));
        if (comp(s, h, gf) != comp(s, hg, f))
          throw Error(ErrorCode::MalformedSite, "composition is not associative at (" + s.morphisms[h].name + ", " +
                                                    s.morphisms[g].name + ", " + s.morphisms[f].name + ")");
      }
    }
  for (std::size_t a = 0; a < s.objects.size(); ++a)
    for (const auto& sv : s.covers[a])
      if (!is_sieve(s, a, sv))
        throw Error(ErrorCode::MalformedSite, "cover " + to_string(s, sv) + " on " + s.objects[a] + " is not a sieve");
}

}  // namespace

bool is_sieve(const FiniteSite& s, std::size_t object, const Sieve& sieve) {
  if (!std::is_sorted(sieve.begin(), sieve.end()) ||
      std::adjacent_find(sieve.begin(), sieve.end()) != sieve.end())
    return false;
  for (std::size_t f : sieve) {
    if (f >= s.morphisms.size() || s.morphisms[f].target != object) return false;
    for (std::size_t h = 0; h < s.morphisms.size(); ++h) {
      if (s.morphisms[h].target != s.morphisms[f].source) continue;
      if (!contains(sieve, static_cast<std::size_t>(comp(s, f, h)))) return false;
    }
  }
  return true;
}

Sieve maximal_sieve(const FiniteSite& s, std::size_t object) { return into(s, object); }

Sieve generated_sieve(const FiniteSite& s, std::size_t object, const std::vector<std::size_t>& morphisms) {
  std::set<std::size_t> out;
  for (std::size_t f : morphisms) {
    if (s.morphisms.at(f).target != object)
      throw Error(ErrorCode::InvalidArgument, s.morphisms[f].name + " does not end at " + s.objects.at(object));
    for (std::size_t h = 0; h < s.morphisms.size(); ++h)
      if (s.morphisms[h].target == s.morphisms[f].source) out.insert(static_cast<std::size_t>(comp(s, f, h)));
  }
  return {out.begin(), out.end()};
}

Sieve pullback_sieve(const FiniteSite& s, std::size_t f, const Sieve& sieve) {
  Sieve out;
  for (std::size_t h = 0; h < s.morphisms.size(); ++h)
    if (s.morphisms[h].target == s.morphisms.at(f).source && contains(sieve, static_cast<std::size_t>(comp(s, f, h))))
      out.push_back(h);
  return out;
}

std::vector<Sieve> all_sieves(const FiniteSite& s, std::size_t object) {
  std::vector<std::size_t> ms = into(s, object);
  if (ms.size() > kMaxSieveMorphisms)
    throw Error(ErrorCode::ResourceBudgetExceeded, "too many morphisms into " + s.objects.at(object));
  std::vector<Sieve> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ms.size()); ++mask) {
    Sieve sv;
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (mask >> i & 1) sv.push_back(ms[i]);
    if (is_sieve(s, object, sv)) out.push_back(std::move(sv));
  }
  std::sort(out.begin(), out.end(), [](const Sieve& a, const Sieve& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::string to_string(const FiniteSite& s, const Sieve& sieve) {
  std::string out = "{";
  for (std::size_t i = 0; i < sieve.size(); ++i) out += (i ? ", " : "") + s.morphisms.at(sieve[i]).name;
  return out + "}";
}

bool SiteReport::passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed; });
}

SiteReport verify_site_axioms(const FiniteSite& s) {
  check_category(s);
  auto is_cover = [&](std::size_t a, const Sieve& sv) {
    return std::find(s.covers[a].begin(), s.covers[a].end(), sv) != s.covers[a].end();
  };
  SiteReport report;

  AxiomResult ax1{1, "the maximal sieve on every object is a cover", true, ""};
  for (std::size_t a = 0; a < s.objects.size() && ax1.passed; ++a)
    if (!is_cover(a, maximal_sieve(s, a))) {
      ax1.passed = false;
      ax1.witness = "object " + s.objects[a];
    }
  report.axioms.push_back(ax1);

  AxiomResult ax2{2, "f*S is a cover for every cover S and every f into its object", true, ""};
  for (std::size_t a = 0; a < s.objects.size() && ax2.passed; ++a)
    for (const auto& sv : s.covers[a]) {
      for (std::size_t f : into(s, a)) {
        Sieve pb = pullback_sieve(s, f, sv);
        if (!is_cover(s.morphisms[f].source, pb)) {
          ax2.passed = false;
          ax2.witness = "f = " + s.morphisms[f].name + ", S = " + to_string(s, sv) + ", f*S = " + to_string(s, pb);
          break;
        }
      }
      if (!ax2.passed) break;
    }
  report.axioms.push_back(ax2);

  AxiomResult ax3{3, "R is a cover when f*R covers for every f in some cover S", true, ""};
  for (std::size_t a = 0; a < s.objects.size() && ax3.passed; ++a) {
    std::vector<Sieve> candidates = all_sieves(s, a);
    for (const auto& sv : s.covers[a]) {
      for (const auto& r : candidates) {
        if (is_cover(a, r)) continue;
        bool local = std::all_of(sv.begin(), sv.end(), [&](std::size_t f) {
          return is_cover(s.morphisms[f].source, pullback_sieve(s, f, r));
        });
        if (local) {
          ax3.passed = false;
          ax3.witness = "S = " + to_string(s, sv) + ", R = " + to_string(s, r);
          break;
        }
      }
      if (!ax3.passed) break;
    }
  }
  report.axioms.push_back(ax3);
  return report;
}

FiniteSite induced_site(const AtlasPresentation& p, std::size_t max_morphisms) {
  std::vector<Arrow> arrows;
  std::set<Arrow> seen;
  for (std::size_t c = 0; c < p.charts.size(); ++c) {
    std::vector<Arrow> frontier{Arrow{c, {}}};
    seen.insert(frontier[0]);
    arrows.push_back(frontier[0]);
    while (!frontier.empty()) {
      std::vector<Arrow> next;
      for (const auto& a : frontier) {
        std::size_t at = p.target(a);
        for (std::size_t g = 0; g < p.generators.size(); ++g) {
          if (p.generators[g].source != at) continue;
          Arrow b = p.compose(a, Arrow{at, {g}});
          if (seen.insert(b).second) {
            arrows.push_back(b);
            next.push_back(b);
            if (arrows.size() > max_morphisms)
              throw Error(ErrorCode::ResourceBudgetExceeded, "chart category has more than " +
                                                                 std::to_string(max_morphisms) + " morphisms");
          }
        }
      }
      frontier = std::move(next);
    }
  }
  FiniteSite s;
  for (const auto& c : p.charts) s.objects.push_back(c.name);
  std::map<Arrow, std::size_t> index;
  for (const auto& a : arrows) {
    index.emplace(a, s.morphisms.size());
    s.morphisms.push_back(SiteMorphism{p.name(a), a.source, p.target(a)});
  }
  for (std::size_t c = 0; c < p.charts.size(); ++c) s.identities.push_back(index.at(Arrow{c, {}}));
  const std::size_t n = arrows.size();
  s.compose.assign(n, std::vector<long>(n, -1));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      if (s.morphisms[f].target != s.morphisms[g].source) continue;
      auto it = index.find(p.compose(arrows[f], arrows[g]));
      if (it == index.end()) throw Error(ErrorCode::MalformedSite, "composite outside the enumerated arrows");
      s.compose[g][f] = static_cast<long>(it->second);
    }
  s.covers.resize(s.objects.size());
  for (std::size_t a = 0; a < s.objects.size(); ++a) s.covers[a].push_back(maximal_sieve(s, a));
  return s;
}

FiniteSite trivial_site(const std::string& object) {
  FiniteSite s;
  s.objects = {object};
  s.morphisms = {SiteMorphism{"id_" + object, 0, 0}};
  s.identities = {0};
  s.compose = {{0}};
  s.covers = {{Sieve{0}}};
  return s;
}

FiniteSite mutate_site(const FiniteSite& s, unsigned axiom, std::size_t a, std::size_t b) {
  if (a >= s.objects.size() || b >= s.objects.size() || a == b)
    throw Error(ErrorCode::InvalidArgument, "mutation needs two distinct objects");
  FiniteSite m = s;
  switch (axiom) {
    case 1:
      for (auto& c : m.covers) c.clear();
      break;
    case 2:
      m.covers[a] = all_sieves(m, a);
      m.covers[b] = {maximal_sieve(m, b)};
      break;
    case 3: {
      std::vector<std::size_t> from_b;
      for (std::size_t f : into(m, a))
        if (m.morphisms[f].source == b) from_b.push_back(f);
      if (from_b.empty()) throw Error(ErrorCode::InvalidArgument, "no morphism from b to a");
      m.covers[a] = {maximal_sieve(m, a), generated_sieve(m, a, from_b)};
      m.covers[b] = {maximal_sieve(m, b), Sieve{}};
      break;
    }
    default:
      throw Error(ErrorCode::InvalidArgument, "axiom must be 1, 2 or 3");
  }
  return m;
}

}  // namespace leafchar
