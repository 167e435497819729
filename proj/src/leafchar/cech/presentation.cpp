#include "leafchar/cech/presentation.hpp"

#include <algorithm>
#include <set>

#include "leafchar/error.hpp"

namespace leafchar {

namespace {

constexpr unsigned kRewriteBudget = 100000;

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

AtlasPresentation::AtlasPresentation(const AtlasPresentation& o)
    : charts(o.charts), generators(o.generators), relations(o.relations), description(o.description) {}

AtlasPresentation& AtlasPresentation::operator=(const AtlasPresentation& o) {
  if (this != &o) {
    charts = o.charts;
    generators = o.generators;
    relations = o.relations;
    description = o.description;
    std::lock_guard lock(cache_mutex_);
    cache_.clear();
  }
  return *this;
}

std::size_t AtlasPresentation::chart_index(std::string_view name) const {
  for (std::size_t i = 0; i < charts.size(); ++i)
    if (charts[i].name == name) return i;
  throw Error(ErrorCode::UnknownSymbol, "no chart named " + std::string(name));
}

std::size_t AtlasPresentation::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == name) return i;
  throw Error(ErrorCode::UnknownSymbol, "no generator named " + std::string(name));
}

void AtlasPresentation::validate() const {
  if (charts.empty()) throw Error(ErrorCode::InvalidArgument, "presentation has no charts");
  std::set<std::string> names;
  for (const auto& c : charts) {
    if (!c.context) throw Error(ErrorCode::InvalidArgument, "chart " + c.name + " has no context");
    if (!names.insert(c.name).second) throw Error(ErrorCode::InvalidArgument, "duplicate chart " + c.name);
  }
  for (const auto& g : generators) {
    if (g.source >= charts.size() || g.target >= charts.size())
      throw Error(ErrorCode::InvalidArgument, "generator " + g.name + " has an unknown endpoint");
    if (!names.insert(g.name).second) throw Error(ErrorCode::InvalidArgument, "duplicate name " + g.name);
    if (g.map.source != charts[g.source].context || g.map.target != charts[g.target].context)
      throw Error(ErrorCode::InvalidArgument, "generator " + g.name + " map does not match its charts");
    const auto& tctx = *charts[g.target].context;
    for (SymbolId v : tctx.variables()) {
      const auto& img = g.map.images.at(v);
      if (!img) throw Error(ErrorCode::MissingComponent, "generator " + g.name + " has no image for " + tctx.names()[v]);
      if (img->context() && img->context() != charts[g.source].context)
        throw Error(ErrorCode::ContextMismatch, "generator " + g.name + " image is not in the source chart");
    }
  }
  for (const auto& r : relations) {
    if (r.lhs.empty()) throw Error(ErrorCode::InvalidArgument, "relation with empty left side");
    for (std::size_t g : r.lhs)
      if (g >= generators.size()) throw Error(ErrorCode::InvalidArgument, "relation mentions an unknown generator");
    for (std::size_t g : r.rhs)
      if (g >= generators.size()) throw Error(ErrorCode::InvalidArgument, "relation mentions an unknown generator");
  }
}

Word AtlasPresentation::reduce(Word w) const {
  for (unsigned step = 0; step < kRewriteBudget; ++step) {
    bool changed = false;
    for (const auto& r : relations) {
      auto it = std::search(w.begin(), w.end(), r.lhs.begin(), r.lhs.end());
      if (it == w.end()) continue;
      it = w.erase(it, it + static_cast<std::ptrdiff_t>(r.lhs.size()));
      w.insert(it, r.rhs.begin(), r.rhs.end());
      changed = true;
      break;
    }
    if (!changed) return w;
  }
  throw Error(ErrorCode::InvalidArgument, "word rewriting did not terminate");
}

std::size_t AtlasPresentation::target(const Arrow& a) const {
  std::size_t at = a.source;
  for (std::size_t g : a.word) {
    if (generators.at(g).source != at)
      throw Error(ErrorCode::InvalidArgument, "word is not composable at " + generators[g].name);
    at = generators[g].target;
  }
  return at;
}

Arrow AtlasPresentation::compose(const Arrow& first, const Arrow& second) const {
  if (target(first) != second.source)
    throw Error(ErrorCode::InvalidArgument, "arrows " + name(first) + " and " + name(second) + " do not compose");
  Word w = first.word;
  w.insert(w.end(), second.word.begin(), second.word.end());
  return Arrow{first.source, reduce(std::move(w))};
}

std::string AtlasPresentation::name(const Arrow& a) const {
  if (a.word.empty()) return "id_" + charts.at(a.source).name;
  std::string out;
  for (std::size_t g : a.word) {
    if (!out.empty()) out += '.';
    out += generators.at(g).name;
  }
  return out;
}

const ChartMap& AtlasPresentation::chart_map(const Arrow& a) const {
  std::lock_guard lock(cache_mutex_);
  if (auto it = cache_.find(a); it != cache_.end()) return it->second;
  target(a);
  ChartMap m = ChartMap::identity(charts.at(a.source).context);
  for (std::size_t g : a.word) m = generators[g].map.after(m);
  return cache_.emplace(a, std::move(m)).first->second;
}

Expr AtlasPresentation::pullback(const Arrow& a, const Expr& e) const {
  if (a.word.empty()) return e;
  return leafchar::pullback(chart_map(a), e);
}

Form AtlasPresentation::pullback(const Arrow& a, const Form& w) const {
  if (a.word.empty()) return w;
  return leafchar::pullback(chart_map(a), w);
}

std::vector<Arrow> AtlasPresentation::arrows_from(std::size_t source, unsigned bound) const {
  if (source >= charts.size()) throw Error(ErrorCode::IndexOutOfRange, "chart index out of range");
  std::set<Word> seen{Word{}};
  std::vector<Word> frontier{Word{}};
  for (unsigned len = 1; len <= bound; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      std::size_t at = target(Arrow{source, w});
      for (std::size_t g = 0; g < generators.size(); ++g) {
        if (generators[g].source != at) continue;
        Word ext = w;
        ext.push_back(g);
        ext = reduce(std::move(ext));
        if (seen.insert(ext).second) next.push_back(std::move(ext));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Word> words(seen.begin(), seen.end());
  std::sort(words.begin(), words.end(), word_less);
  std::vector<Arrow> out;
  for (auto& w : words)
    if (w.size() <= bound) out.push_back(Arrow{source, std::move(w)});
  return out;
}

std::string to_string(const ChartString& s, const AtlasPresentation& p) {
  std::string out = "(" + p.charts.at(s.source).name;
  for (const auto& a : s.arrows) out += ", " + p.name(a);
  return out + ")";
}

std::size_t string_target(const ChartString& s, const AtlasPresentation& p) {
  return s.arrows.empty() ? s.source : p.target(s.arrows.back());
}

std::vector<ChartString> composable_strings(const AtlasPresentation& p, unsigned k, unsigned word_bound) {
  if (word_bound == 0) throw Error(ErrorCode::InvalidArgument, "word_bound must be at least 1");
  std::vector<std::vector<Arrow>> out_arrows(p.charts.size());
  for (std::size_t c = 0; c < p.charts.size(); ++c) out_arrows[c] = p.arrows_from(c, word_bound);
  std::vector<ChartString> current;
  for (std::size_t c = 0; c < p.charts.size(); ++c) current.push_back(ChartString{c, {}});
  for (unsigned step = 0; step < k; ++step) {
    std::vector<ChartString> next;
    for (const auto& s : current) {
      std::size_t at = string_target(s, p);
      for (const auto& a : out_arrows[at]) {
        ChartString t = s;
        t.arrows.push_back(a);
        next.push_back(std::move(t));
      }
    }
    current = std::move(next);
  }
  return current;
}

unsigned word_length(const ChartString& s) {
  std::size_t m = 0;
  for (const auto& a : s.arrows) m = std::max(m, a.word.size());
  return static_cast<unsigned>(m);
}

}  // namespace leafchar
