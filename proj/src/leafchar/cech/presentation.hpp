#pragma once

#include <compare>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "leafchar/symbolics/form.hpp"

namespace leafchar {

struct Chart {
  std::string name;
  ContextPtr context;
  std::string domain;
};

/// A generating morphism source -> target. The map gives the target
/// coordinates as Exprs in the source context.
struct Generator {
  std::string name;
  std::size_t source = 0, target = 0;
  ChartMap map;
};

/// Generator indices in application order: {g, h} is h after g.
using Word = std::vector<std::size_t>;

/// Rewrite rule lhs -> rhs applied to subwords.
struct Relation {
  Word lhs, rhs;
};

/// A morphism given by a word; the empty word is the identity of `source`.
struct Arrow {
  std::size_t source = 0;
  Word word;
  auto operator<=>(const Arrow&) const = default;
};

class AtlasPresentation {
 public:
  std::vector<Chart> charts;
  std::vector<Generator> generators;
  std::vector<Relation> relations;
  /// Free-form note carried into reports.
  std::string description;

  AtlasPresentation() = default;
  AtlasPresentation(const AtlasPresentation& o);
  AtlasPresentation& operator=(const AtlasPresentation& o);

  /// Throws UnknownSymbol.
  std::size_t chart_index(std::string_view name) const;
  std::size_t generator_index(std::string_view name) const;

  /// Checks chart/generator consistency and that every generator image is
  /// an Expr of its source chart. Throws InvalidArgument.
  void validate() const;

  /// Applies the relations until none matches. Throws InvalidArgument if
  /// rewriting does not terminate within a fixed step budget.
  Word reduce(Word w) const;
  std::size_t target(const Arrow& a) const;
  /// `second` after `first`; requires target(first) == second.source.
  Arrow compose(const Arrow& first, const Arrow& second) const;
  /// "id_<chart>" or generator names joined by '.' in application order.
  std::string name(const Arrow& a) const;
  /// Composite chart map (cached).
  const ChartMap& chart_map(const Arrow& a) const;

  Expr pullback(const Arrow& a, const Expr& e) const;
  Form pullback(const Arrow& a, const Form& w) const;

  /// All reduced arrows out of `source` of word length <= bound, ordered by
  /// (length, word).
  std::vector<Arrow> arrows_from(std::size_t source, unsigned bound) const;

 private:
  mutable std::mutex cache_mutex_;
  mutable std::map<Arrow, ChartMap> cache_;
};

/// U_0 -> U_1 -> ... -> U_k with arrows[i] : U_i -> U_{i+1}; for k = 0 just
/// the chart U_0.
struct ChartString {
  std::size_t source = 0;
  std::vector<Arrow> arrows;
  auto operator<=>(const ChartString&) const = default;
  std::size_t length() const { return arrows.size(); }
};

std::string to_string(const ChartString& s, const AtlasPresentation& p);
/// Last chart of the string.
std::size_t string_target(const ChartString& s, const AtlasPresentation& p);

/// All composable strings of k arrows, each a reduced word of at most
/// word_bound generators. Throws InvalidArgument if word_bound == 0.
std::vector<ChartString> composable_strings(const AtlasPresentation& p, unsigned k, unsigned word_bound);

/// Largest reduced word length among the arrows of s.
unsigned word_length(const ChartString& s);

}  // namespace leafchar
