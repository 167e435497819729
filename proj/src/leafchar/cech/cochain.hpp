#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>

#include "leafchar/cech/presentation.hpp"

namespace leafchar {

/// Element of C^{k,l}: an l-form on U_0 for every string U_0 -> ... -> U_k.
struct CechCochain {
  unsigned k = 0, l = 0;
  std::map<ChartString, Form> values;
  /// Consulted for strings missing from `values`; lets a cochain be defined
  /// on every string without materializing it.
  std::function<Form(const ChartString&)> generator;

  /// Throws MissingString.
  Form value(const ChartString& s, const AtlasPresentation& p) const;
};

/// (delta w)(g_1..g_{k+1}) = g_1^* w(g_2..) + sum_i (-1)^i w(.., g_{i+1} g_i, ..)
///                           + (-1)^{k+1} w(g_1..g_k),
/// on every string of k+1 arrows with word length <= word_bound.
CechCochain cech_delta(const CechCochain& w, const AtlasPresentation& p, unsigned word_bound);

/// delta w on a single string of k+1 arrows.
Form delta_value(const CechCochain& w, const AtlasPresentation& p, const ChartString& s);
/// delta w on every string, computed on demand and memoized; the result
/// refers to `p`, which must outlive it.
CechCochain lazy_cech_delta(const CechCochain& w, const AtlasPresentation& p);

/// (-1)^k d w on the strings of k arrows with word length <= word_bound.
CechCochain signed_de_rham(const CechCochain& w, const AtlasPresentation& p, unsigned word_bound);

/// D = delta + (-1)^k d, split into its (k+1, l) and (k, l+1) parts.
struct TotalDifferential {
  CechCochain delta;
  CechCochain d;
};
TotalDifferential total_differential(const CechCochain& w, const AtlasPresentation& p, unsigned word_bound);

/// Element of the total complex, keyed by (k, l).
using TotalCochain = std::map<std::pair<unsigned, unsigned>, CechCochain>;
TotalCochain total_differential(const TotalCochain& w, const AtlasPresentation& p, unsigned word_bound);
/// Same on every string, computed on demand.
TotalCochain lazy_total_differential(const TotalCochain& w, const AtlasPresentation& p);

/// Strings (in order) whose value is nonzero; empty means zero.
std::optional<ChartString> first_nonzero(const CechCochain& w);

/// Deterministic pseudo-random cochain: polynomial coefficients of degree
/// <= max_degree in the chart variables, small integer coefficients, seeded
/// by (seed, string). Defined lazily on every string.
CechCochain random_cochain(const AtlasPresentation& p, unsigned k, unsigned l, std::uint64_t seed,
                           unsigned max_degree = 2);

}  // namespace leafchar
