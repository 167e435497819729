#pragma once

#include <cstdint>
#include <string>

#include "leafchar/cech/cochain.hpp"

namespace leafchar::testing {

struct SquareOutcome {
  bool delta_ok = false;
  bool total_ok = false;
  std::size_t strings = 0;  ///< strings checked for delta^2
  std::string witness;
};

/// delta(delta w) and D(D w) on strings of word length <= bound for a random
/// (k, l) cochain w.
inline SquareOutcome check_squares(const AtlasPresentation& p, unsigned k, unsigned l, std::uint64_t seed,
                                   unsigned bound) {
  SquareOutcome out;
  CechCochain w = random_cochain(p, k, l, seed);
  CechCochain dd = cech_delta(lazy_cech_delta(w, p), p, bound);
  out.strings = dd.values.size();
  auto bad = first_nonzero(dd);
  out.delta_ok = !bad;
  if (bad) out.witness = "delta^2 != 0 on " + to_string(*bad, p);

  TotalCochain t{{{k, l}, w}};
  TotalCochain tt = total_differential(lazy_total_differential(t, p), p, bound);
  out.total_ok = true;
  for (const auto& [key, c] : tt)
    if (auto s = first_nonzero(c)) {
      out.total_ok = false;
      if (out.witness.empty())
        out.witness = "D^2 != 0 in bidegree (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                      ") on " + to_string(*s, p);
      break;
    }
  return out;
}

}  // namespace leafchar::testing
