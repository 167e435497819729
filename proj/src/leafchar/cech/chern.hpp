#pragma once

#include <string_view>

#include "leafchar/cech/cochain.hpp"

namespace leafchar {

/// Compares phi^*(dA0 ^ dA2) with dS2 ^ dS0, where A0, A2 and S0, S2 are the
/// first two variables of phi's target and source charts.
struct PullbackIdentityReport {
  unsigned order = 0;
  Form pulled;    ///< phi^*(dA0 ^ dA2)
  Form expected;  ///< dS2 ^ dS0
  /// phi^*(dA0 ^ dA2) == dS2 ^ dS0
  bool literal_holds = false;
  /// phi^*(dA2 ^ dA0) == dS2 ^ dS0
  bool consistent_holds = false;
  /// pulled == sign * expected; 0 if neither sign works.
  int sign = 0;
};

/// Throws TruncationExceeded for order < 3, UnknownSymbol for a missing
/// generator.
PullbackIdentityReport verify_pullback_identity(const AtlasPresentation& p, unsigned order,
                                                std::string_view generator = "phi");

/// The (0, 2) cochain assigning dA0 ^ dA2 to the target chart of phi and
/// dS2 ^ dS0 to its source; with `consistent` the target value is
/// dA2 ^ dA0 instead.
CechCochain chern_representative(const AtlasPresentation& p, bool consistent, std::string_view generator = "phi");

}  // namespace leafchar
