#pragma once

#include "leafchar/cech/presentation.hpp"
#include "leafchar/reeb/profile.hpp"

namespace leafchar {

/// Charts C_alpha (alpha0, alpha2..alphaN) and C_t (t0, t2..tN, |t0| < 1,
/// chain f on t0), the shift T: alpha0 -> alpha0 + 1 with inverse Ti, and
/// phi: C_t -> C_alpha, alpha = -f(t), jet-extended to order N. The chain is
/// truncated at N + chain_slack so that forms built from the extension can
/// be differentiated a few more times.
AtlasPresentation reeb_presentation(const ReebProfile& f, unsigned order, unsigned chain_slack = 4);

/// Relations T^period -> 1 and Ti -> T^(period-1) added to the Reeb
/// presentation make the chart category finite.
AtlasPresentation with_finite_period(AtlasPresentation p, unsigned period);

}  // namespace leafchar
