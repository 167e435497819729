#pragma once

// The Gelfand-Kazhdan form on finite truncations of the frame space of the
// line, and the map alpha from cochains on W_1 to forms.

#include <vector>

#include "leafchar/symbolics/form.hpp"
#include "leafchar/wn/complex.hpp"

namespace leafchar {

/// Coordinates x0..xN on the truncated frame space, quotient coordinates
/// y0, y2..yN, and the derived components omega_0..omega_{N-1}.
struct GKChart {
  unsigned order = 0;
  ContextPtr x;
  ContextPtr y;
  std::vector<Form> omega;
};

/// Derives omega from the curve x_p + u v_p pushed through k_0^{-1} o k_u.
GKChart gk_chart(unsigned order);
std::vector<Form> gk_form_components(unsigned order);

/// alpha(c^1_{1..1}) (r ones) = omega_r, extended multiplicatively.
/// Throws TruncationExceeded when a generator needs omega_r with r >= N.
Form alpha(const WCochain& c, const GKChart& chart);

struct ConnectionCurvature {
  Form beta;
  Form curvature;
};

/// beta = -alpha(c^1_1), R = d beta + beta ^ beta.
ConnectionCurvature connection_and_curvature(const GKChart& chart);

/// Euler field sum_p p x_p d/dx_p of the GL(1) scaling.
VectorField gl1_euler_field(const GKChart& chart);

/// Restriction of a GL(1)-basic form to the slice x_1 = 1, written in y.
/// Throws NotBasic naming the failed check.
Form reduce_to_quotient(const Form& w, const GKChart& chart);

}  // namespace leafchar
