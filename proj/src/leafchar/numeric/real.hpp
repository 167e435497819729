#pragma once

// Multiprecision reals. Boost keeps the working precision for new values in a
// process-wide default, so all numeric entry points run under a
// PrecisionGuard and are not safe to call concurrently.

#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "leafchar/symbolics/polynomial.hpp"

namespace leafchar {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Sets the default precision (in bits) for the guard's lifetime.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_digits10_;
};

/// Precision of a value in bits.
unsigned precision_bits(const Real& x);
/// Binary exponent e with 2^(e-1) <= |x| < 2^e; 0 for x = 0.
long binary_exponent(const Real& x);

Real to_real(const Rational& q);
/// pi at the current default precision.
Real pi_value();
/// Scientific notation with `digits` significant digits.
std::string format_real(const Real& x, int digits = 30);

}  // namespace leafchar
