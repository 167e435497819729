#include "leafchar/numeric/real.hpp"

#include <cmath>

#include "leafchar/error.hpp"

namespace leafchar {

namespace {

unsigned bits_to_digits10(unsigned bits) { return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1; }

}  // namespace

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_digits10_(Real::default_precision()) {
  if (bits < 16) throw Error(ErrorCode::InvalidArgument, "precision must be at least 16 bits");
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_digits10_); }

unsigned precision_bits(const Real& x) { return static_cast<unsigned>(mpfr_get_prec(x.backend().data())); }

long binary_exponent(const Real& x) {
  if (x == 0) return 0;
  return mpfr_get_exp(x.backend().data());
}

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

std::string format_real(const Real& x, int digits) {
  if (x == 0) return "0";
  std::string fmt = "%." + std::to_string(digits - 1) + "Re";
  char* buf = nullptr;
  mpfr_asprintf(&buf, fmt.c_str(), x.backend().data());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real pi_value() {
  Real x;
  mpfr_const_pi(x.backend().data(), MPFR_RNDN);
  return x;
}

}  // namespace leafchar
