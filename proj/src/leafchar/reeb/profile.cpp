#include "leafchar/reeb/profile.hpp"

#include "leafchar/error.hpp"
#include "leafchar/numeric/taylor.hpp"

namespace leafchar {

namespace {

#include "leafchar/reeb/default_golden.inc"

constexpr const char* kDefaultProfileText = "exp(1/(1 - t^2)) - exp(1)";

/// Growth demanded of |f^(p)| over the tail, and decay of |(1/f')^(p)|.
constexpr double kDivergenceGrowth = 1e3;
constexpr double kDecayFactor = 1e-3;

Real tolerance(unsigned bits) { return boost::multiprecision::ldexp(Real(1), -static_cast<int>(bits) + 8); }

bool strictly_increasing(const std::vector<Real>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

bool strictly_decreasing(const std::vector<Real>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

Real parse_real(const char* text) { return Real(text); }

}  // namespace

std::vector<Real> ReebProfile::jet(const Real& t, unsigned order) const {
  if (!(abs(t) < 1)) throw Error(ErrorCode::InvalidArgument, "profile is defined on |t| < 1");
  return evaluate_taylor(*ast, "t", t, order).derivatives();
}

ReebProfile default_profile() {
  ReebProfile p = profile_from_expression(kDefaultProfileText);
  p.is_default = true;
  return p;
}

ReebProfile profile_from_expression(const std::string& text) {
  ReebProfile p;
  p.ast = parse_expression(text);
  p.description = p.ast->to_string();
  return p;
}

Rational tail_point(unsigned k) {
  Integer ten_k = 1;
  for (unsigned i = 0; i < k; ++i) ten_k *= 10;
  Rational q(ten_k - 1, ten_k);
  q.canonicalize();
  return q;
}

bool ProfileReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

ProfileReport check_profile_conditions(const ReebProfile& f, const std::vector<Rational>& grid, unsigned max_order,
                                       unsigned bits, unsigned tail_k) {
  if (max_order < 2) throw Error(ErrorCode::InvalidArgument, "max_order must be at least 2");
  for (const auto& t : grid)
    if (!(abs(t) < 1)) throw Error(ErrorCode::InvalidArgument, "grid point " + t.get_str() + " outside (-1, 1)");
  PrecisionGuard guard(bits);
  ProfileReport report;
  report.precision = bits;
  const Real tol = tolerance(bits);

  Real f0 = f.jet(Real(0), 0)[0];
  report.checks.push_back({"f(0) = 0", abs(f0) <= tol, "f(0) = " + format_real(f0)});

  bool even = true, nonnegative = true;
  std::string even_detail = "all grid points", sign_detail = "all grid points";
  for (const auto& q : grid) {
    Real t = to_real(q);
    Real a = f.jet(t, 0)[0], b = f.jet(-t, 0)[0];
    Real scale = (abs(a) > 1 ? Real(abs(a)) : Real(1));
    if (even && abs(a - b) > tol * scale) {
      even = false;
      even_detail = "f(" + q.get_str() + ") - f(-" + q.get_str() + ") = " + format_real(a - b);
    }
    if (nonnegative && a < -tol * scale) {
      nonnegative = false;
      sign_detail = "f(" + q.get_str() + ") = " + format_real(a);
    }
  }
  report.checks.push_back({"f(-t) = f(t)", even, even_detail});
  report.checks.push_back({"f(t) >= 0", nonnegative, sign_detail});

  // boundary behavior along t_k
  std::vector<std::vector<Real>> derivs(max_order + 1), inverse(max_order + 1);
  for (unsigned k = 1; k <= tail_k; ++k) {
    Real t = to_real(tail_point(k));
    Taylor series = evaluate_taylor(*f.ast, "t", t, max_order + 1);
    Taylor fp = differentiate(series);
    if (fp[0] == 0)
      throw Error(ErrorCode::PrecisionInsufficient, "f'(t_" + std::to_string(k) + ") is zero at working precision");
    Taylor recip = Taylor::constant(Real(1), fp.order()) / fp;
    for (unsigned p = 0; p <= max_order; ++p) {
      derivs[p].push_back(abs(series.derivative(p)));
      inverse[p].push_back(abs(recip.derivative(p)));
    }
  }
  for (unsigned p = 0; p <= max_order; ++p) {
    const auto& v = derivs[p];
    bool grows = strictly_increasing(v) && v.back() >= kDivergenceGrowth * (v.front() > 1 ? v.front() : Real(1));
    report.checks.push_back({"|f^(" + std::to_string(p) + ")| diverges toward t = 1", grows,
                             "t_1: " + format_real(v.front(), 12) + ", t_" + std::to_string(tail_k) + ": " +
                                 format_real(v.back(), 12)});
    const auto& w = inverse[p];
    bool decays = strictly_decreasing(w) && w.back() <= kDecayFactor * w.front();
    report.checks.push_back({"|(1/f')^(" + std::to_string(p) + ")| decays toward t = 1", decays,
                             "t_1: " + format_real(w.front(), 12) + ", t_" + std::to_string(tail_k) + ": " +
                                 format_real(w.back(), 12)});
  }
  return report;
}

bool LimitReport::passed() const {
  for (const auto& s : ratios)
    if (!s.decreasing || s.below_threshold == false) return false;
  return increasing && exceeds_threshold != false;
}

const char* golden_ratio(unsigned n, unsigned k) {
  if (n < 2 || n > kGoldenNMax || k < 1 || k > kGoldenKMax) return nullptr;
  return kGoldenRatio[k - 1][n - 2];
}

const char* golden_second_over_first(unsigned k) {
  if (k < 1 || k > kGoldenKMax) return nullptr;
  return kGoldenSecondOverFirst[k - 1];
}

LimitReport check_limit_conditions(const ReebProfile& f, unsigned n_max, unsigned k_max, unsigned bits) {
  if (n_max < 2) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 2");
  if (k_max < 1) throw Error(ErrorCode::InvalidArgument, "k_max must be at least 1");
  PrecisionGuard guard(bits);
  LimitReport report;
  report.precision = bits;
  report.n_max = n_max;
  report.k_max = k_max;
  for (unsigned n = 2; n <= n_max; ++n) report.ratios.push_back(LimitSeries{n, {}, false, {}, {}});
  for (unsigned k = 1; k <= k_max; ++k) {
    Real t = to_real(tail_point(k));
    std::vector<Real> d = f.jet(t, n_max + 1);
    if (d[1] == 0)
      throw Error(ErrorCode::PrecisionInsufficient, "f'(t_" + std::to_string(k) + ") is zero at working precision");
    report.second_over_first.push_back(d[2] / d[1]);
    for (unsigned n = 2; n <= n_max; ++n) {
      Real f1n = boost::multiprecision::pow(d[1], static_cast<int>(n));
      Real ratio = d[n] / f1n;
      Real dratio = d[n + 1] / f1n - n * d[n] * d[2] / (f1n * d[1]);
      report.ratios[n - 2].samples.push_back({k, t, ratio, dratio});
    }
  }
  for (auto& s : report.ratios) {
    std::vector<Real> mags;
    for (const auto& x : s.samples) mags.push_back(abs(x.ratio));
    s.decreasing = strictly_decreasing(mags);
    if (f.is_default)
      if (const char* g = golden_ratio(s.n, k_max)) {
        s.threshold = 2 * parse_real(g);
        s.below_threshold = mags.back() < *s.threshold;
      }
  }
  report.increasing = strictly_increasing(report.second_over_first);
  if (f.is_default)
    if (const char* g = golden_second_over_first(k_max)) {
      report.divergence_threshold = parse_real(g) / 2;
      report.exceeds_threshold = report.second_over_first.back() > *report.divergence_threshold;
    }
  return report;
}

}  // namespace leafchar
