#pragma once

#include <cmath>
#include <numbers>

#include "lowdisc/errors.hpp"

namespace lowdisc {

inline constexpr double kInvSqrt2Pi = 0.3989422804014327;  // 1/sqrt(2 pi)

/// Standard normal density.
[[nodiscard]] inline double normal_pdf(double x) noexcept {
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

/// Standard normal distribution function, via erfc so the lower tail keeps
/// full relative precision.
[[nodiscard]] inline double normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace detail {

// Acklam's rational approximation, relative error about 1.15e-9.
inline double normal_quantile_guess(double p) noexcept {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace detail

/// Inverse of normal_cdf on (0,1). A rational first guess is polished by one
/// Halley step; the upper half is obtained by odd symmetry so both tails are
/// computed from a small probability.
[[nodiscard]] inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0,1)");
  if (p > 0.5) return -normal_quantile(1.0 - p);
  double x = detail::normal_quantile_guess(p);
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

/// h(x) = int (1/2)(|t| + |x| - |x - t|) phi(t) dt for the origin-anchored
/// kernel and the standard normal target.
/// Written as 1/sqrt(2 pi) + (|x|/2) erfc(|x|/sqrt 2) - phi(x), which is the
/// same function, exactly even, and free of cancellation for large |x|.
[[nodiscard]] inline double normal_h(double x) noexcept {
  const double a = std::abs(x);
  return kInvSqrt2Pi + 0.5 * a * std::erfc(a / std::numbers::sqrt2) - normal_pdf(x);
}

/// c = int h(x) phi(x) dx = sqrt(2/pi) - 1/sqrt(pi) for the same pair.
inline constexpr double kNormalOriginC =
    0.7978845608028654 - 0.5641895835477563;  // sqrt(2/pi) - 1/sqrt(pi)

}  // namespace lowdisc
