#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lowdisc/errors.hpp"

namespace lowdisc {

/// Adaptive 15-point Gauss-Kronrod on [a, b], split into panels at every
/// breakpoint inside the interval. Breakpoints should include the kinks of
/// the integrand so each panel sees a smooth function.
template <class F>
[[nodiscard]] double integrate(F&& f, double a, double b, std::vector<double> breaks = {},
                               double tol = 1e-12) {
  if (!(a < b)) throw ContractViolation("integrate: need a < b");
  breaks.push_back(a);
  breaks.push_back(b);
  std::erase_if(breaks, [&](double x) { return x < a || x > b; });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  // A single rule per panel estimates the total L1 mass, so the tolerance can
  // be absolute across panels: a narrow panel next to a kink is not asked for
  // more relative accuracy than roundoff allows.
  std::vector<double> mass(breaks.size() - 1);
  double total_mass = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    double error = 0.0;
    GK::integrate(f, breaks[k], breaks[k + 1], 0, 0.0, &error, &mass[k]);
    total_mass += mass[k];
  }

  double total = 0.0, total_error = 0.0, total_l1 = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    double error = 0.0, l1 = 0.0;
    const double panel_tol = mass[k] > 0.0 ? std::min(1e-3, tol * total_mass / mass[k]) : 1e-3;
    const double part = GK::integrate(f, breaks[k], breaks[k + 1], 20, panel_tol, &error, &l1);
    if (!std::isfinite(part)) throw NumericalError("integrate: non-finite panel value");
    total += part;
    total_error += error;
    total_l1 += l1;
  }
  if (total_error > 1e3 * tol * std::max(1.0, total_l1))
  {
    char msg[128];
    std::snprintf(msg, sizeof msg, "integrate: no convergence on [%g, %g] (error estimate %.3g, L1 %.3g)",
                  a, b, total_error, total_l1);
    throw NumericalError(msg);
  }
  return total;
}

}  // namespace lowdisc
