#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lowdisc/lowdisc.hpp"

namespace lowdisc::oracle {

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

inline Design random_unit(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n * d);
  for (double& x : v) x = clamp_unit(u(rng));
  return {n, d, std::move(v), Domain::UnitCube};
}

inline Design random_normal(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::normal_distribution<double> z;
  std::vector<double> v(n * d);
  for (double& x : v) x = z(rng);
  return {n, d, std::move(v), Domain::RealSpace};
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// D^2 by the defining double sum, with every kernel value from kernel_eval
/// and the mean embedding written per factor. No shared code with the sweep.
inline double brute_squared(const Design& x, const TargetSpec& target, const KernelSpec& kernel) {
  const ProductModel model(target, kernel);
  const std::size_t n = x.size(), d = x.dimension();
  CompensatedSum mid, dbl;
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < d; ++j) p *= 1.0 + kernel.gamma(j) * model.h(x(i, j));
    mid += p;
    for (std::size_t k = 0; k < n; ++k) dbl += kernel_eval(kernel, x.row(i), x.row(k));
  }
  const double nn = static_cast<double>(n);
  return model.constant() - 2.0 * mid.value() / nn + dbl.value() / (nn * nn);
}

inline KernelSpec kernel_without(const KernelSpec& k, std::size_t d, std::size_t drop) {
  std::vector<double> w;
  for (std::size_t j = 0; j < d; ++j)
    if (j != drop) w.push_back(k.gamma(j));
  return KernelSpec(k.base(), w);
}

}  // namespace lowdisc::oracle
