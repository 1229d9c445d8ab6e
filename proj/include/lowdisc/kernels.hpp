#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lowdisc/errors.hpp"
#include "lowdisc/normal.hpp"

namespace lowdisc {

/// Univariate interaction of the origin-anchored kernel,
/// (1/2)(|t| + |x| - |x - t|): min(|t|,|x|) for same-signed arguments, else 0.
[[nodiscard]] inline double ktilde_origin(double t, double x) noexcept {
  return 0.5 * (std::abs(t) + std::abs(x) - std::abs(x - t));
}

enum class KernelBase {
  OriginAnchored,            // prod [1 + ktilde(t_j, x_j)]
  CenteredL2,                // origin-anchored after shifting by 1/2
  TransformedOriginAnchored  // centered-L2 evaluated at (Phi(t), Phi(x))
};

[[nodiscard]] inline std::string_view to_string(KernelBase base) noexcept {
  switch (base) {
    case KernelBase::OriginAnchored: return "origin";
    case KernelBase::CenteredL2: return "centered-l2";
    case KernelBase::TransformedOriginAnchored: return "transformed-normal";
  }
  return "?";
}

/// A product kernel prod_j [1 + gamma_j ktilde(a(t_j), a(x_j))], where a() is
/// the coordinate map of the base (identity, shift by 1/2, or Phi - 1/2) and
/// gamma_j defaults to 1. Immutable after construction.
class KernelSpec {
 public:
  explicit KernelSpec(KernelBase base = KernelBase::OriginAnchored,
                      std::optional<std::vector<double>> weights = std::nullopt)
      : base_(base), weights_(std::move(weights)) {
    if (weights_) {
      if (weights_->empty()) throw ContractViolation("kernel weights must be non-empty");
      for (double g : *weights_)
        if (!(g > 0.0) || !std::isfinite(g))
          throw ContractViolation("kernel weights must be positive and finite");
    }
  }

  [[nodiscard]] KernelBase base() const noexcept { return base_; }
  [[nodiscard]] bool weighted() const noexcept { return weights_.has_value(); }
  [[nodiscard]] const std::optional<std::vector<double>>& weights() const noexcept { return weights_; }

  [[nodiscard]] double gamma(std::size_t j) const { return weights_ ? (*weights_)[j] : 1.0; }

  /// Throws unless the weights (if any) fit dimension d.
  void check_dimension(std::size_t d) const {
    if (weights_ && weights_->size() != d)
      throw ContractViolation("kernel has " + std::to_string(weights_->size()) +
                              " weights but the points have dimension " + std::to_string(d));
  }

  /// Maps a coordinate into the frame where the kernel is origin-anchored.
  [[nodiscard]] double anchor(double x) const noexcept {
    switch (base_) {
      case KernelBase::OriginAnchored: return x;
      case KernelBase::CenteredL2: return x - 0.5;
      case KernelBase::TransformedOriginAnchored: return normal_cdf(x) - 0.5;
    }
    return x;
  }

  [[nodiscard]] double ktilde(double t, double x) const noexcept {
    return ktilde_origin(anchor(t), anchor(x));
  }

 private:
  KernelBase base_;
  std::optional<std::vector<double>> weights_;
};

[[nodiscard]] inline double kernel_eval(const KernelSpec& spec, std::span<const double> t,
                                        std::span<const double> x) {
  if (t.size() != x.size())
    throw ContractViolation("kernel_eval: points of different dimension");
  spec.check_dimension(t.size());
  double k = 1.0;
  for (std::size_t j = 0; j < t.size(); ++j) k *= 1.0 + spec.gamma(j) * spec.ktilde(t[j], x[j]);
  return k;
}

/// Distance between the Dirac measures at t and x in the space whose inner
/// product the kernel defines.
[[nodiscard]] inline double dirac_distance(const KernelSpec& spec, std::span<const double> t,
                                           std::span<const double> x) {
  const double ktt = kernel_eval(spec, t, t);
  const double kxx = kernel_eval(spec, x, x);
  const double r = ktt - 2.0 * kernel_eval(spec, t, x) + kxx;
  if (r < -1e-12 * std::max(1.0, ktt + kxx))
    throw NumericalError("dirac_distance: negative squared distance " + std::to_string(r));
  return std::sqrt(std::max(r, 0.0));
}

}  // namespace lowdisc
