#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string_view>

#include "lowdisc/design.hpp"
#include "lowdisc/errors.hpp"
#include "lowdisc/normal.hpp"

namespace lowdisc {

enum class TargetKind { UnitUniform, CenteredUniform, StandardNormal };

[[nodiscard]] inline std::string_view to_string(TargetKind kind) noexcept {
  switch (kind) {
    case TargetKind::UnitUniform: return "unit";
    case TargetKind::CenteredUniform: return "centered";
    case TargetKind::StandardNormal: return "normal";
  }
  return "?";
}

/// h for the centered-L2 kernel and the uniform target on (0,1):
/// (1/2)(|u - 1/2| - |u - 1/2|^2).
[[nodiscard]] inline double uniform_centered_h(double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("uniform_centered_h: u must lie in (0,1)");
  const double s = std::abs(u - 0.5);
  return 0.5 * (s - s * s);
}

/// A product-form target with identical marginals. h() and c() belong to the
/// target's natural kernel: origin-anchored for the normal and the centered
/// cube, centered-L2 for the unit cube.
class TargetSpec {
 public:
  TargetSpec(TargetKind kind, std::size_t dimension) : kind_(kind), dimension_(dimension) {
    if (dimension == 0) throw ContractViolation("target dimension must be positive");
  }

  static TargetSpec unit_uniform(std::size_t d) { return {TargetKind::UnitUniform, d}; }
  static TargetSpec centered_uniform(std::size_t d) { return {TargetKind::CenteredUniform, d}; }
  static TargetSpec standard_normal(std::size_t d) { return {TargetKind::StandardNormal, d}; }

  [[nodiscard]] TargetKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }

  [[nodiscard]] Domain domain() const noexcept {
    switch (kind_) {
      case TargetKind::UnitUniform: return Domain::UnitCube;
      case TargetKind::CenteredUniform: return Domain::CenteredCube;
      case TargetKind::StandardNormal: return Domain::RealSpace;
    }
    return Domain::RealSpace;
  }

  [[nodiscard]] bool in_support(double x) const noexcept { return in_domain(domain(), x); }

  [[nodiscard]] double density(double x) const noexcept {
    switch (kind_) {
      case TargetKind::UnitUniform: return (x > 0.0 && x < 1.0) ? 1.0 : 0.0;
      case TargetKind::CenteredUniform: return (x > -0.5 && x < 0.5) ? 1.0 : 0.0;
      case TargetKind::StandardNormal: return normal_pdf(x);
    }
    return 0.0;
  }

  [[nodiscard]] double cdf(double x) const noexcept {
    switch (kind_) {
      case TargetKind::UnitUniform: return std::clamp(x, 0.0, 1.0);
      case TargetKind::CenteredUniform: return std::clamp(x + 0.5, 0.0, 1.0);
      case TargetKind::StandardNormal: return normal_cdf(x);
    }
    return 0.0;
  }

  [[nodiscard]] double quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile: p must lie in (0,1)");
    switch (kind_) {
      case TargetKind::UnitUniform: return p;
      case TargetKind::CenteredUniform: return p - 0.5;
      case TargetKind::StandardNormal: return normal_quantile(p);
    }
    return p;
  }

  [[nodiscard]] double h(double x) const {
    switch (kind_) {
      case TargetKind::UnitUniform: return uniform_centered_h(x);
      case TargetKind::CenteredUniform: return uniform_centered_h(x + 0.5);
      case TargetKind::StandardNormal: return normal_h(x);
    }
    return 0.0;
  }

  [[nodiscard]] double c() const noexcept {
    return kind_ == TargetKind::StandardNormal ? kNormalOriginC : 1.0 / 12.0;
  }

 private:
  TargetKind kind_;
  std::size_t dimension_;
};

}  // namespace lowdisc
