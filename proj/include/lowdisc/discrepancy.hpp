#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lowdisc/design.hpp"
#include "lowdisc/errors.hpp"
#include "lowdisc/kernels.hpp"
#include "lowdisc/normal.hpp"
#include "lowdisc/summation.hpp"
#include "lowdisc/targets.hpp"

namespace lowdisc {

/// Coordinate subset (0-based, ascending) -> unweighted squared piece.
using ProjectionPieces = std::map<std::vector<std::size_t>, double>;

struct DiscrepancyReport {
  double squared = 0.0;
  double value = 0.0;
  std::optional<ProjectionPieces> pieces;
};

/// Builds a report, flooring tiny negative round-off at zero. `scale` is the
/// magnitude of the terms that cancelled to produce `squared`.
[[nodiscard]] inline DiscrepancyReport make_report(double squared, double scale = 1.0) {
  if (!std::isfinite(squared)) throw NumericalError("squared discrepancy is not finite");
  if (squared < -1e-10 * std::max(1.0, scale))
    throw NumericalError("squared discrepancy " + std::to_string(squared) +
                         " is negative beyond round-off");
  return {squared, std::sqrt(std::max(squared, 0.0)), std::nullopt};
}

/// The pairing of a target with a product kernel, reduced to what the
/// product-form formulas need: a coordinate map into the kernel's anchored
/// frame, h on that frame, the constant c, and the coordinate weights.
///
/// Supported pairs:
///   normal    + origin             h = normal_h,            c = sqrt(2/pi) - 1/sqrt(pi)
///   normal    + transformed-normal h = (|s| - s^2)/2 at s = Phi(x) - 1/2, c = 1/12
///   centered  + origin             h = (|s| - s^2)/2,       c = 1/12
///   unit      + centered-l2        h = (|s| - s^2)/2 at s = u - 1/2, c = 1/12
///   unit      + origin             h = s - s^2/2,           c = 1/3
class ProductModel {
 public:
  enum class HForm { NormalOrigin, CubeCentered, UnitOrigin };

  ProductModel(const TargetSpec& target, KernelSpec kernel)
      : target_(target), kernel_(std::move(kernel)) {
    kernel_.check_dimension(target_.dimension());
    const auto t = target_.kind();
    const auto b = kernel_.base();
    if (t == TargetKind::StandardNormal && b == KernelBase::OriginAnchored) {
      form_ = HForm::NormalOrigin;
      c_ = kNormalOriginC;
    } else if ((t == TargetKind::StandardNormal && b == KernelBase::TransformedOriginAnchored) ||
               (t == TargetKind::CenteredUniform && b == KernelBase::OriginAnchored) ||
               (t == TargetKind::UnitUniform && b == KernelBase::CenteredL2)) {
      form_ = HForm::CubeCentered;
      c_ = 1.0 / 12.0;
    } else if (t == TargetKind::UnitUniform && b == KernelBase::OriginAnchored) {
      form_ = HForm::UnitOrigin;
      c_ = 1.0 / 3.0;
    } else {
      throw ContractViolation("kernel '" + std::string(to_string(b)) +
                              "' is not supported for target '" + std::string(to_string(t)) + "'");
    }
  }

  [[nodiscard]] const TargetSpec& target() const noexcept { return target_; }
  [[nodiscard]] const KernelSpec& kernel() const noexcept { return kernel_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return target_.dimension(); }
  [[nodiscard]] double c() const noexcept { return c_; }
  [[nodiscard]] double gamma(std::size_t j) const { return kernel_.gamma(j); }
  [[nodiscard]] double anchor(double x) const noexcept { return kernel_.anchor(x); }

  /// h evaluated on an anchored coordinate.
  [[nodiscard]] double h_anchored(double s) const noexcept {
    switch (form_) {
      case HForm::NormalOrigin: return normal_h(s);
      case HForm::CubeCentered: {
        const double a = std::abs(s);
        return 0.5 * (a - a * a);
      }
      case HForm::UnitOrigin: return s - 0.5 * s * s;
    }
    return 0.0;
  }

  [[nodiscard]] double h(double x) const noexcept { return h_anchored(anchor(x)); }

  /// Integral of the kernel against the target in every argument: prod (1 + gamma_j c).
  [[nodiscard]] double constant() const {
    double v = 1.0;
    for (std::size_t j = 0; j < dimension(); ++j) v *= 1.0 + gamma(j) * c_;
    return v;
  }

  /// Anchored copy of a design's coordinates, row-major.
  [[nodiscard]] std::vector<double> anchored(const Design& design) const {
    check(design);
    std::vector<double> s(design.values().size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = anchor(design.values()[k]);
    return s;
  }

  void check(const Design& design) const {
    if (design.dimension() != dimension())
      throw ContractViolation("design dimension " + std::to_string(design.dimension()) +
                              " != target dimension " + std::to_string(dimension()));
    if (design.domain() != target_.domain())
      throw ContractViolation("design domain " + std::string(to_string(design.domain())) +
                              " does not match target '" +
                              std::string(to_string(target_.kind())) + "'");
  }

 private:
  TargetSpec target_;
  KernelSpec kernel_;
  HForm form_ = HForm::NormalOrigin;
  double c_ = 0.0;
};

namespace detail {

/// Everything the deletion functions and the exchange step need, from one
/// O(d N^2) sweep over the pairs (i <= k).
struct PairSweep {
  std::size_t n = 0, d = 0;
  std::vector<double> anchored;  // N x d
  std::vector<double> H;         // H(x_i) = prod_j [1 + gamma_j h(x_ij)]
  std::vector<double> R;         // R_i = sum_k K(x_i, x_k)
  std::vector<double> Kdiag;     // K(x_i, x_i)
  std::vector<double> coord_h;   // sum_i H_i g_ij,  g = gamma h / (1 + gamma h)
  std::vector<double> coord_k;   // sum_{i,k} K_ik q_ikj,  q = gamma kt / (1 + gamma kt)
  double constant = 0.0;
  double sum_H = 0.0;
  double sum_K = 0.0;

  [[nodiscard]] double squared() const {
    const double nn = static_cast<double>(n);
    return constant - 2.0 * sum_H / nn + sum_K / (nn * nn);
  }
  [[nodiscard]] double scale() const {
    const double nn = static_cast<double>(n);
    return constant + 2.0 * sum_H / nn + sum_K / (nn * nn);
  }
};

inline PairSweep sweep(const ProductModel& model, const Design& design, bool coordinate_sums) {
  PairSweep w;
  w.n = design.size();
  w.d = design.dimension();
  w.anchored = model.anchored(design);
  w.constant = model.constant();
  const std::size_t n = w.n, d = w.d;
  const double* s = w.anchored.data();

  std::vector<double> gamma(d);
  for (std::size_t j = 0; j < d; ++j) gamma[j] = model.gamma(j);

  w.H.assign(n, 1.0);
  w.Kdiag.assign(n, 1.0);
  CompensatedSum sum_H, sum_K;
  std::vector<CompensatedSum> R(n), coord_h(coordinate_sums ? d : 0), coord_k(coordinate_sums ? d : 0);

  std::vector<double> hf(d);
  for (std::size_t i = 0; i < n; ++i) {
    double H = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      hf[j] = 1.0 + gamma[j] * model.h_anchored(s[i * d + j]);
      H *= hf[j];
    }
    w.H[i] = H;
    sum_H += H;
    if (coordinate_sums)
      for (std::size_t j = 0; j < d; ++j) coord_h[j] += H * (hf[j] - 1.0) / hf[j];
  }

  std::vector<double> kf(d);
  for (std::size_t i = 0; i < n; ++i) {
    const double* si = s + i * d;
    for (std::size_t k = i; k < n; ++k) {
      const double* sk = s + k * d;
      double K = 1.0;
      for (std::size_t j = 0; j < d; ++j) {
        kf[j] = 1.0 + gamma[j] * ktilde_origin(si[j], sk[j]);
        K *= kf[j];
      }
      const double mult = (k == i) ? 1.0 : 2.0;
      if (k == i) {
        w.Kdiag[i] = K;
        R[i] += K;
      } else {
        R[i] += K;
        R[k] += K;
      }
      sum_K += mult * K;
      if (coordinate_sums)
        for (std::size_t j = 0; j < d; ++j) coord_k[j] += mult * K * (kf[j] - 1.0) / kf[j];
    }
  }
  w.sum_H = sum_H.value();
  w.sum_K = sum_K.value();
  for (const auto& r : R) w.R.push_back(r.value());
  for (const auto& c : coord_h) w.coord_h.push_back(c.value());
  for (const auto& c : coord_k) w.coord_k.push_back(c.value());
  return w;
}

}  // namespace detail

/// D^2 = prod(1 + gamma_j c) - (2/N) sum_i H(x_i) + (1/N^2) sum_{i,k} K(x_i, x_k),
/// valid for any supported product kernel / target pair. Cost O(d N^2).
[[nodiscard]] inline double discrepancy_sq_generic(const Design& design, const TargetSpec& target,
                                                   const KernelSpec& kernel) {
  const ProductModel model(target, kernel);
  return detail::sweep(model, design, false).squared();
}

/// Closed form for the standard normal target with the origin-anchored kernel,
/// written out directly in terms of Phi and phi.
[[nodiscard]] inline double discrepancy_sq_normal_closed(const Design& design) {
  if (design.domain() != Domain::RealSpace)
    throw ContractViolation("normal discrepancy needs a real-space design");
  const std::size_t n = design.size(), d = design.dimension();
  const double nn = static_cast<double>(n);
  CompensatedSum mid;
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double a = std::abs(design(i, j));
      p *= 1.0 + kInvSqrt2Pi + 0.5 * a - a * (normal_cdf(a) - 0.5) - normal_pdf(a);
    }
    mid += p;
  }
  CompensatedSum dbl;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      double p = 1.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double x = design(i, j), t = design(k, j);
        p *= 1.0 + 0.5 * (std::abs(x) + std::abs(t) - std::abs(x - t));
      }
      dbl += p;
    }
  return std::pow(1.0 + kNormalOriginC, static_cast<double>(d)) - 2.0 * mid.value() / nn + dbl.value() / (nn * nn);
}

/// Centered L2 discrepancy of a design on (0,1)^d.
[[nodiscard]] inline double discrepancy_sq_centered_l2(const Design& design) {
  if (design.domain() != Domain::UnitCube)
    throw ContractViolation("centered L2 discrepancy needs a unit-cube design");
  const std::size_t n = design.size(), d = design.dimension();
  const double nn = static_cast<double>(n);
  CompensatedSum mid;
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double a = std::abs(design(i, j) - 0.5);
      p *= 1.0 + 0.5 * (a - a * a);
    }
    mid += p;
  }
  CompensatedSum dbl;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      double p = 1.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double u = design(i, j), v = design(k, j);
        p *= 1.0 + 0.5 * (std::abs(u - 0.5) + std::abs(v - 0.5) - std::abs(u - v));
      }
      dbl += p;
    }
  return std::pow(13.0 / 12.0, static_cast<double>(d)) - 2.0 * mid.value() / nn + dbl.value() / (nn * nn);
}

/// Discrepancy on (0,1)^d with the kernel anchored at the origin, constant (4/3)^d.
[[nodiscard]] inline double discrepancy_sq_origin_unit(const Design& design) {
  if (design.domain() != Domain::UnitCube)
    throw ContractViolation("origin-anchored uniform discrepancy needs a unit-cube design");
  const std::size_t n = design.size(), d = design.dimension();
  const double nn = static_cast<double>(n);
  CompensatedSum mid;
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double u = design(i, j);
      p *= 1.0 + u - 0.5 * u * u;
    }
    mid += p;
  }
  CompensatedSum dbl;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      double p = 1.0;
      for (std::size_t j = 0; j < d; ++j) p *= 1.0 + std::min(design(i, j), design(k, j));
      dbl += p;
    }
  return std::pow(4.0 / 3.0, static_cast<double>(d)) - 2.0 * mid.value() / nn + dbl.value() / (nn * nn);
}

/// Moves a unit-cube design to the centered cube by subtracting 1/2.
[[nodiscard]] inline Design shift_design(const Design& design) {
  if (design.domain() != Domain::UnitCube)
    throw ContractViolation("shift_design needs a unit-cube design");
  std::vector<double> v = design.values();
  for (double& x : v) x -= 0.5;
  return {design.size(), design.dimension(), std::move(v), Domain::CenteredCube};
}

namespace detail {

inline std::vector<double> coord_scores_from(const ProductModel& model, const PairSweep& w) {
  const double nn = static_cast<double>(w.n);
  std::vector<double> out(w.d);
  for (std::size_t j = 0; j < w.d; ++j) {
    const double gc = model.gamma(j) * model.c();
    // prod_l (1 + gamma_l c) - prod_{l != j} (1 + gamma_l c)
    const double dropped = w.constant * gc / (1.0 + gc);
    out[j] = dropped - 2.0 / nn * w.coord_h[j] + w.coord_k[j] / (nn * nn);
  }
  return out;
}

inline std::vector<double> point_scores_from(const PairSweep& w) {
  const double nn = static_cast<double>(w.n);
  std::vector<double> out(w.n);
  for (std::size_t i = 0; i < w.n; ++i)
    out[i] = (2.0 * nn - 1.0) * w.constant / (nn * nn) -
             2.0 / nn * (w.sum_H / nn + (1.0 - 1.0 / nn) * w.H[i]) +
             (2.0 * w.R[i] - w.Kdiag[i]) / (nn * nn);
  return out;
}

}  // namespace detail

/// d_p(i) = D^2(X) - ((N-1)/N)^2 D^2(X without x_i), all i, in O(d N^2).
[[nodiscard]] inline std::vector<double> point_deletion_scores(const Design& design,
                                                               const TargetSpec& target,
                                                               const KernelSpec& kernel) {
  if (design.size() < 2) throw ContractViolation("point deletion needs N >= 2");
  const ProductModel model(target, kernel);
  return detail::point_scores_from(detail::sweep(model, design, false));
}

/// d_c(j) = D^2(X) - D^2(X with coordinate j dropped), all j, in O(d N^2).
/// The dropped-coordinate constant is gamma_j c prod_{l != j}(1 + gamma_l c),
/// i.e. c (1 + c)^(d-1) for unit weights.
[[nodiscard]] inline std::vector<double> coord_deletion_scores(const Design& design,
                                                               const TargetSpec& target,
                                                               const KernelSpec& kernel) {
  if (design.dimension() < 2) throw ContractViolation("coordinate deletion needs d >= 2");
  const ProductModel model(target, kernel);
  return detail::coord_scores_from(model, detail::sweep(model, design, true));
}

/// Unweighted projection pieces D^2_u for every non-empty u with |u| <= max_order:
///   c^|u| - (2/N) sum_i prod_{j in u} h(x_ij) + (1/N^2) sum_{i,k} prod_{j in u} kt(x_ij, x_kj).
/// With max_order = d, sum_u gamma_u D^2_u is the full weighted squared discrepancy.
[[nodiscard]] inline ProjectionPieces projection_decomposition(const Design& design,
                                                               const TargetSpec& target,
                                                               const KernelSpec& kernel,
                                                               std::size_t max_order) {
  const ProductModel model(target, kernel);
  model.check(design);
  const std::size_t n = design.size(), d = design.dimension();
  if (max_order < 1 || max_order > d)
    throw ContractViolation("max_order must lie in [1, d]");
  constexpr std::uint64_t kMaxPieces = std::uint64_t{1} << 20;
  if (d >= 64) throw SizeError("projection decomposition supports d < 64");
  {
    // sum_{k <= max_order} C(d, k), stopping once past the limit
    std::uint64_t total = 0, binom = 1;
    for (std::size_t k = 1; k <= max_order && total <= kMaxPieces; ++k) {
      binom = binom * (d - k + 1) / k;
      total += binom;
    }
    if (total > kMaxPieces)
      throw SizeError("projection decomposition would enumerate more than 2^20 subsets");
  }

  const auto s = model.anchored(design);
  std::vector<double> hv(n * d);
  for (std::size_t k = 0; k < n * d; ++k) hv[k] = model.h_anchored(s[k]);

  const double nn = static_cast<double>(n);
  ProjectionPieces pieces;
  std::vector<std::size_t> u;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << d); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > max_order) continue;
    u.clear();
    for (std::size_t j = 0; j < d; ++j)
      if ((mask >> j) & 1U) u.push_back(j);
    CompensatedSum mid;
    for (std::size_t i = 0; i < n; ++i) {
      double p = 1.0;
      for (std::size_t j : u) p *= hv[i * d + j];
      mid += p;
    }
    CompensatedSum dbl;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i; k < n; ++k) {
        double p = 1.0;
        for (std::size_t j : u) p *= ktilde_origin(s[i * d + j], s[k * d + j]);
        dbl += (k == i ? 1.0 : 2.0) * p;
      }
    }
    pieces[u] = std::pow(model.c(), static_cast<double>(u.size())) - 2.0 * mid.value() / nn +
                dbl.value() / (nn * nn);
  }
  return pieces;
}

/// Full report: squared value from the generic engine, optional pieces.
[[nodiscard]] inline DiscrepancyReport discrepancy(const Design& design, const TargetSpec& target,
                                                   const KernelSpec& kernel,
                                                   std::optional<std::size_t> pieces_order = {}) {
  const ProductModel model(target, kernel);
  const auto w = detail::sweep(model, design, false);
  auto report = make_report(w.squared(), w.scale());
  if (pieces_order) report.pieces = projection_decomposition(design, target, kernel, *pieces_order);
  return report;
}

}  // namespace lowdisc
