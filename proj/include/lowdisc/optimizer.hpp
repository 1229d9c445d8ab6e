#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lowdisc/design.hpp"
#include "lowdisc/discrepancy.hpp"
#include "lowdisc/errors.hpp"
#include "lowdisc/kernels.hpp"
#include "lowdisc/targets.hpp"

namespace lowdisc {

struct ExchangeConfig {
  double tol = 1e-10;  // on the squared-discrepancy scale
  std::size_t max_iters = 200;
  std::optional<double> search_lo;  // default: target quantile of 1/(4N)
  std::optional<double> search_hi;  // default: target quantile of 1 - 1/(4N)
  std::size_t grid_size = 64;

  void validate() const {
    if (!(tol > 0.0)) throw ContractViolation("tol must be positive");
    if (max_iters < 1) throw ContractViolation("max_iters must be at least 1");
    if (grid_size < 2) throw ContractViolation("grid_size must be at least 2");
    if (search_lo && search_hi && !(*search_lo < *search_hi))
      throw ContractViolation("search_lo must be below search_hi");
  }
};

struct ExchangeStep {
  std::size_t iter = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  double old_coord = 0.0;
  double new_coord = 0.0;
  double delta = 0.0;
  double discrepancy_after = 0.0;
};

enum class Termination { Tol, MaxIters };

[[nodiscard]] inline std::string_view to_string(Termination t) noexcept {
  return t == Termination::Tol ? "tol" : "max-iters";
}

struct ExchangeTrace {
  std::vector<ExchangeStep> steps;
  Termination terminated_by = Termination::Tol;
  double initial_discrepancy = 0.0;
  double final_discrepancy = 0.0;
};

struct ExchangeResult {
  Design design;
  ExchangeTrace trace;
};

/// The univariate problem of one exchange: how the squared discrepancy
/// changes when x_{i*j*} is replaced by x, with all other coordinates fixed.
///
/// Holds the per-iteration coefficients
///   A   = 2 H(x_i*) / (1 + g h(x_i*j*))
///   B_i = 2 K(x_i*, x_i) / (1 + g kt(x_i*j*, x_ij*))
///   C   = K(x_i*, x_i*) / (N [1 + g kt(x_i*j*, x_i*j*)])
/// so that reduced(x) = A g h(x) - (1/N) sum_{i != i*} B_i g kt(x, x_ij*) - C g kt(x, x)
/// differs from delta(x) by an affine map with slope 1/N.
class ExchangeContext {
 public:
  ExchangeContext(const ProductModel& model, const Design& design, std::size_t i_star,
                  std::size_t j_star)
      : ExchangeContext(model, design, i_star, j_star, model.anchored(design)) {}

  ExchangeContext(const ProductModel& model, const Design& design, std::size_t i_star,
                  std::size_t j_star, const std::vector<double>& anchored)
      : model_(&model), n_(design.size()), i_star_(i_star), j_star_(j_star) {
    const std::size_t n = design.size(), d = design.dimension();
    if (i_star >= n || j_star >= d) throw ContractViolation("exchange index out of range");
    gamma_ = model.gamma(j_star);
    old_x_ = design(i_star, j_star);
    const double* s = anchored.data();
    const double* si = s + i_star * d;
    old_s_ = si[j_star];
    column_.resize(n);
    others_.reserve(n);
    double H = 1.0;
    for (std::size_t j = 0; j < d; ++j) H *= 1.0 + model.gamma(j) * model.h_anchored(si[j]);
    old_h_ = model.h_anchored(old_s_);
    A_ = 2.0 * H / (1.0 + gamma_ * old_h_);
    H_ = H;
    B_.assign(n, 0.0);
    K_row_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* sk = s + i * d;
      double K = 1.0;
      for (std::size_t j = 0; j < d; ++j) K *= 1.0 + model.gamma(j) * ktilde_origin(si[j], sk[j]);
      K_row_[i] = K;
      column_[i] = sk[j_star];
      const double kt_old = ktilde_origin(old_s_, sk[j_star]);
      B_[i] = 2.0 * K / (1.0 + gamma_ * kt_old);
      if (i != i_star) others_.push_back(i);
    }
    C_ = K_row_[i_star] / (static_cast<double>(n) * (1.0 + gamma_ * ktilde_origin(old_s_, old_s_)));
    reduced_at_old_ = reduced_anchored(old_s_);
  }

  [[nodiscard]] std::size_t i_star() const noexcept { return i_star_; }
  [[nodiscard]] std::size_t j_star() const noexcept { return j_star_; }
  [[nodiscard]] double current() const noexcept { return old_x_; }
  [[nodiscard]] double A() const noexcept { return A_; }
  [[nodiscard]] double B(std::size_t i) const { return B_[i]; }
  [[nodiscard]] double C() const noexcept { return C_; }

  /// Reduced objective; only differences and the argmax are meaningful.
  [[nodiscard]] double reduced(double x) const { return reduced_anchored(model_->anchor(x)); }

  /// Improvement D^2(X) - D^2(X*(x)) from the reduced objective.
  [[nodiscard]] double delta(double x) const {
    return (reduced(x) - reduced_at_old_) / static_cast<double>(n_);
  }

  /// The same improvement from the unreduced closed expansion.
  [[nodiscard]] double delta_closed(double x) const {
    const double nn = static_cast<double>(n_);
    const double s = model_->anchor(x);
    const double g = gamma_;
    double value = -2.0 * (g * old_h_ - g * model_->h_anchored(s)) * H_ / (nn * (1.0 + g * old_h_));
    double pairs = 0.0;
    for (std::size_t i : others_) {
      const double kt_old = ktilde_origin(old_s_, column_[i]);
      pairs += (g * kt_old - g * ktilde_origin(s, column_[i])) * K_row_[i] / (1.0 + g * kt_old);
    }
    const double kt_self = ktilde_origin(old_s_, old_s_);
    const double self =
        (g * kt_self - g * ktilde_origin(s, s)) * K_row_[i_star_] / (1.0 + g * kt_self);
    value += (2.0 * pairs + self) / (nn * nn);
    return value;
  }

  /// Points where the objective is not differentiable, in the design's own
  /// coordinates: the other column entries and the kernel anchor.
  [[nodiscard]] std::vector<double> kinks(const Design& design) const {
    std::vector<double> out;
    out.reserve(others_.size() + 1);
    for (std::size_t i : others_) out.push_back(design(i, j_star_));
    const auto& target = model_->target();
    switch (model_->kernel().base()) {
      case KernelBase::OriginAnchored:
        if (target.kind() != TargetKind::UnitUniform) out.push_back(0.0);
        break;
      case KernelBase::CenteredL2: out.push_back(0.5); break;
      case KernelBase::TransformedOriginAnchored: out.push_back(0.0); break;
    }
    return out;
  }

 private:
  [[nodiscard]] double reduced_anchored(double s) const {
    const double g = gamma_;
    double sum = 0.0;
    for (std::size_t i : others_) sum += B_[i] * ktilde_origin(s, column_[i]);
    return A_ * g * model_->h_anchored(s) - g * sum / static_cast<double>(n_) -
           C_ * g * ktilde_origin(s, s);
  }

  const ProductModel* model_;
  std::size_t n_;
  std::size_t i_star_, j_star_;
  double gamma_ = 1.0;
  double old_x_ = 0.0, old_s_ = 0.0, old_h_ = 0.0, H_ = 1.0;
  double A_ = 0.0, C_ = 0.0;
  double reduced_at_old_ = 0.0;
  std::vector<double> B_, K_row_, column_;
  std::vector<std::size_t> others_;
};

/// Delta(x) = D^2(X) - D^2(X with x_{i*j*} replaced by x), closed expansion.
[[nodiscard]] inline double delta_full(const Design& design, const TargetSpec& target,
                                       const KernelSpec& kernel, std::size_t i_star,
                                       std::size_t j_star, double x) {
  const ProductModel model(target, kernel);
  if (!target.in_support(x)) throw DomainError("delta_full: x outside the target support");
  return ExchangeContext(model, design, i_star, j_star).delta_closed(x);
}

/// Default search interval: the target quantiles of 1/(4N) and 1 - 1/(4N),
/// widened to cover the current column so no existing coordinate is excluded.
[[nodiscard]] inline std::pair<double, double> search_interval(const ProductModel& model,
                                                               const Design& design,
                                                               std::size_t j_star,
                                                               const ExchangeConfig& config) {
  const double q = 1.0 / (4.0 * static_cast<double>(design.size()));
  double lo = config.search_lo.value_or(model.target().quantile(q));
  double hi = config.search_hi.value_or(model.target().quantile(1.0 - q));
  for (std::size_t i = 0; i < design.size(); ++i) {
    lo = std::min(lo, design(i, j_star));
    hi = std::max(hi, design(i, j_star));
  }
  return {lo, hi};
}

struct UnivariateOptimum {
  double x = 0.0;
  double delta = 0.0;
};

namespace detail {

// Golden-section search for a maximum of f on [a, b].
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double width) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > width) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace detail

/// Maximises Delta over the search interval. The reduced objective is
/// evaluated on a uniform grid plus every kink; the two brackets around the
/// best candidate are then refined by golden-section search to width 1e-10.
[[nodiscard]] inline UnivariateOptimum maximize_delta(const ExchangeContext& ctx,
                                                      const ProductModel& model,
                                                      const Design& design,
                                                      const ExchangeConfig& config) {
  config.validate();
  const auto [lo, hi] = search_interval(model, design, ctx.j_star(), config);
  std::vector<double> cand;
  cand.reserve(config.grid_size + design.size() + 2);
  for (std::size_t g = 0; g < config.grid_size; ++g)
    cand.push_back(lo + (hi - lo) * static_cast<double>(g) / static_cast<double>(config.grid_size - 1));
  for (double k : ctx.kinks(design))
    if (k >= lo && k <= hi) cand.push_back(k);
  cand.push_back(ctx.current());
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  // The unit cube is open; keep candidates strictly inside.
  std::erase_if(cand, [&](double x) { return !model.target().in_support(x); });

  std::size_t best = 0;
  double best_val = -INFINITY;
  for (std::size_t k = 0; k < cand.size(); ++k) {
    const double v = ctx.reduced(cand[k]);
    if (!std::isfinite(v)) throw NumericalError("exchange objective is not finite");
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  double best_x = cand[best];
  auto objective = [&](double x) { return ctx.reduced(x); };
  for (int side : {-1, 1}) {
    if ((side < 0 && best == 0) || (side > 0 && best + 1 == cand.size())) continue;
    const double a = side < 0 ? cand[best - 1] : cand[best];
    const double b = side < 0 ? cand[best] : cand[best + 1];
    const auto [x, v] = detail::golden_max(objective, a, b, 1e-10);
    if (v > best_val) {
      best_val = v;
      best_x = x;
    }
  }
  return {best_x, ctx.delta_closed(best_x)};
}

/// Greedy coordinate exchange. Each iteration picks the point with the largest
/// point-deletion score and the coordinate with the largest coordinate-deletion
/// score (lowest index on ties), moves that coordinate to the maximiser of
/// Delta, and stops once the best improvement is not above tol.
[[nodiscard]] inline ExchangeResult coordinate_exchange(const Design& design,
                                                        const TargetSpec& target,
                                                        const KernelSpec& kernel,
                                                        const ExchangeConfig& config = {}) {
  config.validate();
  if (design.size() < 2 || design.dimension() < 2)
    throw ContractViolation("coordinate exchange needs N >= 2 and d >= 2");
  const ProductModel model(target, kernel);
  model.check(design);

  ExchangeResult result{design, {}};
  Design& x = result.design;
  auto& trace = result.trace;
  trace.terminated_by = Termination::MaxIters;

  for (std::size_t iter = 1; iter <= config.max_iters; ++iter) {
    const auto w = detail::sweep(model, x, true);
    const double current = std::sqrt(std::max(w.squared(), 0.0));
    if (iter == 1) trace.initial_discrepancy = current;
    else trace.steps.back().discrepancy_after = current;

    const auto dp = detail::point_scores_from(w);
    const auto dc = detail::coord_scores_from(model, w);
    const auto i_star = static_cast<std::size_t>(std::max_element(dp.begin(), dp.end()) - dp.begin());
    const auto j_star = static_cast<std::size_t>(std::max_element(dc.begin(), dc.end()) - dc.begin());

    const ExchangeContext ctx(model, x, i_star, j_star, w.anchored);
    const auto best = maximize_delta(ctx, model, x, config);
    if (!(best.delta > config.tol)) {
      trace.terminated_by = Termination::Tol;
      trace.final_discrepancy = current;
      return result;
    }
    trace.steps.push_back({iter, i_star, j_star, ctx.current(), best.x, best.delta, 0.0});
    x.set(i_star, j_star, best.x);
  }
  const double final_value = make_report(detail::sweep(model, x, false).squared()).value;
  trace.steps.back().discrepancy_after = final_value;
  trace.final_discrepancy = final_value;
  return result;
}

/// Runs the exchange from every start and keeps the lowest final
/// discrepancy (earliest start on ties). Returns the winning index too.
[[nodiscard]] inline std::pair<ExchangeResult, std::size_t> multistart_exchange(
    const std::vector<Design>& starts, const TargetSpec& target, const KernelSpec& kernel,
    const ExchangeConfig& config = {}) {
  if (starts.empty()) throw ContractViolation("multistart_exchange needs at least one start");
  std::optional<ExchangeResult> best;
  std::size_t best_index = 0;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    auto r = coordinate_exchange(starts[k], target, kernel, config);
    if (!best || r.trace.final_discrepancy < best->trace.final_discrepancy) {
      best = std::move(r);
      best_index = k;
    }
  }
  return {std::move(*best), best_index};
}

}  // namespace lowdisc
