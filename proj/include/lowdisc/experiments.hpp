#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lowdisc/design.hpp"
#include "lowdisc/discrepancy.hpp"
#include "lowdisc/generators.hpp"
#include "lowdisc/kernels.hpp"
#include "lowdisc/normal.hpp"
#include "lowdisc/optimizer.hpp"
#include "lowdisc/quadrature.hpp"
#include "lowdisc/targets.hpp"

namespace lowdisc {

enum class StudyKind { Cubature, Correlation, Compare, VerifyAppendix };

struct StudyConfig {
  StudyKind study = StudyKind::Compare;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> sizes;
  std::size_t replicates = 500;
  std::uint64_t seed = 0;

  void validate() const {
    if (replicates < 1) throw ContractViolation("study needs at least one replicate");
    if (dims.empty() || sizes.empty()) throw ContractViolation("study needs dims and sizes");
    if (study == StudyKind::Compare && dims.size() != sizes.size())
      throw ContractViolation("compare study needs one size per dimension");
  }

  static StudyConfig correlation_defaults(std::uint64_t seed = 0) {
    return {StudyKind::Correlation, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, {50}, 500, seed};
  }
  static StudyConfig compare_defaults(std::uint64_t seed = 0) {
    return {StudyKind::Compare, {2, 3, 4, 6, 8, 10}, {32, 64, 64, 128, 256, 512}, 500, seed};
  }
};

// ---------------------------------------------------------------------------
// Cubature example

inline constexpr double kExampleDamping = 1e-8;

/// f(x) = |x|^2 / (1 + 1e-8 |x|^2), bounded so it lies in the kernel's space.
[[nodiscard]] inline double integrand_example(std::span<const double> x,
                                              double damping = kExampleDamping) noexcept {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return r2 / (1.0 + damping * r2);
}

/// E f(X) for X ~ N(0, I_d), as a one-dimensional integral over the radius
/// against the chi density.
[[nodiscard]] inline double reference_mu(std::size_t d, double damping = kExampleDamping) {
  if (d == 0) throw ContractViolation("reference_mu needs d >= 1");
  const double half = 0.5 * static_cast<double>(d);
  const double log_norm = (half - 1.0) * std::numbers::ln2 + std::lgamma(half);
  auto f = [&](double r) {
    if (r <= 0.0) return 0.0;
    const double r2 = r * r;
    const double chi = std::exp((static_cast<double>(d) - 1.0) * std::log(r) - 0.5 * r2 - log_norm);
    return r2 / (1.0 + damping * r2) * chi;
  };
  const double peak = std::sqrt(static_cast<double>(d));
  return integrate(f, 0.0, peak + 30.0, {peak, 0.5 * peak, peak + 5.0}, 1e-13);
}

/// Sample-mean cubature of the example integrand.
[[nodiscard]] inline double cubature_estimate(const Design& design) {
  double sum = 0.0;
  for (std::size_t i = 0; i < design.size(); ++i) sum += integrand_example(design.row(i));
  return sum / static_cast<double>(design.size());
}

struct CubatureResult {
  double estimate = 0.0;
  double reference = 0.0;
  double relative_error = 0.0;
  double discrepancy_uniform = 0.0;         // centered L2
  double discrepancy_uniform_origin = 0.0;  // origin-anchored kernel on (0,1)^d
  double discrepancy_normal = 0.0;
};

/// Which point of the first design is moved to (1e-15, ..., 1e-15).
enum class ClosestRule {
  PreTransformCenter,  // nearest to (0.5, ..., 0.5) in the unit cube
  PostTransformOrigin  // nearest to the origin after the inverse normal map
};

[[nodiscard]] inline CubatureResult evaluate_cubature(const Design& uniform, double reference) {
  const auto normal = transform_to_target(uniform, TargetSpec::standard_normal(uniform.dimension()));
  CubatureResult r;
  r.estimate = cubature_estimate(normal);
  r.reference = reference;
  r.relative_error = std::abs(r.estimate - reference) / std::abs(reference);
  r.discrepancy_uniform = make_report(discrepancy_sq_centered_l2(uniform)).value;
  r.discrepancy_uniform_origin = make_report(discrepancy_sq_origin_unit(uniform)).value;
  r.discrepancy_normal = make_report(discrepancy_sq_normal_closed(normal)).value;
  return r;
}

/// Index of the point the outlier replaces.
[[nodiscard]] inline std::size_t closest_point(const Design& uniform, ClosestRule rule) {
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < uniform.size(); ++i) {
    double dist = 0.0;
    for (double u : uniform.row(i)) {
      const double e = rule == ClosestRule::PreTransformCenter ? u - 0.5 : normal_quantile(u);
      dist += e * e;
    }
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return best;
}

struct CubatureExample {
  Design first;   // scrambled Sobol', d = 10, N = 512
  Design second;  // same with one point moved next to the corner
  std::size_t moved_index = 0;
  CubatureResult first_result;
  CubatureResult second_result;
};

[[nodiscard]] inline CubatureExample run_cubature_example(
    std::uint64_t seed, ClosestRule rule = ClosestRule::PreTransformCenter) {
  constexpr std::size_t d = 10, n = 512;
  GeneratorConfig config{GeneratorKind::ScrambledSobol, n, d, seed, std::nullopt};
  Design first = generate_uniform(config);
  Design second = first;
  const std::size_t moved = closest_point(first, rule);
  for (std::size_t j = 0; j < d; ++j) second.set(moved, j, 1e-15);
  const double mu = reference_mu(d);
  auto r1 = evaluate_cubature(first, mu);
  auto r2 = evaluate_cubature(second, mu);
  return {std::move(first), std::move(second), moved, r1, r2};
}

// ---------------------------------------------------------------------------
// Correlation between uniform and normal discrepancies

[[nodiscard]] inline double pearson(std::span<const double> x, std::span<const double> y,
                                    bool* degenerate = nullptr) {
  if (x.size() != y.size() || x.empty()) throw ContractViolation("pearson: size mismatch");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  const bool flat = !(sxx > 1e-24 * std::max(1.0, mx * mx) * n) ||
                    !(syy > 1e-24 * std::max(1.0, my * my) * n);
  if (degenerate) *degenerate = flat;
  if (flat) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

struct DiscrepancyPair {
  double uniform = 0.0;  // centered L2 of U (= origin kernel on U - 1/2)
  double normal = 0.0;   // origin kernel, normal target, on Phi^{-1}(U)
};

/// Uniform and normal discrepancies of B IID designs, one per replicate seed.
[[nodiscard]] inline std::vector<DiscrepancyPair> correlation_samples(std::size_t d, std::size_t n,
                                                                      std::size_t replicates,
                                                                      std::uint64_t seed) {
  std::vector<DiscrepancyPair> out;
  out.reserve(replicates);
  const auto normal = TargetSpec::standard_normal(d);
  for (std::size_t b = 0; b < replicates; ++b) {
    const auto u = generate_rand(n, d, derive_seed(derive_seed(seed, d), b));
    out.push_back({make_report(discrepancy_sq_centered_l2(u)).value,
                   make_report(discrepancy_sq_normal_closed(transform_to_target(u, normal))).value});
  }
  return out;
}

struct CorrelationRow {
  std::size_t d = 0;
  double correlation = 0.0;
  bool degenerate = false;
};

[[nodiscard]] inline std::vector<CorrelationRow> run_correlation_study(const StudyConfig& config) {
  config.validate();
  if (config.replicates < 2) throw ContractViolation("correlation needs at least 2 replicates");
  std::vector<CorrelationRow> rows;
  for (std::size_t d : config.dims) {
    for (std::size_t n : config.sizes) {
      const auto samples = correlation_samples(d, n, config.replicates, config.seed);
      std::vector<double> x, y;
      for (const auto& s : samples) {
        x.push_back(s.uniform);
        y.push_back(s.normal);
      }
      CorrelationRow row{d, 0.0, false};
      row.correlation = pearson(x, y, &row.degenerate);
      rows.push_back(row);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Generator comparison

enum class Family { Rand, Sobol, ESobol, CE };

[[nodiscard]] inline std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Rand: return "RAND";
    case Family::Sobol: return "SOBOL";
    case Family::ESobol: return "E-SOBOL";
    case Family::CE: return "CE";
  }
  return "?";
}

struct CompareRow {
  std::size_t d = 0;
  std::size_t n = 0;
  Family family = Family::Rand;
  std::size_t replicate = 0;
  double discrepancy = 0.0;  // normal target, origin-anchored kernel
  double seconds = 0.0;      // wall-clock to build the design
  std::size_t iterations = 0;        // CE only: accepted exchanges
  double start_discrepancy = 0.0;    // CE only: the E-SOBOL value it started from
  bool monotone = true;              // CE only: trace never increased
  Termination terminated_by = Termination::Tol;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline bool trace_monotone(const ExchangeTrace& trace, double tol) {
  double prev = trace.initial_discrepancy;
  for (const auto& s : trace.steps) {
    if (!(s.delta > tol) || s.discrepancy_after > prev) return false;
    prev = s.discrepancy_after;
  }
  return true;
}

}  // namespace detail

/// Four families per (d, N): RAND (IID), SOBOL (digitally shifted Sobol'),
/// E-SOBOL (the same design with exact one-dimensional projections) and CE
/// (coordinate exchange started from E-SOBOL). All are mapped to the normal
/// target by the inverse CDF. Rows are ordered by (d, N), replicate, family.
[[nodiscard]] inline std::vector<CompareRow> run_compare_study(const StudyConfig& config,
                                                               const ExchangeConfig& exchange = {}) {
  config.validate();
  std::vector<CompareRow> rows;
  for (std::size_t c = 0; c < config.dims.size(); ++c) {
    const std::size_t d = config.dims[c], n = config.sizes[c];
    const auto normal = TargetSpec::standard_normal(d);
    const KernelSpec origin(KernelBase::OriginAnchored);
    for (std::size_t b = 0; b < config.replicates; ++b) {
      const std::uint64_t s = derive_seed(derive_seed(config.seed, d * 100003 + n), b);
      using clock = std::chrono::steady_clock;

      auto t0 = clock::now();
      const auto rand = transform_to_target(generate_rand(n, d, s), normal);
      const double t_rand = detail::seconds_since(t0);

      t0 = clock::now();
      const auto shifted = generate_uniform({GeneratorKind::ScrambledSobol, n, d, s, std::nullopt});
      const auto sobol = transform_to_target(shifted, normal);
      const double t_sobol = detail::seconds_since(t0);

      t0 = clock::now();
      const auto esobol = transform_to_target(esobol_adjust(shifted), normal);
      const double t_esobol = t_sobol + detail::seconds_since(t0);

      t0 = clock::now();
      const auto ce = coordinate_exchange(esobol, normal, origin, exchange);
      const double t_ce = t_esobol + detail::seconds_since(t0);

      const double d_esobol = make_report(discrepancy_sq_normal_closed(esobol)).value;
      rows.push_back({d, n, Family::Rand, b, make_report(discrepancy_sq_normal_closed(rand)).value,
                      t_rand});
      rows.push_back({d, n, Family::Sobol, b, make_report(discrepancy_sq_normal_closed(sobol)).value,
                      t_sobol});
      rows.push_back({d, n, Family::ESobol, b, d_esobol, t_esobol});
      CompareRow ce_row{d, n, Family::CE, b,
                        make_report(discrepancy_sq_normal_closed(ce.design)).value, t_ce};
      ce_row.iterations = ce.trace.steps.size();
      ce_row.start_discrepancy = d_esobol;
      ce_row.monotone = detail::trace_monotone(ce.trace, exchange.tol);
      ce_row.terminated_by = ce.trace.terminated_by;
      rows.push_back(ce_row);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Quadrature checks of the normal-target integrals

struct AppendixReport {
  std::size_t d = 1;
  double max_single_error = 0.0;    // worst |quadrature - closed form| over 25 points
  double double_integral = 0.0;     // quadrature of the kernel against Phi x Phi
  double double_printed = 0.0;      // (1 + sqrt(2/pi))^d
  double double_closed = 0.0;       // (1 + c)^d with c = sqrt(2/pi) - 1/sqrt(pi)
  bool single_ok = false;           // within 1e-8
  bool double_printed_ok = false;   // within 1e-6 of the printed constant
  bool double_closed_ok = false;    // within 1e-6 of (1 + c)^d
};

namespace detail {

inline constexpr double kNormalCut = 8.0;

// int_{-8}^{8} [1 + kt(t, x)] phi(t) dt by quadrature, kinks at 0 and x.
inline double kernel_against_normal(double x) {
  return integrate([x](double t) { return (1.0 + ktilde_origin(t, x)) * normal_pdf(t); },
                   -kNormalCut, kNormalCut, {0.0, x}, 1e-13);
}

}  // namespace detail

[[nodiscard]] inline AppendixReport verify_appendix(std::size_t d) {
  if (d != 1 && d != 2) throw ContractViolation("verify_appendix supports d = 1 or 2");
  AppendixReport rep;
  rep.d = d;
  const double cut = detail::kNormalCut;

  // One-fold integral at 25 points.
  std::vector<std::vector<double>> points;
  if (d == 1) {
    for (int k = 0; k < 25; ++k) points.push_back({-4.0 + 8.0 * k / 24.0});
  } else {
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) points.push_back({-3.0 + 1.5 * a, -2.7 + 1.4 * b});
  }
  for (const auto& x : points) {
    double quad = 0.0;
    if (d == 1) {
      quad = detail::kernel_against_normal(x[0]);
    } else {
      auto inner = [&](double t1) {
        return integrate(
            [&](double t2) {
              return (1.0 + ktilde_origin(t1, x[0])) * (1.0 + ktilde_origin(t2, x[1])) *
                     normal_pdf(t1) * normal_pdf(t2);
            },
            -cut, cut, {0.0, x[1]}, 1e-13);
      };
      quad = integrate(inner, -cut, cut, {0.0, x[0]}, 1e-12);
    }
    double closed = 1.0;
    for (double xj : x)
      closed *= 1.0 + kInvSqrt2Pi + 0.5 * std::abs(xj) - xj * (normal_cdf(xj) - 0.5) - normal_pdf(xj);
    rep.max_single_error = std::max(rep.max_single_error, std::abs(quad - closed));
  }

  // Two-fold integral: the inner integral over t is done by quadrature per
  // coordinate (the kernel and density are products), the outer over x by
  // d-dimensional nested quadrature.
  if (d == 1) {
    rep.double_integral = integrate(
        [](double x) { return detail::kernel_against_normal(x) * normal_pdf(x); }, -cut, cut,
        {0.0}, 1e-11);
  } else {
    rep.double_integral = integrate(
        [&](double x1) {
          const double i1 = detail::kernel_against_normal(x1) * normal_pdf(x1);
          return integrate(
              [&](double x2) { return i1 * detail::kernel_against_normal(x2) * normal_pdf(x2); },
              -cut, cut, {0.0}, 1e-11);
        },
        -cut, cut, {0.0}, 1e-11);
  }
  const double dd = static_cast<double>(d);
  rep.double_printed = std::pow(1.0 + std::sqrt(2.0 / std::numbers::pi), dd);
  rep.double_closed = std::pow(1.0 + kNormalOriginC, dd);
  rep.single_ok = rep.max_single_error <= 1e-8;
  rep.double_printed_ok = std::abs(rep.double_integral - rep.double_printed) <= 1e-6;
  rep.double_closed_ok = std::abs(rep.double_integral - rep.double_closed) <= 1e-6;
  return rep;
}

}  // namespace lowdisc
