#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lowdisc/design.hpp"
#include "lowdisc/errors.hpp"
#include "lowdisc/sobol.hpp"
#include "lowdisc/targets.hpp"

namespace lowdisc {

enum class GeneratorKind { Rand, Sobol, ScrambledSobol, ESobol };

[[nodiscard]] inline std::string_view to_string(GeneratorKind kind) noexcept {
  switch (kind) {
    case GeneratorKind::Rand: return "rand";
    case GeneratorKind::Sobol: return "sobol";
    case GeneratorKind::ScrambledSobol: return "scrambled-sobol";
    case GeneratorKind::ESobol: return "esobol";
  }
  return "?";
}

inline constexpr double kUnitClampLow = 0x1p-53;
inline constexpr double kUnitClampHigh = 1.0 - 0x1p-53;

[[nodiscard]] inline double clamp_unit(double u) noexcept {
  return std::clamp(u, kUnitClampLow, kUnitClampHigh);
}

struct GeneratorConfig {
  GeneratorKind kind = GeneratorKind::Rand;
  std::size_t n = 1;
  std::size_t d = 1;
  std::uint64_t seed = 0;
  /// Leading points of the raw Sobol' sequence to drop. Unset means 1 for
  /// plain Sobol' (the all-zeros point) and 0 for the shifted variants,
  /// whose first point is no longer at the origin.
  std::optional<std::uint64_t> skip;

  [[nodiscard]] std::uint64_t effective_skip() const noexcept {
    if (skip) return *skip;
    return kind == GeneratorKind::Sobol ? 1 : 0;
  }

  [[nodiscard]] bool power_of_two() const noexcept { return n != 0 && (n & (n - 1)) == 0; }

  void validate() const {
    if (n == 0) throw ContractViolation("generator needs N >= 1");
    if (d == 0) throw ContractViolation("generator needs d >= 1");
    if (kind != GeneratorKind::Rand && d > SobolSequence::kMaxDimension)
      throw SizeError("dimension " + std::to_string(d) + " exceeds the Sobol' table (" +
                      std::to_string(SobolSequence::kMaxDimension) + ")");
  }
};

/// splitmix64 finaliser; used to derive independent per-replicate seeds.
[[nodiscard]] constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replicate) noexcept {
  return mix_seed(seed ^ mix_seed(replicate + 1));
}

/// IID uniforms on (0,1)^d. 53-bit mantissas from mt19937_64, clamped away
/// from the boundary, so output is identical across standard libraries.
[[nodiscard]] inline Design generate_rand(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(n * d);
  for (double& x : v) x = clamp_unit(static_cast<double>(rng() >> 11) * 0x1p-53);
  return {n, d, std::move(v), Domain::UnitCube};
}

/// Points skip, ..., skip + N - 1 of the unscrambled Sobol' sequence.
[[nodiscard]] inline Design generate_sobol(const GeneratorConfig& config) {
  config.validate();
  SobolSequence seq(config.d);
  seq.seek(config.effective_skip());
  std::vector<std::uint32_t> bits(config.d);
  std::vector<double> v;
  v.reserve(config.n * config.d);
  for (std::size_t i = 0; i < config.n; ++i) {
    seq.next(bits);
    for (auto b : bits) v.push_back(clamp_unit(SobolSequence::to_unit(b)));
  }
  return {config.n, config.d, std::move(v), Domain::UnitCube};
}

/// XOR shift with explicit words (one per column). A zero shift is the identity.
[[nodiscard]] inline Design digital_shift(const Design& design, const std::vector<std::uint32_t>& shift) {
  if (shift.size() != design.dimension()) throw ContractViolation("digital_shift: one word per column");
  std::vector<double> v = design.values();
  const std::size_t d = design.dimension();
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double scaled = std::ldexp(v[k], 32);
    const double high = std::floor(scaled);
    const double low = v[k] - std::ldexp(high, -32);
    const auto word = static_cast<std::uint32_t>(high) ^ shift[k % d];
    v[k] = clamp_unit(std::ldexp(static_cast<double>(word), -32) + low);
  }
  return {design.size(), d, std::move(v), Domain::UnitCube};
}

/// Random digital shift: the leading 32 bits of every coordinate in column j
/// are XORed with one random word per column. Bits below 2^-32 are kept.
[[nodiscard]] inline Design scramble(const Design& design, std::uint64_t seed) {
  if (design.domain() != Domain::UnitCube) throw ContractViolation("scramble needs a unit-cube design");
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> shift(design.dimension());
  for (auto& s : shift) s = static_cast<std::uint32_t>(rng() >> 32);
  return digital_shift(design, shift);
}

/// Number of columns containing at least one repeated value.
[[nodiscard]] inline std::size_t count_tied_columns(const Design& design) {
  std::size_t tied = 0;
  for (std::size_t j = 0; j < design.dimension(); ++j) {
    auto col = design.column(j);
    std::sort(col.begin(), col.end());
    if (std::adjacent_find(col.begin(), col.end()) != col.end()) ++tied;
  }
  return tied;
}

/// Replaces every column by the grid {(2k-1)/(2N)}, keeping each column's
/// rank order. Ties go to the lower row index.
[[nodiscard]] inline Design esobol_adjust(const Design& design) {
  if (design.domain() != Domain::UnitCube) throw ContractViolation("esobol_adjust needs a unit-cube design");
  const std::size_t n = design.size(), d = design.dimension();
  const double two_n = 2.0 * static_cast<double>(n);
  std::vector<double> v(n * d);
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < d; ++j) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return design(a, j) < design(b, j); });
    for (std::size_t r = 0; r < n; ++r)
      v[order[r] * d + j] = (2.0 * static_cast<double>(r) + 1.0) / two_n;
  }
  return {n, d, std::move(v), Domain::UnitCube};
}

/// Uniform design for any generator family.
[[nodiscard]] inline Design generate_uniform(const GeneratorConfig& config) {
  config.validate();
  switch (config.kind) {
    case GeneratorKind::Rand: return generate_rand(config.n, config.d, config.seed);
    case GeneratorKind::Sobol: return generate_sobol(config);
    case GeneratorKind::ScrambledSobol: return scramble(generate_sobol(config), config.seed);
    case GeneratorKind::ESobol: return esobol_adjust(scramble(generate_sobol(config), config.seed));
  }
  throw ContractViolation("unknown generator kind");
}

/// Coordinatewise inverse-CDF map from (0,1)^d to the target's domain.
[[nodiscard]] inline Design transform_to_target(const Design& design, const TargetSpec& target) {
  if (design.domain() != Domain::UnitCube)
    throw ContractViolation("transform_to_target needs a unit-cube design");
  if (design.dimension() != target.dimension())
    throw ContractViolation("transform_to_target: dimension mismatch");
  std::vector<double> v = design.values();
  for (double& x : v) x = target.quantile(x);
  return {design.size(), design.dimension(), std::move(v), target.domain()};
}

}  // namespace lowdisc
