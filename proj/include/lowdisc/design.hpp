#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lowdisc/errors.hpp"

namespace lowdisc {

enum class Domain { UnitCube, CenteredCube, RealSpace };

[[nodiscard]] inline std::string_view to_string(Domain domain) noexcept {
  switch (domain) {
    case Domain::UnitCube: return "unit-cube";
    case Domain::CenteredCube: return "centered-cube";
    case Domain::RealSpace: return "real-space";
  }
  return "?";
}

[[nodiscard]] inline bool in_domain(Domain domain, double x) noexcept {
  if (!std::isfinite(x)) return false;
  switch (domain) {
    case Domain::UnitCube: return x > 0.0 && x < 1.0;
    case Domain::CenteredCube: return x > -0.5 && x < 0.5;
    case Domain::RealSpace: return true;
  }
  return false;
}

/// N points in d dimensions, stored row-major, tagged with the region the
/// points are supposed to live in.
class Design {
 public:
  Design() = default;

  Design(std::size_t n, std::size_t d, std::vector<double> values, Domain domain)
      : n_(n), d_(d), values_(std::move(values)), domain_(domain) {
    if (n_ == 0 || d_ == 0) throw ContractViolation("design needs N >= 1 and d >= 1");
    if (values_.size() != n_ * d_)
      throw ContractViolation("design value count " + std::to_string(values_.size()) +
                              " != N*d = " + std::to_string(n_ * d_));
    validate();
  }

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return d_; }
  [[nodiscard]] Domain domain() const noexcept { return domain_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return values_[i * d_ + j]; }

  [[nodiscard]] std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * d_, d_};
  }

  [[nodiscard]] std::vector<double> column(std::size_t j) const {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = values_[i * d_ + j];
    return out;
  }

  /// Replaces one coordinate; the new value must stay in the domain.
  void set(std::size_t i, std::size_t j, double x) {
    if (!in_domain(domain_, x))
      throw DomainError("coordinate " + std::to_string(x) + " outside " +
                        std::string(to_string(domain_)));
    values_[i * d_ + j] = x;
  }

  void validate() const {
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (!in_domain(domain_, values_[k]))
        throw DomainError("design entry (" + std::to_string(k / d_) + "," +
                          std::to_string(k % d_) + ") = " + std::to_string(values_[k]) +
                          " outside " + std::string(to_string(domain_)));
    }
  }

  /// Drops point i (used by brute-force checks and deletion diagnostics).
  [[nodiscard]] Design without_point(std::size_t i) const {
    if (n_ < 2) throw ContractViolation("cannot remove the only point of a design");
    std::vector<double> v;
    v.reserve((n_ - 1) * d_);
    for (std::size_t r = 0; r < n_; ++r)
      if (r != i) v.insert(v.end(), values_.begin() + r * d_, values_.begin() + (r + 1) * d_);
    return {n_ - 1, d_, std::move(v), domain_};
  }

  /// Drops coordinate j.
  [[nodiscard]] Design without_coordinate(std::size_t j) const {
    if (d_ < 2) throw ContractViolation("cannot remove the only coordinate of a design");
    std::vector<double> v;
    v.reserve(n_ * (d_ - 1));
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < d_; ++c)
        if (c != j) v.push_back(values_[r * d_ + c]);
    return {n_, d_ - 1, std::move(v), domain_};
  }

  friend bool operator==(const Design&, const Design&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> values_;
  Domain domain_ = Domain::UnitCube;
};

}  // namespace lowdisc
