#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lowdisc/errors.hpp"

namespace lowdisc {

namespace detail {

struct SobolPolynomial {
  unsigned degree;
  unsigned coefficients;            // interior coefficients, highest first
  std::array<std::uint32_t, 8> m;   // initial direction integers
};

// Joe & Kuo (2008) new-joe-kuo-6.21201, dimensions 2..37. Dimension 1 is
// the van der Corput sequence and has no entry here.
inline constexpr std::array<SobolPolynomial, 36> kSobolPolynomials{{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
    {6, 19, {1, 1, 1, 15, 7, 5}},
    {6, 22, {1, 3, 1, 15, 13, 25}},
    {6, 25, {1, 1, 5, 5, 19, 61}},
    {7, 1, {1, 3, 7, 11, 23, 15, 103}},
    {7, 4, {1, 3, 7, 13, 13, 15, 69}},
    {7, 7, {1, 1, 3, 13, 7, 35, 63}},
    {7, 8, {1, 3, 5, 9, 1, 25, 53}},
    {7, 14, {1, 3, 1, 13, 9, 35, 107}},
    {7, 19, {1, 3, 1, 5, 27, 61, 31}},
    {7, 21, {1, 1, 5, 11, 19, 41, 61}},
    {7, 28, {1, 3, 5, 3, 3, 13, 69}},
    {7, 31, {1, 1, 7, 13, 1, 19, 1}},
    {7, 32, {1, 3, 7, 5, 13, 19, 59}},
    {7, 37, {1, 1, 3, 9, 25, 29, 41}},
    {7, 41, {1, 3, 5, 13, 23, 1, 55}},
    {7, 42, {1, 3, 7, 3, 13, 59, 17}},
    {7, 50, {1, 3, 1, 3, 5, 53, 69}},
    {7, 55, {1, 1, 5, 5, 23, 33, 13}},
    {7, 56, {1, 1, 7, 7, 1, 61, 123}},
    {7, 59, {1, 1, 7, 9, 13, 61, 49}},
    {7, 62, {1, 3, 3, 5, 3, 55, 33}},
}};

}  // namespace detail

/// Unscrambled base-2 Sobol' sequence with 32-bit direction numbers.
///
/// Points are addressed by their index in the raw sequence; index 0 is the
/// all-zeros point. Successive points are produced in Gray-code order so
/// that every aligned block of 2^m indices is a (0,m,1)-net in each
/// coordinate.
class SobolSequence {
 public:
  static constexpr unsigned kBits = 32;
  static constexpr std::size_t kMaxDimension = detail::kSobolPolynomials.size() + 1;

  explicit SobolSequence(std::size_t dimension) : dimension_(dimension) {
    if (dimension == 0) throw ContractViolation("Sobol' dimension must be positive");
    if (dimension > kMaxDimension)
      throw SizeError("Sobol' dimension " + std::to_string(dimension) +
                      " exceeds the direction-number table (" +
                      std::to_string(kMaxDimension) + ")");
    directions_.resize(dimension_ * kBits);
    for (unsigned k = 0; k < kBits; ++k) directions_[k] = std::uint32_t{1} << (kBits - 1 - k);
    for (std::size_t j = 1; j < dimension_; ++j) {
      const auto& poly = detail::kSobolPolynomials[j - 1];
      const unsigned s = poly.degree;
      std::uint32_t* v = &directions_[j * kBits];
      for (unsigned k = 0; k < s && k < kBits; ++k) v[k] = poly.m[k] << (kBits - 1 - k);
      for (unsigned k = s; k < kBits; ++k) {
        v[k] = v[k - s] ^ (v[k - s] >> s);
        for (unsigned l = 1; l < s; ++l)
          if ((poly.coefficients >> (s - 1 - l)) & 1U) v[k] ^= v[k - l];
      }
    }
    seek(0);
  }

  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] std::uint64_t index() const noexcept { return index_; }

  /// Positions the sequence so the next call to next() returns point `index`.
  void seek(std::uint64_t index) {
    if (index >= (std::uint64_t{1} << kBits)) throw SizeError("Sobol' index exceeds 2^32");
    index_ = index;
    state_.assign(dimension_, 0);
    const std::uint64_t gray = index ^ (index >> 1);
    for (unsigned k = 0; k < kBits; ++k) {
      if (!((gray >> k) & 1U)) continue;
      for (std::size_t j = 0; j < dimension_; ++j) state_[j] ^= directions_[j * kBits + k];
    }
  }

  /// Writes the integer coordinates of the current point and advances.
  void next(std::span<std::uint32_t> out) {
    if (out.size() != dimension_) throw ContractViolation("Sobol' output size mismatch");
    if (index_ >= (std::uint64_t{1} << kBits)) throw SizeError("Sobol' sequence exhausted");
    std::copy(state_.begin(), state_.end(), out.begin());
    // Gray-code update: flip the direction number of the lowest zero bit.
    unsigned c = 0;
    for (std::uint64_t value = index_; value & 1U; value >>= 1) ++c;
    if (c < kBits)
      for (std::size_t j = 0; j < dimension_; ++j) state_[j] ^= directions_[j * kBits + c];
    ++index_;
  }

  [[nodiscard]] static double to_unit(std::uint32_t bits) noexcept {
    return static_cast<double>(bits) * 0x1p-32;
  }

 private:
  std::size_t dimension_;
  std::uint64_t index_ = 0;
  std::vector<std::uint32_t> directions_;
  std::vector<std::uint32_t> state_;
};

}  // namespace lowdisc
