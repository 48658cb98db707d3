#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace lvdyn {

/// Sobol' low-discrepancy sequence in Gray-code order, 32-bit resolution,
/// Joe-Kuo direction numbers. An optional seed applies a random digital
/// shift, which keeps the (t, m, s)-net structure.
class SobolSequence {
 public:
  static constexpr unsigned kMaxDimension = 21;
  static constexpr unsigned kBits = 32;

  explicit SobolSequence(unsigned dimension, std::optional<std::uint64_t> seed = std::nullopt);

  unsigned dimension() const { return dimension_; }

  /// Next point in [0, 1)^d.
  std::vector<double> next();
  void next(std::vector<double>& out);

  /// Skips ahead to point `index` (0-based).
  void reset(std::uint64_t index = 0);

 private:
  unsigned dimension_;
  std::vector<std::uint32_t> directions_;  // dimension * kBits
  std::vector<std::uint32_t> shift_;
  std::vector<std::uint32_t> state_;
  std::uint64_t index_ = 0;
};

}  // namespace lvdyn
