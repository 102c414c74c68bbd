#pragma once

// Prescribed digit-frequency vectors (tau_0, ..., tau_{s-1}).

#include <cstdint>
#include <vector>

namespace sadic {

/// Tolerance on |sum(tau) - 1| accepted by FrequencyVector.
inline constexpr double kFrequencySumTolerance = 1e-12;

/// A vector of digit frequencies: one nonnegative entry per digit of the
/// alphabet, summing to 1.
class FrequencyVector {
 public:
  explicit FrequencyVector(std::vector<double> tau);

  std::size_t size() const noexcept { return tau_.size(); }
  double operator[](std::size_t i) const { return tau_[i]; }
  const std::vector<double>& values() const noexcept { return tau_; }

  static FrequencyVector uniform(std::uint32_t radix);
  /// Indicator vector: frequency 1 at `digit`, 0 elsewhere.
  static FrequencyVector degenerate(std::uint32_t radix, std::uint32_t digit);

  friend bool operator==(const FrequencyVector&,
                         const FrequencyVector&) = default;

 private:
  std::vector<double> tau_;
};

}  // namespace sadic
