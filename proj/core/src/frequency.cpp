#include "sadic/frequency.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sadic {

FrequencyVector::FrequencyVector(std::vector<double> tau) : tau_(std::move(tau)) {
  if (tau_.size() < 2) {
    throw std::domain_error("frequency vector needs at least two entries");
  }
  double sum = 0.0;
  for (double t : tau_) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
      throw std::domain_error("frequency entries must be finite and >= 0");
    }
    sum += t;
  }
  if (std::abs(sum - 1.0) > kFrequencySumTolerance) {
    throw std::domain_error("frequencies must sum to 1, got " +
                            std::to_string(sum));
  }
}

FrequencyVector FrequencyVector::uniform(std::uint32_t radix) {
  return FrequencyVector(std::vector<double>(radix, 1.0 / radix));
}

FrequencyVector FrequencyVector::degenerate(std::uint32_t radix,
                                            std::uint32_t digit) {
  if (digit >= radix) throw std::domain_error("digit outside alphabet");
  std::vector<double> tau(radix, 0.0);
  tau[digit] = 1.0;
  return FrequencyVector(std::move(tau));
}

}  // namespace sadic
