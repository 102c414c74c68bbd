#include "sadic/digits.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sadic {

Alphabet::Alphabet(std::uint32_t radix) : radix_(radix) {
  if (radix < kMinRadix || radix > kMaxRadix) {
    throw std::domain_error("alphabet radix must be in [" +
                            std::to_string(kMinRadix) + ", " +
                            std::to_string(kMaxRadix) + "], got " +
                            std::to_string(radix));
  }
}

void validate_digits(const Alphabet& a, const std::vector<digit_t>& digits) {
  for (digit_t d : digits) {
    if (!a.contains(d)) {
      throw std::domain_error("digit " + std::to_string(d) +
                              " outside alphabet of radix " +
                              std::to_string(a.radix()));
    }
  }
}

void validate_word(const DigitWord& w) { validate_digits(w.alphabet, w.digits); }

void validate_word(const PeriodicWord& w) {
  validate_digits(w.alphabet, w.preperiod);
  validate_digits(w.alphabet, w.period);
  if (w.period.empty()) {
    throw std::domain_error("periodic word needs a nonempty period");
  }
}

digit_t PeriodicWord::digit_at(std::uint64_t k) const {
  if (k == 0) throw std::domain_error("digit positions are 1-based");
  if (k <= preperiod.size()) return preperiod[k - 1];
  return period[(k - 1 - preperiod.size()) % period.size()];
}

PeriodicWord canonicalize(const PeriodicWord& w) {
  validate_word(w);
  const digit_t top = w.alphabet.max_digit();
  const bool top_period =
      std::ranges::all_of(w.period, [&](digit_t d) { return d == top; });
  if (!top_period) return w;

  // Period (s-1): carry one unit into the preperiod and switch to period (0).
  PeriodicWord out{w.alphabet, w.preperiod, {0}};
  auto& digits = out.preperiod;
  auto it = digits.rbegin();
  for (; it != digits.rend(); ++it) {
    if (*it < top) {
      ++*it;
      break;
    }
    *it = 0;
  }
  if (it == digits.rend()) {
    throw std::domain_error(
        "representation carries to 1, which has no expansion in [0,1)");
  }
  return out;
}

}  // namespace sadic
