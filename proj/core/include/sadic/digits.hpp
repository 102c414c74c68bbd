#pragma once

// Alphabets, digits, and finite digit words for positional (s-adic)
// expansions, plus the canonical rewrite for eventually periodic
// representations.
//
// A number in [0,1) is represented by the digit sequence of
// x = sum_k a_k / s^k with a_k in {0,...,s-1}. Numbers of the form p/s^k
// admit two such sequences, one ending in period (0) and one in period
// (s-1); the terminating form with period (0) is the canonical one and is
// the only form this library ever emits.

#include <cstdint>
#include <vector>

namespace sadic {

/// Digit storage type. Radixes are capped so a digit always fits one byte;
/// counting is done in 64-bit integers elsewhere.
using digit_t = std::uint8_t;

inline constexpr std::uint32_t kMinRadix = 2;
inline constexpr std::uint32_t kMaxRadix = 256;

/// The digit alphabet {0,...,s-1} of a radix-s expansion.
class Alphabet {
 public:
  explicit Alphabet(std::uint32_t radix);

  std::uint32_t radix() const noexcept { return radix_; }
  digit_t max_digit() const noexcept {
    return static_cast<digit_t>(radix_ - 1);
  }
  bool contains(std::uint32_t value) const noexcept { return value < radix_; }

  static Alphabet ternary() { return Alphabet{3}; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::uint32_t radix_;
};

/// A finite digit sequence over a fixed alphabet.
struct DigitWord {
  Alphabet alphabet;
  std::vector<digit_t> digits;

  friend bool operator==(const DigitWord&, const DigitWord&) = default;
};

/// An eventually periodic representation: preperiod digits followed by an
/// infinitely repeated nonempty period.
struct PeriodicWord {
  Alphabet alphabet;
  std::vector<digit_t> preperiod;
  std::vector<digit_t> period;

  /// Digit at 1-based position k of the infinite expansion.
  digit_t digit_at(std::uint64_t k) const;

  friend bool operator==(const PeriodicWord&, const PeriodicWord&) = default;
};

/// Throws std::domain_error if any digit is outside the alphabet.
void validate_digits(const Alphabet& a, const std::vector<digit_t>& digits);
void validate_word(const DigitWord& w);
void validate_word(const PeriodicWord& w);

/// Rewrites a period-(s-1) representation into the equivalent canonical
/// period-(0) form; any other representation is returned unchanged.
/// Throws std::domain_error when the rewrite would carry past the first
/// digit (the represented value would be 1, which is outside [0,1)).
PeriodicWord canonicalize(const PeriodicWord& w);

}  // namespace sadic
