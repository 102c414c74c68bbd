#pragma once

// Exact rationals in [0,1) and their expansion into digit streams by
// integer long division. No floating point is involved anywhere here.

#include <cstdint>

#include "sadic/digits.hpp"
#include "sadic/stream.hpp"

namespace sadic {

/// A rational p/q with 0 <= p/q < 1, stored in lowest terms.
class Rational {
 public:
  Rational(std::uint64_t numerator, std::uint64_t denominator);

  std::uint64_t numerator() const noexcept { return num_; }
  std::uint64_t denominator() const noexcept { return den_; }

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::uint64_t num_;
  std::uint64_t den_;
};

/// Digit stream of x in the given alphabet, produced by exact long
/// division. Expansions of s-adic rationals terminate (period (0)); no
/// stream from here ever enters period (s-1).
DigitStream expand_rational(Rational x, Alphabet a);

}  // namespace sadic
