#pragma once

// Constructive digit-stream sources: pseudorandom surrogates for normal
// numbers, i.i.d. streams with prescribed digit frequencies, the canonical
// block representative of a Besicovitch-Eggleston class, and the
// factorial-switch construction whose digit frequencies oscillate between
// two limits while the digit mean converges.
//
// All sources are deterministic definitions: the pseudorandom ones are
// driven by std::mt19937_64 (fully specified by the standard) plus
// explicit rejection/inversion sampling, so traces are bit-reproducible
// across platforms for a fixed seed.

#include <cstdint>
#include <vector>

#include "sadic/digits.hpp"
#include "sadic/frequency.hpp"
#include "sadic/stream.hpp"

namespace sadic {

/// Constant digit: the expansion d, d, d, ...
DigitStream constant_stream(Alphabet a, std::uint32_t digit);

/// Stream of an eventually periodic representation.
DigitStream periodic_stream(PeriodicWord w);

/// I.i.d. uniform digits over the alphabet. Declares frequencies
/// (1/s, ..., 1/s) and mean (s-1)/2.
DigitStream uniform_stream(Alphabet a, std::uint64_t seed);

/// I.i.d. digits with P(digit = i) = tau_i. Declares frequencies tau.
DigitStream iid_stream(FrequencyVector tau, std::uint64_t seed);

/// Block weight for the canonical class point: either w(j) = j or
/// w(j) = ceil(j^(1+p)) with p > 0.
class WeightKind {
 public:
  static WeightKind linear() { return WeightKind(0.0); }
  static WeightKind power(double p);

  bool is_linear() const noexcept { return p_ == 0.0; }
  double exponent() const noexcept { return p_; }

  /// Integer weight of block j (j >= 1).
  std::uint64_t weight(std::uint64_t block) const;

 private:
  explicit WeightKind(double p) : p_(p) {}
  double p_;  // 0 encodes linear
};

/// The canonical representative of the ternary class with frequencies tau:
/// block j contributes floor(tau_i * w(j)) copies of digit i, in digit
/// order, for j = 1, 2, ... Declares frequencies tau. Requires a ternary
/// frequency vector.
DigitStream canonical_be_point(FrequencyVector tau, WeightKind weight);

/// n-th digit (n >= 1) of the factorial block pattern: runs of 0s and 1s of
/// lengths 1!, 2!, 3!, ..., starting with 0s. Evaluated from cumulative
/// factorial sums, no materialization. Throws std::overflow_error past the
/// 64-bit factorial range.
digit_t beta_switch(std::int64_t n);

/// The factorial block pattern itself as a ternary stream (digits 0 and 1).
/// Neither its digit frequencies nor its digit mean converge.
DigitStream beta_stream();

/// The oscillating-frequency construction: block j uses the frequency
/// triple (0.4, 0.2, 0.4) when beta_switch(j) = 0 and (0.3, 0.4, 0.3) when
/// beta_switch(j) = 1, with run lengths floor(tau_i * j^(1+p)). The digit
/// mean converges to 1 but no digit frequency exists; the stream declares
/// mean 1 and frequencies absent. Requires p > 0.
DigitStream oscillating_stream(double p);

/// Positions at which the oscillating construction completes its block
/// checkpoints: l[n-1] is the digit position after k_n = 1!+2!+...+(2n-1)!
/// blocks and l_star[n-1] the position after k*_n = 1!+...+(2n)! blocks,
/// for n = 1..n_max. Along l the frequency of digit 0 tends to 0.4, along
/// l_star to 0.3. Throws std::overflow_error if a position exceeds the
/// 64-bit range. Note l[0] = 0 for every p: block 1 is empty.
struct CheckpointPair {
  std::vector<std::int64_t> l;
  std::vector<std::int64_t> l_star;
};
CheckpointPair oscillation_checkpoints(double p, int n_max);

}  // namespace sadic
