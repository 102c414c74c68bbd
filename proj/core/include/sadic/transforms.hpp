#pragma once

// Digit-stream transformations and their composition algebra.
//
// A Transform is a pure map from stream definitions to stream definitions.
// The window permutations (pair swap, triple reverse, single transposition)
// preserve exact digit counts at window boundaries and form, together with
// the digit rewrites that carry an inverse, a noncommutative group under
// composition. The mean-preserving but frequency-breaking maps of interest
// (the seventh-occurrence replacement, the class canonicalizer) live here
// as well.
//
// Each transform maps declared stream metadata through its own effect on
// the limits, so pipelines keep an honest claim about what the output's
// frequencies and mean would be.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sadic/generators.hpp"
#include "sadic/stream.hpp"

namespace sadic {

/// Raised when a transform needs declared frequencies the stream does not
/// carry.
class MetadataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Transform {
 public:
  using ApplyFn = std::function<DigitStream(const DigitStream&)>;
  using InverseMaker = std::function<Transform()>;

  Transform(std::string name, ApplyFn apply, InverseMaker inverse = {},
            std::optional<std::uint32_t> required_radix = {},
            bool requires_declared_frequencies = false);

  const std::string& name() const noexcept { return name_; }
  bool invertible() const noexcept { return static_cast<bool>(inverse_); }
  bool requires_declared_frequencies() const noexcept {
    return requires_freqs_;
  }
  std::optional<std::uint32_t> required_radix() const noexcept {
    return required_radix_;
  }

  DigitStream apply(const DigitStream& in) const;
  DigitStream operator()(const DigitStream& in) const { return apply(in); }

  friend Transform compose(const Transform& outer, const Transform& inner);
  friend Transform invert_transform(const Transform& t);

 private:
  std::string name_;
  ApplyFn apply_;
  InverseMaker inverse_;
  std::optional<std::uint32_t> required_radix_;
  bool requires_freqs_;
};

/// A permutation of {0,...,w-1} applied to every consecutive window of w
/// digits.
using PermutationSchedule = std::vector<std::size_t>;

/// Passes digits through unchanged.
Transform identity();

/// General windowed permutation: output position i of each window carries
/// input digit perm[i]. perm must be a bijection of {0,...,w-1}.
Transform windowed_permutation(PermutationSchedule perm);

/// Swaps the digits of each consecutive pair. Self-inverse.
Transform pair_swap();

/// Reverses each consecutive block of three digits. Self-inverse.
Transform triple_reverse();

/// Drops the first digit. Not invertible.
Transform shift();

/// Inserts the given digit at position 1. Not invertible (many-to-one
/// together with shift). The digit is validated against the stream's
/// alphabet on application.
Transform prepend(std::uint32_t digit);

/// Swaps the digits at positions j and j+1 (1-based). Self-inverse.
Transform transpose_at(std::int64_t j);

/// Maps every digit a to s-1-a. Self-inverse. Breaks the digit mean.
Transform inverter();

/// Maps every digit a to (a + m) mod s. Inverse is mod_increment(-m).
Transform mod_increment(std::int64_t m);

/// Ternary only: enumerating the occurrences of digit 1 as k = 1, 2, ...,
/// rewrites the occurrence to 0 when k = 0 (mod 7) and to 2 when k = 1
/// (mod 7) with k > 1. Preserves the digit mean; moves the frequency
/// vector (t0, t1, t2) to (t0 + t1/7, 5 t1/7, t2 + t1/7).
Transform seven_replacement();

/// Replaces a stream carrying declared frequencies by the canonical block
/// representative of its frequency class; passes streams explicitly tagged
/// frequency-free through unchanged; throws MetadataError otherwise.
Transform be_canonicalizer(WeightKind weight);

/// Function composition: compose(g, f) applies f first, then g.
Transform compose(const Transform& outer, const Transform& inner);

/// The inverse transform, when one exists; throws std::domain_error for
/// the many-to-one maps (shift, prepend, seven_replacement,
/// be_canonicalizer).
Transform invert_transform(const Transform& t);

}  // namespace sadic
