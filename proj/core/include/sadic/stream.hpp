#pragma once

// Lazy, unbounded digit streams.
//
// A DigitStream is an immutable *definition*: alphabet, declared limit
// metadata, and a factory that opens a fresh cursor over the digit
// sequence. Cursors are single-consumer; replay means opening another
// cursor, never buffering. Two cursors over the same definition always
// yield the same digits, so definitions may be shared across threads while
// each live cursor stays on one thread.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "sadic/digits.hpp"
#include "sadic/frequency.hpp"

namespace sadic {

/// A live read position in a digit stream. Digit sources are infinite:
/// next() always yields.
class DigitCursor {
 public:
  virtual ~DigitCursor() = default;
  virtual digit_t next() = 0;
};

/// Declared statistics of a stream definition. These are claims about the
/// limits of the digit statistics, carried as metadata; they are never
/// estimated from finitely many digits. `frequencies_absent` marks streams
/// constructed so that the frequency limits provably do not exist.
struct StreamStats {
  std::optional<FrequencyVector> frequencies;
  bool frequencies_absent = false;
  std::optional<double> mean;
};

class DigitStream {
 public:
  using CursorFactory = std::function<std::unique_ptr<DigitCursor>()>;

  DigitStream(Alphabet alphabet, CursorFactory make_cursor,
              StreamStats declared = {});

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const StreamStats& declared() const noexcept { return declared_; }

  /// Opens a fresh cursor at position 1.
  std::unique_ptr<DigitCursor> cursor() const { return make_cursor_(); }

  /// First n digits, read from a fresh cursor.
  DigitWord prefix(std::size_t n) const;

  /// Same digits, different declared metadata.
  DigitStream with_declared(StreamStats stats) const;

 private:
  Alphabet alphabet_;
  CursorFactory make_cursor_;
  StreamStats declared_;
};

}  // namespace sadic
