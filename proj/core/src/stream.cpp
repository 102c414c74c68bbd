#include "sadic/stream.hpp"

#include <stdexcept>
#include <utility>

namespace sadic {

DigitStream::DigitStream(Alphabet alphabet, CursorFactory make_cursor,
                         StreamStats declared)
    : alphabet_(alphabet),
      make_cursor_(std::move(make_cursor)),
      declared_(std::move(declared)) {
  if (!make_cursor_) {
    throw std::invalid_argument("digit stream needs a cursor factory");
  }
  if (declared_.frequencies &&
      declared_.frequencies->size() != alphabet_.radix()) {
    throw std::invalid_argument(
        "declared frequency vector size does not match alphabet radix");
  }
  if (declared_.frequencies && declared_.frequencies_absent) {
    throw std::invalid_argument(
        "stream cannot both declare frequencies and declare them absent");
  }
}

DigitWord DigitStream::prefix(std::size_t n) const {
  DigitWord out{alphabet_, {}};
  out.digits.reserve(n);
  auto c = cursor();
  for (std::size_t i = 0; i < n; ++i) out.digits.push_back(c->next());
  return out;
}

DigitStream DigitStream::with_declared(StreamStats stats) const {
  return DigitStream(alphabet_, make_cursor_, std::move(stats));
}

}  // namespace sadic
