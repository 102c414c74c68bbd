#include "sadic/rational.hpp"

#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sadic {

Rational::Rational(std::uint64_t numerator, std::uint64_t denominator)
    : num_(numerator), den_(denominator) {
  if (denominator == 0) throw std::domain_error("denominator must be positive");
  if (numerator >= denominator) {
    throw std::domain_error("rational " + std::to_string(numerator) + "/" +
                            std::to_string(denominator) +
                            " is outside [0, 1)");
  }
  const std::uint64_t g = std::gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

namespace {

class LongDivisionCursor final : public DigitCursor {
 public:
  LongDivisionCursor(std::uint64_t remainder, std::uint64_t denominator,
                     std::uint32_t radix)
      : rem_(remainder), den_(denominator), radix_(radix) {}

  digit_t next() override {
    // rem/den < 1 throughout; the product fits 128 bits for any u64 inputs.
    const auto wide = static_cast<unsigned __int128>(rem_) * radix_;
    const auto digit = static_cast<digit_t>(wide / den_);
    rem_ = static_cast<std::uint64_t>(wide % den_);
    return digit;
  }

 private:
  std::uint64_t rem_;
  std::uint64_t den_;
  std::uint32_t radix_;
};

}  // namespace

DigitStream expand_rational(Rational x, Alphabet a) {
  const std::uint64_t num = x.numerator();
  const std::uint64_t den = x.denominator();
  const std::uint32_t radix = a.radix();
  return DigitStream(a, [num, den, radix] {
    return std::make_unique<LongDivisionCursor>(num, den, radix);
  });
}

}  // namespace sadic
