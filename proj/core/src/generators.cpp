#include "sadic/generators.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace sadic {

namespace {

class ConstantCursor final : public DigitCursor {
 public:
  explicit ConstantCursor(digit_t d) : d_(d) {}
  digit_t next() override { return d_; }

 private:
  digit_t d_;
};

class PeriodicCursor final : public DigitCursor {
 public:
  explicit PeriodicCursor(PeriodicWord w) : word_(std::move(w)) {}
  digit_t next() override { return word_.digit_at(++pos_); }

 private:
  PeriodicWord word_;
  std::uint64_t pos_ = 0;
};

// Uniform digit by rejection from the full 64-bit range: accept values in
// [2^64 mod s, 2^64), a span whose length is a multiple of s.
class UniformCursor final : public DigitCursor {
 public:
  UniformCursor(std::uint64_t seed, std::uint32_t radix)
      : engine_(seed),
        radix_(radix),
        reject_below_(static_cast<std::uint64_t>(-static_cast<std::uint64_t>(radix)) %
                      radix) {}

  digit_t next() override {
    std::uint64_t v;
    do {
      v = engine_();
    } while (v < reject_below_);
    return static_cast<digit_t>(v % radix_);
  }

 private:
  std::mt19937_64 engine_;
  std::uint32_t radix_;
  std::uint64_t reject_below_;
};

// Inversion sampling on the cumulative frequency vector. The uniform
// variate is the standard 53-bit mantissa draw, so the digit sequence is a
// pure function of the seed.
class IidCursor final : public DigitCursor {
 public:
  IidCursor(std::uint64_t seed, std::vector<double> cumulative,
            digit_t last_supported)
      : engine_(seed),
        cumulative_(std::move(cumulative)),
        last_supported_(last_supported) {}

  digit_t next() override {
    const double u =
        static_cast<double>(engine_() >> 11) * 0x1.0p-53;  // [0,1)
    for (std::size_t i = 0; i + 1 < cumulative_.size(); ++i) {
      if (u < cumulative_[i]) return static_cast<digit_t>(i);
    }
    return last_supported_;
  }

 private:
  std::mt19937_64 engine_;
  std::vector<double> cumulative_;
  digit_t last_supported_;
};

// Emits block runs produced by a per-block schedule: block j yields
// lengths[i] copies of digit i in digit order. Empty blocks are skipped.
class BlockCursor final : public DigitCursor {
 public:
  using Schedule = std::function<std::array<std::uint64_t, 3>(std::uint64_t)>;

  explicit BlockCursor(Schedule schedule) : schedule_(std::move(schedule)) {}

  digit_t next() override {
    while (remaining_ == 0) advance_run();
    --remaining_;
    return digit_;
  }

 private:
  void advance_run() {
    for (;;) {
      if (digit_ < 2 && lengths_valid_) {
        ++digit_;
      } else {
        ++block_;
        lengths_ = schedule_(block_);
        lengths_valid_ = true;
        digit_ = 0;
      }
      if (lengths_[digit_] > 0) {
        remaining_ = lengths_[digit_];
        return;
      }
    }
  }

  Schedule schedule_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 3> lengths_{};
  bool lengths_valid_ = false;
  digit_t digit_ = 2;
  std::uint64_t remaining_ = 0;
};

std::array<std::uint64_t, 3> be_block_lengths(const std::vector<double>& tau,
                                              std::uint64_t weight) {
  std::array<std::uint64_t, 3> lengths{};
  for (std::size_t i = 0; i < 3; ++i) {
    lengths[i] =
        static_cast<std::uint64_t>(std::floor(tau[i] * static_cast<double>(weight)));
  }
  return lengths;
}

// Frequency triples of the oscillating construction, keyed by the
// factorial switch.
constexpr std::array<std::array<double, 3>, 2> kOscillationTriples{
    {{0.4, 0.2, 0.4}, {0.3, 0.4, 0.3}}};

std::array<std::uint64_t, 3> oscillation_block_lengths(std::uint64_t block,
                                                       double p) {
  const auto& tau = kOscillationTriples[beta_switch(static_cast<std::int64_t>(block))];
  const double w = std::pow(static_cast<double>(block), 1.0 + p);
  if (!(w < 0x1p62)) {
    throw std::overflow_error("block length exceeds 64-bit range");
  }
  std::array<std::uint64_t, 3> lengths{};
  for (std::size_t i = 0; i < 3; ++i) {
    lengths[i] = static_cast<std::uint64_t>(std::floor(tau[i] * w));
  }
  return lengths;
}

double frequency_mean(const FrequencyVector& tau) {
  double m = 0.0;
  for (std::size_t i = 0; i < tau.size(); ++i) m += static_cast<double>(i) * tau[i];
  return m;
}

// Cumulative factorial sums 1!, 1!+2!, ..., up to the largest partial sum
// that fits in 64 bits (through 20!).
const std::vector<std::uint64_t>& factorial_cumsums() {
  static const std::vector<std::uint64_t> sums = [] {
    std::vector<std::uint64_t> out;
    std::uint64_t factorial = 1;
    std::uint64_t cum = 0;
    for (std::uint64_t m = 1; m <= 20; ++m) {
      factorial *= m;
      cum += factorial;
      out.push_back(cum);
    }
    return out;
  }();
  return sums;
}

}  // namespace

DigitStream constant_stream(Alphabet a, std::uint32_t digit) {
  if (!a.contains(digit)) {
    throw std::domain_error("digit " + std::to_string(digit) +
                            " outside alphabet of radix " +
                            std::to_string(a.radix()));
  }
  const auto d = static_cast<digit_t>(digit);
  StreamStats stats;
  stats.frequencies = FrequencyVector::degenerate(a.radix(), digit);
  stats.mean = static_cast<double>(digit);
  return DigitStream(
      a, [d] { return std::make_unique<ConstantCursor>(d); }, std::move(stats));
}

DigitStream periodic_stream(PeriodicWord w) {
  validate_word(w);
  const Alphabet a = w.alphabet;
  return DigitStream(a, [w = std::move(w)] {
    return std::make_unique<PeriodicCursor>(w);
  });
}

DigitStream uniform_stream(Alphabet a, std::uint64_t seed) {
  StreamStats stats;
  stats.frequencies = FrequencyVector::uniform(a.radix());
  stats.mean = (a.radix() - 1) / 2.0;
  const std::uint32_t radix = a.radix();
  return DigitStream(
      a,
      [seed, radix] { return std::make_unique<UniformCursor>(seed, radix); },
      std::move(stats));
}

DigitStream iid_stream(FrequencyVector tau, std::uint64_t seed) {
  if (tau.size() > kMaxRadix) {
    throw std::domain_error("frequency vector larger than maximum radix");
  }
  const Alphabet a(static_cast<std::uint32_t>(tau.size()));

  std::vector<double> cumulative(tau.size());
  double cum = 0.0;
  digit_t last_supported = 0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    cum += tau[i];
    cumulative[i] = cum;
    if (tau[i] > 0.0) last_supported = static_cast<digit_t>(i);
  }

  StreamStats stats;
  stats.mean = frequency_mean(tau);
  stats.frequencies = std::move(tau);
  return DigitStream(
      a,
      [seed, cumulative = std::move(cumulative), last_supported] {
        return std::make_unique<IidCursor>(seed, cumulative, last_supported);
      },
      std::move(stats));
}

WeightKind WeightKind::power(double p) {
  if (!(p > 0.0)) throw std::domain_error("power weight needs p > 0");
  return WeightKind(p);
}

std::uint64_t WeightKind::weight(std::uint64_t block) const {
  if (block == 0) throw std::domain_error("blocks are 1-based");
  if (is_linear()) return block;
  const double w = std::ceil(std::pow(static_cast<double>(block), 1.0 + p_));
  if (!(w < 0x1p62)) throw std::overflow_error("block weight exceeds 64-bit range");
  return static_cast<std::uint64_t>(w);
}

DigitStream canonical_be_point(FrequencyVector tau, WeightKind weight) {
  if (tau.size() != 3) {
    throw std::domain_error("canonical class point is defined for radix 3");
  }
  StreamStats stats;
  stats.mean = frequency_mean(tau);
  stats.frequencies = tau;
  auto values = tau.values();
  return DigitStream(
      Alphabet::ternary(),
      [values = std::move(values), weight] {
        return std::make_unique<BlockCursor>([values, weight](std::uint64_t j) {
          return be_block_lengths(values, weight.weight(j));
        });
      },
      std::move(stats));
}

digit_t beta_switch(std::int64_t n) {
  if (n < 1) throw std::domain_error("factorial block positions are 1-based");
  const auto& sums = factorial_cumsums();
  const auto target = static_cast<std::uint64_t>(n);
  for (std::size_t m = 0; m < sums.size(); ++m) {
    if (target <= sums[m]) return (m % 2 == 0) ? 0 : 1;  // block m+1
  }
  throw std::overflow_error("factorial block position exceeds 64-bit range");
}

DigitStream beta_stream() {
  StreamStats stats;
  stats.frequencies_absent = true;
  return DigitStream(
      Alphabet::ternary(),
      [] {
        return std::make_unique<BlockCursor>([](std::uint64_t block) {
          std::uint64_t factorial = 1;
          for (std::uint64_t m = 2; m <= block; ++m) {
            if (factorial > std::numeric_limits<std::uint64_t>::max() / m) {
              throw std::overflow_error(
                  "factorial block length exceeds 64-bit range");
            }
            factorial *= m;
          }
          std::array<std::uint64_t, 3> lengths{};
          lengths[block % 2 == 1 ? 0 : 1] = factorial;
          return lengths;
        });
      },
      std::move(stats));
}

DigitStream oscillating_stream(double p) {
  if (!(p > 0.0)) throw std::domain_error("oscillating stream needs p > 0");
  StreamStats stats;
  stats.frequencies_absent = true;
  stats.mean = 1.0;
  return DigitStream(
      Alphabet::ternary(),
      [p] {
        return std::make_unique<BlockCursor>(
            [p](std::uint64_t j) { return oscillation_block_lengths(j, p); });
      },
      std::move(stats));
}

CheckpointPair oscillation_checkpoints(double p, int n_max) {
  if (!(p > 0.0)) throw std::domain_error("oscillation checkpoints need p > 0");
  if (n_max < 1) throw std::domain_error("n_max must be >= 1");
  const auto& sums = factorial_cumsums();
  if (static_cast<std::size_t>(2 * n_max) > sums.size()) {
    throw std::overflow_error("factorial block count exceeds 64-bit range");
  }

  CheckpointPair out;
  std::uint64_t position = 0;
  std::uint64_t block = 0;
  auto advance_to = [&](std::uint64_t target_block) {
    while (block < target_block) {
      ++block;
      for (std::uint64_t len : oscillation_block_lengths(block, p)) {
        if (position >
            static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) -
                len) {
          throw std::overflow_error("checkpoint position exceeds 64-bit range");
        }
        position += len;
      }
    }
    return static_cast<std::int64_t>(position);
  };

  for (int n = 1; n <= n_max; ++n) {
    out.l.push_back(advance_to(sums[2 * n - 2]));       // k_n blocks
    out.l_star.push_back(advance_to(sums[2 * n - 1]));  // k*_n blocks
  }
  return out;
}

}  // namespace sadic
