#include "sadic/transforms.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <utility>

namespace sadic {

Transform::Transform(std::string name, ApplyFn apply, InverseMaker inverse,
                     std::optional<std::uint32_t> required_radix,
                     bool requires_declared_frequencies)
    : name_(std::move(name)),
      apply_(std::move(apply)),
      inverse_(std::move(inverse)),
      required_radix_(required_radix),
      requires_freqs_(requires_declared_frequencies) {}

DigitStream Transform::apply(const DigitStream& in) const {
  if (required_radix_ && in.alphabet().radix() != *required_radix_) {
    throw std::invalid_argument(name_ + " requires alphabet radix " +
                                std::to_string(*required_radix_) + ", got " +
                                std::to_string(in.alphabet().radix()));
  }
  return apply_(in);
}

namespace {

class WindowCursor final : public DigitCursor {
 public:
  WindowCursor(std::unique_ptr<DigitCursor> upstream, PermutationSchedule perm)
      : upstream_(std::move(upstream)), perm_(std::move(perm)),
        window_(perm_.size()), at_(perm_.size()) {}

  digit_t next() override {
    if (at_ == perm_.size()) {
      for (auto& d : window_) d = upstream_->next();
      at_ = 0;
    }
    return window_[perm_[at_++]];
  }

 private:
  std::unique_ptr<DigitCursor> upstream_;
  PermutationSchedule perm_;
  std::vector<digit_t> window_;
  std::size_t at_;
};

class ShiftCursor final : public DigitCursor {
 public:
  explicit ShiftCursor(std::unique_ptr<DigitCursor> upstream)
      : upstream_(std::move(upstream)) {
    upstream_->next();  // discard position 1
  }
  digit_t next() override { return upstream_->next(); }

 private:
  std::unique_ptr<DigitCursor> upstream_;
};

class PrependCursor final : public DigitCursor {
 public:
  PrependCursor(std::unique_ptr<DigitCursor> upstream, digit_t digit)
      : upstream_(std::move(upstream)), digit_(digit) {}

  digit_t next() override {
    if (!emitted_) {
      emitted_ = true;
      return digit_;
    }
    return upstream_->next();
  }

 private:
  std::unique_ptr<DigitCursor> upstream_;
  digit_t digit_;
  bool emitted_ = false;
};

class TransposeCursor final : public DigitCursor {
 public:
  TransposeCursor(std::unique_ptr<DigitCursor> upstream, std::int64_t j)
      : upstream_(std::move(upstream)), swap_at_(j) {}

  digit_t next() override {
    ++pos_;
    if (pos_ == swap_at_) {
      const digit_t first = upstream_->next();
      held_ = first;
      return upstream_->next();
    }
    if (pos_ == swap_at_ + 1) return held_;
    return upstream_->next();
  }

 private:
  std::unique_ptr<DigitCursor> upstream_;
  std::int64_t swap_at_;
  std::int64_t pos_ = 0;
  digit_t held_ = 0;
};

// Positionwise digit rewrite a -> map[a].
class MapCursor final : public DigitCursor {
 public:
  MapCursor(std::unique_ptr<DigitCursor> upstream, std::vector<digit_t> map)
      : upstream_(std::move(upstream)), map_(std::move(map)) {}

  digit_t next() override { return map_[upstream_->next()]; }

 private:
  std::unique_ptr<DigitCursor> upstream_;
  std::vector<digit_t> map_;
};

class SevenCursor final : public DigitCursor {
 public:
  explicit SevenCursor(std::unique_ptr<DigitCursor> upstream)
      : upstream_(std::move(upstream)) {}

  digit_t next() override {
    const digit_t d = upstream_->next();
    if (d != 1) return d;
    ++ones_seen_;
    if (ones_seen_ % 7 == 0) return 0;
    if (ones_seen_ % 7 == 1 && ones_seen_ > 1) return 2;
    return 1;
  }

 private:
  std::unique_ptr<DigitCursor> upstream_;
  std::uint64_t ones_seen_ = 0;
};

// Metadata carried through maps that change counts by at most a bounded
// amount per window: every declared limit survives untouched.
StreamStats passthrough_stats(const DigitStream& in) { return in.declared(); }

Transform make_positionwise(std::string name,
                            std::function<digit_t(digit_t, std::uint32_t)> map_digit,
                            std::function<StreamStats(const DigitStream&)> map_stats,
                            Transform::InverseMaker inverse) {
  auto apply = [map_digit = std::move(map_digit),
                map_stats = std::move(map_stats)](const DigitStream& in) {
    const std::uint32_t radix = in.alphabet().radix();
    std::vector<digit_t> table(radix);
    for (std::uint32_t a = 0; a < radix; ++a) table[a] = map_digit(static_cast<digit_t>(a), radix);
    return DigitStream(
        in.alphabet(),
        [in, table = std::move(table)] {
          return std::make_unique<MapCursor>(in.cursor(), table);
        },
        map_stats(in));
  };
  return Transform(std::move(name), std::move(apply), std::move(inverse));
}

}  // namespace

Transform identity() {
  return Transform(
      "id", [](const DigitStream& in) { return in; }, [] { return identity(); });
}

Transform windowed_permutation(PermutationSchedule perm) {
  if (perm.empty()) throw std::domain_error("permutation window must be nonempty");
  PermutationSchedule sorted = perm;
  std::ranges::sort(sorted);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) {
      throw std::domain_error("window rule must be a bijection of its window");
    }
  }

  std::string name = "perm[";
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (i) name += ' ';
    name += std::to_string(perm[i]);
  }
  name += ']';

  PermutationSchedule inverse_perm(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inverse_perm[perm[i]] = i;

  auto apply = [perm](const DigitStream& in) {
    return DigitStream(
        in.alphabet(),
        [in, perm] { return std::make_unique<WindowCursor>(in.cursor(), perm); },
        passthrough_stats(in));
  };
  return Transform(std::move(name), std::move(apply),
                   [inverse_perm = std::move(inverse_perm)] {
                     return windowed_permutation(inverse_perm);
                   });
}

Transform pair_swap() {
  Transform t = windowed_permutation({1, 0});
  return Transform("swap2", [t](const DigitStream& in) { return t.apply(in); },
                   [] { return pair_swap(); });
}

Transform triple_reverse() {
  Transform t = windowed_permutation({2, 1, 0});
  return Transform("rev3", [t](const DigitStream& in) { return t.apply(in); },
                   [] { return triple_reverse(); });
}

Transform shift() {
  return Transform("shift", [](const DigitStream& in) {
    return DigitStream(
        in.alphabet(),
        [in] { return std::make_unique<ShiftCursor>(in.cursor()); },
        passthrough_stats(in));
  });
}

Transform prepend(std::uint32_t digit) {
  return Transform(
      "prepend(" + std::to_string(digit) + ")",
      [digit](const DigitStream& in) {
        if (!in.alphabet().contains(digit)) {
          throw std::domain_error("prepend digit " + std::to_string(digit) +
                                  " outside alphabet of radix " +
                                  std::to_string(in.alphabet().radix()));
        }
        const auto d = static_cast<digit_t>(digit);
        return DigitStream(
            in.alphabet(),
            [in, d] { return std::make_unique<PrependCursor>(in.cursor(), d); },
            passthrough_stats(in));
      });
}

Transform transpose_at(std::int64_t j) {
  if (j < 1) throw std::domain_error("transposition position must be >= 1");
  return Transform(
      "transpose(" + std::to_string(j) + ")",
      [j](const DigitStream& in) {
        return DigitStream(
            in.alphabet(),
            [in, j] { return std::make_unique<TransposeCursor>(in.cursor(), j); },
            passthrough_stats(in));
      },
      [j] { return transpose_at(j); });
}

Transform inverter() {
  auto map_stats = [](const DigitStream& in) {
    StreamStats out;
    out.frequencies_absent = in.declared().frequencies_absent;
    if (in.declared().frequencies) {
      std::vector<double> reversed = in.declared().frequencies->values();
      std::ranges::reverse(reversed);
      out.frequencies = FrequencyVector(std::move(reversed));
    }
    if (in.declared().mean) {
      out.mean = (in.alphabet().radix() - 1) - *in.declared().mean;
    }
    return out;
  };
  return make_positionwise(
      "invert",
      [](digit_t a, std::uint32_t radix) {
        return static_cast<digit_t>(radix - 1 - a);
      },
      map_stats, [] { return inverter(); });
}

Transform mod_increment(std::int64_t m) {
  auto map_stats = [m](const DigitStream& in) {
    StreamStats out;
    out.frequencies_absent = in.declared().frequencies_absent;
    if (in.declared().frequencies) {
      const auto& tau = in.declared().frequencies->values();
      const auto s = static_cast<std::int64_t>(tau.size());
      std::vector<double> rotated(tau.size());
      for (std::int64_t i = 0; i < s; ++i) {
        rotated[static_cast<std::size_t>(((i + m) % s + s) % s)] = tau[i];
      }
      FrequencyVector freq(std::move(rotated));
      double mean = 0.0;
      for (std::size_t i = 0; i < freq.size(); ++i) mean += double(i) * freq[i];
      out.frequencies = std::move(freq);
      out.mean = mean;
    }
    return out;
  };
  return make_positionwise(
      "inc(" + std::to_string(m) + ")",
      [m](digit_t a, std::uint32_t radix) {
        const auto s = static_cast<std::int64_t>(radix);
        return static_cast<digit_t>(((a + m) % s + s) % s);
      },
      map_stats, [m] { return mod_increment(-m); });
}

Transform seven_replacement() {
  auto apply = [](const DigitStream& in) {
    StreamStats out;
    out.frequencies_absent = in.declared().frequencies_absent;
    out.mean = in.declared().mean;  // the two rewrite counters differ by <= 1
    if (in.declared().frequencies) {
      const auto& t = in.declared().frequencies->values();
      out.frequencies = FrequencyVector(
          {t[0] + t[1] / 7.0, 5.0 * t[1] / 7.0, t[2] + t[1] / 7.0});
    }
    return DigitStream(
        in.alphabet(),
        [in] { return std::make_unique<SevenCursor>(in.cursor()); },
        std::move(out));
  };
  return Transform("seven", std::move(apply), {}, 3);
}

Transform be_canonicalizer(WeightKind weight) {
  auto apply = [weight](const DigitStream& in) {
    if (in.declared().frequencies) {
      return canonical_be_point(*in.declared().frequencies, weight);
    }
    if (in.declared().frequencies_absent) return in;  // not in any class
    throw MetadataError(
        "canonicalization needs declared frequencies: stream carries none");
  };
  return Transform("canonical", std::move(apply), {}, 3, true);
}

Transform compose(const Transform& outer, const Transform& inner) {
  std::optional<std::uint32_t> radix = inner.required_radix_;
  if (outer.required_radix_) {
    if (radix && *radix != *outer.required_radix_) {
      throw std::invalid_argument("alphabet mismatch composing " +
                                  outer.name_ + " after " + inner.name_);
    }
    radix = outer.required_radix_;
  }

  Transform::InverseMaker inverse;
  if (outer.invertible() && inner.invertible()) {
    inverse = [outer, inner] {
      return compose(invert_transform(inner), invert_transform(outer));
    };
  }
  return Transform(
      outer.name_ + "∘" + inner.name_,
      [outer, inner](const DigitStream& in) {
        return outer.apply(inner.apply(in));
      },
      std::move(inverse), radix,
      outer.requires_freqs_ || inner.requires_freqs_);
}

Transform invert_transform(const Transform& t) {
  if (!t.inverse_) {
    throw std::domain_error("transform " + t.name_ + " has no inverse");
  }
  return t.inverse_();
}

}  // namespace sadic
