#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sadic/generators.hpp"
#include "sadic/stats.hpp"
#include "sadic/transforms.hpp"

using namespace sadic;

namespace {

DigitStream from_digits(std::vector<digit_t> digits) {
  // finite sample padded with zeros, for prefix-level checks
  class VectorCursor final : public DigitCursor {
   public:
    explicit VectorCursor(std::vector<digit_t> d) : digits_(std::move(d)) {}
    digit_t next() override {
      return at_ < digits_.size() ? digits_[at_++] : 0;
    }

   private:
    std::vector<digit_t> digits_;
    std::size_t at_ = 0;
  };
  return DigitStream(Alphabet::ternary(), [digits = std::move(digits)] {
    return std::make_unique<VectorCursor>(digits);
  });
}

std::vector<digit_t> apply_prefix(const Transform& t,
                                  const std::vector<digit_t>& in,
                                  std::size_t n) {
  return t(from_digits(in)).prefix(n).digits;
}

const std::size_t kPrefix = 10'000;

}  // namespace

TEST_CASE("identity and frozen catalog examples") {
  CHECK(apply_prefix(identity(), {0, 1, 2}, 3) == std::vector<digit_t>{0, 1, 2});
  CHECK(apply_prefix(pair_swap(), {0, 1, 2, 0}, 4) ==
        std::vector<digit_t>{1, 0, 0, 2});
  CHECK(apply_prefix(triple_reverse(), {0, 1, 2, 0, 1, 2}, 6) ==
        std::vector<digit_t>{2, 1, 0, 2, 1, 0});
  CHECK(apply_prefix(shift(), {1, 0, 2, 1}, 3) == std::vector<digit_t>{0, 2, 1});
  CHECK(apply_prefix(prepend(2), {0, 1}, 3) == std::vector<digit_t>{2, 0, 1});
  CHECK(apply_prefix(transpose_at(1), {0, 1, 2}, 3) ==
        std::vector<digit_t>{1, 0, 2});
  CHECK(apply_prefix(mod_increment(1), {0, 1, 2}, 3) ==
        std::vector<digit_t>{1, 2, 0});
}

TEST_CASE("involutions undo themselves on long prefixes") {
  const auto base = uniform_stream(Alphabet::ternary(), 123);
  const auto expected = base.prefix(kPrefix);
  for (const auto& t :
       {pair_swap(), triple_reverse(), transpose_at(3), inverter()}) {
    CHECK(t(t(base)).prefix(kPrefix) == expected);
  }
}

TEST_CASE("composition with identity changes nothing") {
  const auto base = uniform_stream(Alphabet::ternary(), 5);
  const auto t = compose(pair_swap(), identity());
  CHECK(t(base).prefix(kPrefix) == pair_swap()(base).prefix(kPrefix));
  const auto t2 = compose(identity(), pair_swap());
  CHECK(t2(base).prefix(kPrefix) == pair_swap()(base).prefix(kPrefix));
}

TEST_CASE("shift then prepend is the identity") {
  const auto base = uniform_stream(Alphabet::ternary(), 17);
  for (std::uint32_t d = 0; d < 3; ++d) {
    const auto t = compose(shift(), prepend(d));
    CHECK(t(base).prefix(kPrefix) == base.prefix(kPrefix));
  }
}

TEST_CASE("window permutations keep counts at window multiples") {
  const auto base = uniform_stream(Alphabet::ternary(), 29);
  const std::vector<std::int64_t> even{2, 4, 20, 200, 2'000, 10'000};
  const auto before = run_stats(base, even);
  const auto after = run_stats(pair_swap()(base), even);
  for (std::size_t i = 0; i < even.size(); ++i) {
    REQUIRE(before.rows()[i].counts == after.rows()[i].counts);
  }

  const std::vector<std::int64_t> triples{3, 9, 300, 3'000, 9'999};
  const auto before3 = run_stats(base, triples);
  const auto after3 = run_stats(triple_reverse()(base), triples);
  for (std::size_t i = 0; i < triples.size(); ++i) {
    REQUIRE(before3.rows()[i].counts == after3.rows()[i].counts);
  }
}

TEST_CASE("windowed permutation validates and generalizes") {
  CHECK_THROWS_AS(windowed_permutation({}), std::domain_error);
  CHECK_THROWS_AS(windowed_permutation({0, 0}), std::domain_error);
  CHECK_THROWS_AS(windowed_permutation({1, 2}), std::domain_error);

  // rotate each window of 4 left by one
  const auto rot = windowed_permutation({1, 2, 3, 0});
  CHECK(apply_prefix(rot, {0, 1, 2, 0, 1, 1, 2, 2}, 8) ==
        std::vector<digit_t>{1, 2, 0, 0, 1, 2, 2, 1});
  const auto base = uniform_stream(Alphabet::ternary(), 3);
  CHECK(invert_transform(rot)(rot(base)).prefix(kPrefix) == base.prefix(kPrefix));
}

TEST_CASE("transposition keeps the prefix multiset") {
  const std::vector<digit_t> in{2, 0, 1, 1, 0, 2, 2};
  for (std::int64_t j = 1; j <= 5; ++j) {
    auto out = apply_prefix(transpose_at(j), in, 7);
    auto sorted_in = in;
    std::sort(sorted_in.begin(), sorted_in.end());
    std::sort(out.begin(), out.end());
    CHECK(out == sorted_in);
  }
  CHECK_THROWS_AS(transpose_at(0), std::domain_error);
  CHECK_THROWS_AS(transpose_at(-2), std::domain_error);
}

TEST_CASE("inverter flips the zero expansion to twos") {
  const auto out = inverter()(constant_stream(Alphabet::ternary(), 0));
  CHECK(out.prefix(5).digits == std::vector<digit_t>(5, 2));
  const auto trace = run_stats(out, {10, 100});
  CHECK(trace.last().r() == 2.0);

  // declared metadata moves with the digits
  REQUIRE(out.declared().frequencies.has_value());
  CHECK((*out.declared().frequencies)[2] == 1.0);
  CHECK(out.declared().mean == 2.0);

  // and in base 10 the mean maps to s-1-mean
  const auto dec = inverter()(constant_stream(Alphabet(10), 3));
  CHECK(dec.prefix(3).digits == std::vector<digit_t>(3, 6));
  CHECK(dec.declared().mean == 6.0);
}

TEST_CASE("mod increment rotates digits and the declared frequencies") {
  const auto ones = mod_increment(1)(constant_stream(Alphabet::ternary(), 0));
  CHECK(ones.prefix(4).digits == std::vector<digit_t>(4, 1));
  CHECK((*ones.declared().frequencies)[0] == 0.0);
  CHECK((*ones.declared().frequencies)[1] == 1.0);

  const auto base = uniform_stream(Alphabet::ternary(), 7);
  CHECK(mod_increment(0)(base).prefix(kPrefix) == base.prefix(kPrefix));
  const auto thrice = compose(
      mod_increment(1), compose(mod_increment(1), mod_increment(1)));
  CHECK(thrice(base).prefix(kPrefix) == base.prefix(kPrefix));

  const auto undo = invert_transform(mod_increment(1));
  CHECK(undo(mod_increment(1)(base)).prefix(kPrefix) == base.prefix(kPrefix));
  // for radix 3, the inverse acts like adding 2
  CHECK(undo(base).prefix(kPrefix) == mod_increment(2)(base).prefix(kPrefix));
}

TEST_CASE("seventh-occurrence rewrite on the all-ones stream") {
  const auto ones = constant_stream(Alphabet::ternary(), 1);
  const auto out = seven_replacement()(ones);
  CHECK(out.prefix(16).digits ==
        std::vector<digit_t>{1, 1, 1, 1, 1, 1, 0, 2, 1, 1, 1, 1, 1, 0, 2, 1});

  // replaced-by-0 and replaced-by-2 counts among the first m occurrences
  auto cursor = out.cursor();
  std::int64_t zeros = 0, twos = 0;
  for (std::int64_t m = 1; m <= 10'000; ++m) {
    const digit_t d = cursor->next();
    if (d == 0) ++zeros;
    if (d == 2) ++twos;
    REQUIRE(zeros == m / 7);
    REQUIRE(twos == (m - 1) / 7);
  }
}

TEST_CASE("seventh-occurrence rewrite only touches ones") {
  const auto in = from_digits({0, 2, 1, 1, 0, 1, 1, 1, 1, 1, 2, 1, 0});
  // occurrences of 1 at positions 3,4,6,7,8,9,10,12 -> k=7 at position 10,
  // k=8 at position 12
  CHECK(seven_replacement()(in).prefix(13).digits ==
        std::vector<digit_t>{0, 2, 1, 1, 0, 1, 1, 1, 1, 0, 2, 2, 0});
  CHECK_THROWS_AS(seven_replacement()(uniform_stream(Alphabet(4), 1)),
                  std::invalid_argument);
}

TEST_CASE("seventh-occurrence frequencies on uniform input") {
  const auto out = seven_replacement()(uniform_stream(Alphabet::ternary(), 42));
  const std::int64_t n = 1'000'000;
  const auto trace = run_stats(out, {n});
  const auto& row = trace.last();
  CHECK(std::abs(row.v(0) - 8.0 / 21) < 0.01);
  CHECK(std::abs(row.v(1) - 5.0 / 21) < 0.01);
  CHECK(std::abs(row.v(2) - 8.0 / 21) < 0.01);

  // the mean is preserved along the way
  const auto in_trace =
      run_stats(uniform_stream(Alphabet::ternary(), 42), {n});
  CHECK(std::abs(row.r() - in_trace.last().r()) < 0.01);

  // declared frequencies follow the 1/7 transfer
  REQUIRE(out.declared().frequencies.has_value());
  CHECK((*out.declared().frequencies)[0] ==
        doctest::Approx(1.0 / 3 + 1.0 / 21));
  CHECK((*out.declared().frequencies)[1] == doctest::Approx(5.0 / 21));
  CHECK(out.declared().mean == doctest::Approx(1.0));
}

TEST_CASE("frequency preservation of shift and prepend, empirically") {
  const auto base = iid_stream(FrequencyVector({0.2, 0.3, 0.5}), 21);
  const std::int64_t n = 1'000'000;
  const auto base_row = run_stats(base, {n}).last();
  for (const auto& t : {shift(), prepend(2)}) {
    const auto row = run_stats(t(base), {n}).last();
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::abs(row.v(i) - base_row.v(i)) < 0.005);
    }
  }
}

TEST_CASE("canonicalizer replaces declared-frequency streams") {
  const auto zeros = be_canonicalizer(WeightKind::linear())(
      iid_stream(FrequencyVector({1.0, 0.0, 0.0}), 3));
  CHECK(zeros.prefix(20).digits == std::vector<digit_t>(20, 0));

  // two different streams with the same declared class map to one point
  const auto a = be_canonicalizer(WeightKind::linear())(
      iid_stream(FrequencyVector({0.2, 0.3, 0.5}), 1));
  const auto b = be_canonicalizer(WeightKind::linear())(
      iid_stream(FrequencyVector({0.2, 0.3, 0.5}), 999));
  CHECK(a.prefix(kPrefix) == b.prefix(kPrefix));

  // uniform class: output frequencies near 1/3
  const auto c = be_canonicalizer(WeightKind::linear())(
      uniform_stream(Alphabet::ternary(), 8));
  const auto row = run_stats(c, {1'000'000}).last();
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(row.v(i) - 1.0 / 3) < 0.02);
  }
}

TEST_CASE("canonicalizer needs declared frequencies") {
  const auto untagged = DigitStream(Alphabet::ternary(), [] {
    return constant_stream(Alphabet::ternary(), 0).cursor();
  });
  CHECK_THROWS_AS(be_canonicalizer(WeightKind::linear())(untagged),
                  MetadataError);

  // explicitly frequency-free streams pass through unchanged
  const auto osc = oscillating_stream(1.0);
  const auto out = be_canonicalizer(WeightKind::linear())(osc);
  CHECK(out.prefix(100) == osc.prefix(100));
}

TEST_CASE("composition order matters") {
  const auto witness =
      periodic_stream(PeriodicWord{Alphabet::ternary(), {}, {0, 1, 2}});
  const auto rs = compose(triple_reverse(), pair_swap());
  const auto sr = compose(pair_swap(), triple_reverse());
  CHECK(rs(witness).prefix(12) != sr(witness).prefix(12));

  // against hand-permuted input on a distinct-pattern prefix
  const auto base = uniform_stream(Alphabet::ternary(), 31);
  const auto in = base.prefix(12).digits;
  const auto out = rs(base).prefix(3).digits;
  CHECK(out == std::vector<digit_t>{in[3], in[0], in[1]});
  const auto out2 = sr(base).prefix(3).digits;
  CHECK(out2 == std::vector<digit_t>{in[1], in[2], in[5]});
}

TEST_CASE("group laws on sampled prefixes") {
  const auto base = uniform_stream(Alphabet::ternary(), 97);
  const auto expected = base.prefix(kPrefix);
  const std::vector<Transform> members{identity(), pair_swap(),
                                       triple_reverse(), transpose_at(2),
                                       inverter(), mod_increment(1),
                                       mod_increment(2)};

  for (const auto& t : members) {
    REQUIRE(t.invertible());
    CHECK(invert_transform(t)(t(base)).prefix(kPrefix) == expected);
    CHECK(t(invert_transform(t)(base)).prefix(kPrefix) == expected);
  }

  std::mt19937 rng(12);
  std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
  for (int iter = 0; iter < 25; ++iter) {
    const auto& a = members[pick(rng)];
    const auto& b = members[pick(rng)];
    const auto& c = members[pick(rng)];
    const auto left = compose(compose(a, b), c);
    const auto right = compose(a, compose(b, c));
    REQUIRE(left(base).prefix(1'000) == right(base).prefix(1'000));
    // closure: the composite of invertibles is invertible and undoes itself
    const auto ab = compose(a, b);
    REQUIRE(ab.invertible());
    REQUIRE(invert_transform(ab)(ab(base)).prefix(1'000) == base.prefix(1'000));
  }
}

TEST_CASE("non-invertible transforms refuse inversion") {
  for (const auto& t : {shift(), prepend(1), seven_replacement(),
                        be_canonicalizer(WeightKind::linear())}) {
    CHECK_FALSE(t.invertible());
    CHECK_THROWS_AS(invert_transform(t), std::domain_error);
  }
}

TEST_CASE("composition propagates radix requirements") {
  const auto t = compose(seven_replacement(), pair_swap());
  CHECK_THROWS_AS(t(uniform_stream(Alphabet(5), 1)), std::invalid_argument);
  CHECK_NOTHROW(t(uniform_stream(Alphabet::ternary(), 1)));
}

TEST_CASE("prepend validates its digit against the stream alphabet") {
  CHECK_THROWS_AS(prepend(5)(uniform_stream(Alphabet::ternary(), 1)),
                  std::domain_error);
  CHECK_NOTHROW(prepend(5)(uniform_stream(Alphabet(10), 1)));
}

TEST_CASE("streams pinned to the mean extremes pin the frequencies") {
  // r = 0 forces v0 = 1; r = 2 forces v2 = 1 (here exactly)
  const auto zeros = run_stats(iid_stream(FrequencyVector({1.0, 0.0, 0.0}), 1),
                               geometric_checkpoints(100'000));
  for (const auto& row : zeros.rows()) {
    CHECK(row.r() == 0.0);
    CHECK(row.v(0) == 1.0);
  }
  const auto twos = run_stats(iid_stream(FrequencyVector({0.0, 0.0, 1.0}), 1),
                              geometric_checkpoints(100'000));
  for (const auto& row : twos.rows()) {
    CHECK(row.r() == 2.0);
    CHECK(row.v(2) == 1.0);
  }

  // and for mixtures that converge to an extreme: digits settle down after
  // a noisy prefix
  class SettlingCursor final : public DigitCursor {
   public:
    explicit SettlingCursor(digit_t settle) : settle_(settle) {}
    digit_t next() override {
      ++n_;
      return n_ <= 300 ? static_cast<digit_t>(n_ % 3) : settle_;
    }

   private:
    digit_t settle_;
    std::int64_t n_ = 0;
  };
  const DigitStream to_two(Alphabet::ternary(), [] {
    return std::make_unique<SettlingCursor>(2);
  });
  const auto two_trace = run_stats(to_two, geometric_checkpoints(1'000'000));
  CHECK(std::abs(two_trace.last().r() - 2.0) < 0.001);
  CHECK(std::abs(two_trace.last().v(2) - 1.0) < 0.001);

  const DigitStream to_zero(Alphabet::ternary(), [] {
    return std::make_unique<SettlingCursor>(0);
  });
  const auto zero_trace = run_stats(to_zero, geometric_checkpoints(1'000'000));
  CHECK(std::abs(zero_trace.last().r() - 0.0) < 0.001);
  CHECK(std::abs(zero_trace.last().v(0) - 1.0) < 0.001);
}

TEST_CASE("mean-preserving transforms keep the extreme classes put") {
  // any r-preserving transform must send the class (0,0,1) into itself
  const auto base = iid_stream(FrequencyVector({0.0, 0.0, 1.0}), 5);
  const std::int64_t n = 1'000'000;
  const std::vector<Transform> preserving{
      identity(),       pair_swap(),       triple_reverse(),
      transpose_at(4),  shift(),           prepend(2),
      seven_replacement(), be_canonicalizer(WeightKind::linear())};
  for (const auto& t : preserving) {
    const auto row = run_stats(t(base), {n}).last();
    CHECK(row.v(2) > 0.99);
  }
}
