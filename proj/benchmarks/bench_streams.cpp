#include <benchmark/benchmark.h>

#include "sadic/sadic.hpp"

using namespace sadic;

namespace {

void consume(const DigitStream& stream, benchmark::State& state) {
  std::int64_t digits = 0;
  for (auto _ : state) {
    auto cursor = stream.cursor();
    std::uint64_t sum = 0;
    for (int i = 0; i < 1'000'000; ++i) sum += cursor->next();
    benchmark::DoNotOptimize(sum);
    digits += 1'000'000;
  }
  state.SetItemsProcessed(digits);
}

void BM_UniformDigits(benchmark::State& state) {
  consume(uniform_stream(Alphabet::ternary(), 42), state);
}
BENCHMARK(BM_UniformDigits);

void BM_IidDigits(benchmark::State& state) {
  consume(iid_stream(FrequencyVector({0.2, 0.3, 0.5}), 42), state);
}
BENCHMARK(BM_IidDigits);

void BM_OscillatingDigits(benchmark::State& state) {
  consume(oscillating_stream(1.0), state);
}
BENCHMARK(BM_OscillatingDigits);

void BM_CanonicalPointDigits(benchmark::State& state) {
  consume(canonical_be_point(FrequencyVector({0.2, 0.3, 0.5}),
                             WeightKind::linear()),
          state);
}
BENCHMARK(BM_CanonicalPointDigits);

void BM_SevenReplacement(benchmark::State& state) {
  consume(seven_replacement()(uniform_stream(Alphabet::ternary(), 42)), state);
}
BENCHMARK(BM_SevenReplacement);

void BM_RunStats(benchmark::State& state) {
  const auto stream = uniform_stream(Alphabet::ternary(), 42);
  const auto checkpoints = geometric_checkpoints(1'000'000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_stats(stream, checkpoints));
  }
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_RunStats);

void BM_ParsePipeline(benchmark::State& state) {
  const std::string text = "iid((0.2, 0.3, 0.5), 7) | swap2 | seven | inc(-1)";
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse(text));
  }
}
BENCHMARK(BM_ParsePipeline);

void BM_ExpandRational(benchmark::State& state) {
  const auto stream = expand_rational(Rational(355, 452), Alphabet::ternary());
  consume(stream, state);
}
BENCHMARK(BM_ExpandRational);

}  // namespace

BENCHMARK_MAIN();
