#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <random>

#include "sadic/generators.hpp"
#include "sadic/rational.hpp"
#include "sadic/transforms.hpp"
#include "sadic/stats.hpp"

using namespace sadic;

TEST_CASE("run_stats matches a naive recount of the prefix") {
  std::mt19937_64 rng(555);
  for (int iter = 0; iter < 10; ++iter) {
    const auto stream = uniform_stream(Alphabet::ternary(), rng());
    std::vector<std::int64_t> checkpoints{1, 7, 100, 1234, 50'000, 100'000};
    const auto trace = run_stats(stream, checkpoints);

    const auto prefix = stream.prefix(100'000);
    for (const auto& row : trace.rows()) {
      std::vector<std::int64_t> recount(3, 0);
      std::int64_t digit_sum = 0;
      for (std::int64_t i = 0; i < row.n; ++i) {
        ++recount[prefix.digits[static_cast<std::size_t>(i)]];
        digit_sum += prefix.digits[static_cast<std::size_t>(i)];
      }
      REQUIRE(row.counts == recount);
      REQUIRE(row.digit_sum == digit_sum);
    }
  }
}

TEST_CASE("the digit-sum identity holds exactly at every checkpoint") {
  const auto stream = uniform_stream(Alphabet(5), 99);
  const auto trace = run_stats(stream, geometric_checkpoints(10'000));
  for (const auto& row : trace.rows()) {
    std::int64_t weighted = 0;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < row.counts.size(); ++i) {
      weighted += std::int64_t(i) * row.counts[i];
      total += row.counts[i];
    }
    REQUIRE(weighted == row.digit_sum);  // r_n = sum i v_i, in integers
    REQUIRE(total == row.n);
  }
}

TEST_CASE("traces of constant and rational streams") {
  const auto zeros = run_stats(constant_stream(Alphabet::ternary(), 0), {10, 100});
  for (const auto& row : zeros.rows()) {
    CHECK(row.v(0) == 1.0);
    CHECK(row.r() == 0.0);
  }

  const auto twos = run_stats(constant_stream(Alphabet::ternary(), 2), {10, 100});
  for (const auto& row : twos.rows()) CHECK(row.r() == 2.0);

  const auto half =
      run_stats(expand_rational(Rational(1, 2), Alphabet::ternary()), {64});
  CHECK(half.last().v(1) == 1.0);
  CHECK(half.last().r() == 1.0);
}

TEST_CASE("checkpoint validation") {
  const auto stream = constant_stream(Alphabet::ternary(), 0);
  CHECK_THROWS_AS(run_stats(stream, {}), std::invalid_argument);
  CHECK_THROWS_AS(run_stats(stream, {0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(run_stats(stream, {5, 5}), std::invalid_argument);
  CHECK_THROWS_AS(run_stats(stream, {7, 3}), std::invalid_argument);
}

TEST_CASE("mean verdicts") {
  const auto constant = run_stats(constant_stream(Alphabet::ternary(), 1),
                                  {1, 10, 100, 1000});
  const auto verdict = asymptotic_mean_verdict(constant, 1e-9);
  CHECK(verdict.converged);
  CHECK(verdict.estimate == 1.0);

  // dyadic checkpoints up to 1e6: the tail half sits where the CLT noise
  // is well inside the tolerance
  std::vector<std::int64_t> dyadic;
  for (std::int64_t n = 1 << 13; n <= (1 << 20); n *= 2) dyadic.push_back(n);
  const auto uniform =
      run_stats(uniform_stream(Alphabet::ternary(), 7), dyadic);
  const auto mean = asymptotic_mean_verdict(uniform, 0.01);
  CHECK(mean.converged);
  CHECK(std::abs(mean.estimate - 1.0) < 0.01);

  const auto short_trace =
      run_stats(constant_stream(Alphabet::ternary(), 1), {1, 2, 3});
  CHECK_THROWS_AS(asymptotic_mean_verdict(short_trace, 0.01),
                  std::invalid_argument);
  CHECK_THROWS_AS(frequency_verdicts(short_trace, 0.01), std::invalid_argument);
}

TEST_CASE("oscillating construction: frequencies diverge, mean does not") {
  const auto cp = oscillation_checkpoints(1.0, 3);
  std::vector<std::int64_t> merged;
  for (auto v : cp.l) {
    if (v >= 1) merged.push_back(v);
  }
  for (auto v : cp.l_star) merged.push_back(v);
  std::sort(merged.begin(), merged.end());

  const auto trace = run_stats(oscillating_stream(1.0), merged);
  const auto v0 = frequency_verdicts(trace, 0.01)[0];
  CHECK_FALSE(v0.converged);
  CHECK(v0.spread() >= 0.05);
  const auto mean = asymptotic_mean_verdict(trace, 0.03);
  CHECK(mean.converged);
  CHECK(std::abs(mean.estimate - 1.0) < 0.03);
}

TEST_CASE("iid frequencies converge to tau") {
  std::vector<std::int64_t> dyadic;
  for (std::int64_t n = 1 << 13; n <= (1 << 20); n *= 2) dyadic.push_back(n);
  const auto trace =
      run_stats(iid_stream(FrequencyVector({0.2, 0.3, 0.5}), 11), dyadic);
  const auto verdicts = frequency_verdicts(trace, 0.01);
  const double tau[] = {0.2, 0.3, 0.5};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(verdicts[i].converged);
    CHECK(std::abs(verdicts[i].estimate - tau[i]) < 0.01);
  }
}

TEST_CASE("seventh-occurrence frequencies converge to their targets") {
  std::vector<std::int64_t> dyadic;
  for (std::int64_t n = 1 << 13; n <= (1 << 20); n *= 2) dyadic.push_back(n);
  const auto out =
      seven_replacement()(uniform_stream(Alphabet::ternary(), 42));
  const auto verdicts = frequency_verdicts(run_stats(out, dyadic), 0.01);
  const double target[] = {8.0 / 21, 5.0 / 21, 8.0 / 21};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(verdicts[i].converged);
    CHECK(std::abs(verdicts[i].estimate - target[i]) < 0.01);
  }
}

TEST_CASE("mean from frequencies") {
  CHECK(mean_from_frequencies(FrequencyVector::uniform(3)) ==
        doctest::Approx(1.0));
  CHECK(mean_from_frequencies(FrequencyVector({1.0, 0.0, 0.0})) == 0.0);
  CHECK(mean_from_frequencies(FrequencyVector({0.4, 0.2, 0.4})) ==
        doctest::Approx(1.0));
  CHECK(mean_from_frequencies(FrequencyVector({0.3, 0.4, 0.3})) ==
        doctest::Approx(1.0));
}

TEST_CASE("class dimension formula") {
  CHECK(std::abs(be_dimension(FrequencyVector::uniform(3), 3) - 1.0) <= 1e-12);
  CHECK(be_dimension(FrequencyVector({1.0, 0.0, 0.0}), 3) == 0.0);
  CHECK(be_dimension(FrequencyVector({0.0, 1.0, 0.0}), 3) == 0.0);

  const double direct =
      -(0.2 * std::log(0.2) + 0.3 * std::log(0.3) + 0.5 * std::log(0.5)) /
      std::log(3.0);
  CHECK(std::abs(be_dimension(FrequencyVector({0.2, 0.3, 0.5}), 3) - direct) <=
        1e-10);
  CHECK(be_dimension(FrequencyVector({0.2, 0.3, 0.5}), 3) ==
        doctest::Approx(0.93723).epsilon(1e-4));

  CHECK_THROWS_AS(be_dimension(FrequencyVector({0.5, 0.5}), 3),
                  std::domain_error);
}

TEST_CASE("uniform frequencies maximize the dimension") {
  std::mt19937_64 rng(8080);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int iter = 0; iter < 200; ++iter) {
    double a = u(rng), b = u(rng), c = u(rng);
    const double sum = a + b + c;
    const FrequencyVector tau({a / sum, b / sum, c / sum});
    const double dim = be_dimension(tau, 3);
    REQUIRE(dim <= 1.0 + 1e-12);
    REQUIRE(dim >= 0.0);
  }
}

TEST_CASE("mod-7 counting against brute force") {
  CHECK(count_multiples_of_7(7) == 1);
  CHECK(count_congruent_1_mod_7(7) == 0);
  CHECK(count_multiples_of_7(8) == 1);
  CHECK(count_congruent_1_mod_7(8) == 1);
  CHECK(count_multiples_of_7(1) == 0);
  CHECK(count_congruent_1_mod_7(1) == 0);
  CHECK_THROWS_AS(count_multiples_of_7(0), std::domain_error);

  for (std::int64_t n = 1; n <= 10'000; ++n) {
    std::int64_t multiples = 0, successors = 0;
    for (std::int64_t v = 1; v <= n; ++v) {
      if (v % 7 == 0) ++multiples;
      if (v % 7 == 1 && v > 1) ++successors;
    }
    REQUIRE(count_multiples_of_7(n) == multiples);
    REQUIRE(count_congruent_1_mod_7(n) == successors);
  }
}

TEST_CASE("power-sum ratios") {
  // alpha = 1: S_n = (n(n+1)/2)^2 / ... no: sum i^2 = n(n+1)(2n+1)/6.
  const auto tiny = power_sum_ratios(1.0, 1);
  CHECK(tiny.next_term_ratio == doctest::Approx(4.0));
  CHECK(tiny.power_ratio == doctest::Approx(1.0));

  const std::int64_t n = 100'000;
  const auto quadratic = power_sum_ratios(1.0, n);
  const double s_exact = double(n) * (n + 1.0) * (2.0 * n + 1.0) / 6.0;
  CHECK(quadratic.power_ratio ==
        doctest::Approx(double(n) * n * n / s_exact).epsilon(1e-9));
  CHECK(std::abs(quadratic.power_ratio - 3.0) < 0.001);

  const auto half = power_sum_ratios(0.5, n);
  CHECK(std::abs(half.power_ratio - 2.5) < 0.01);
  CHECK(half.next_term_ratio < 3e-5);

  CHECK_THROWS_AS(power_sum_ratios(0.0, 10), std::domain_error);
  CHECK_THROWS_AS(power_sum_ratios(1.0, 0), std::domain_error);
}

TEST_CASE("power-sum ratios survive overflow via log space") {
  const auto huge = power_sum_ratios(4000.0, 50);
  CHECK(std::isfinite(huge.power_ratio));
  CHECK(std::isfinite(huge.next_term_ratio));
  // S_n is dominated by its last term, so n^(2+a)/S_n ~ n.
  CHECK(huge.power_ratio == doctest::Approx(50.0).epsilon(0.01));
}

TEST_CASE("geometric checkpoints") {
  const auto cp = geometric_checkpoints(1'000'000);
  CHECK(cp.front() == 1);
  CHECK(cp.back() == 1'000'000);
  for (std::size_t i = 1; i < cp.size(); ++i) REQUIRE(cp[i] > cp[i - 1]);
  CHECK(geometric_checkpoints(1) == std::vector<std::int64_t>{1});
  CHECK_THROWS_AS(geometric_checkpoints(0), std::domain_error);
}

TEST_CASE("csv rendering is exact and stable") {
  const auto trace = run_stats(constant_stream(Alphabet::ternary(), 2), {1, 2});
  CHECK(trace.to_csv() == "n,v0,v1,v2,r\n1,0,0,1,2\n2,0,0,1,2\n");
  CHECK(trace.to_csv(true) ==
        "n,v0,v1,v2,r,N0,N1,N2\n1,0,0,1,2,0,0,1\n2,0,0,1,2,0,0,2\n");

  const auto a = run_stats(uniform_stream(Alphabet::ternary(), 3), {10, 1000});
  const auto b = run_stats(uniform_stream(Alphabet::ternary(), 3), {10, 1000});
  CHECK(a.to_csv(true) == b.to_csv(true));  // byte-identical replay
}

TEST_CASE("json rendering round-trips through a JSON parser") {
  const auto trace =
      run_stats(uniform_stream(Alphabet::ternary(), 1), {10, 100});
  const auto doc = nlohmann::json::parse(trace.to_json(true));
  CHECK(doc["radix"] == 3);
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["n"] == 10);
  CHECK(doc["rows"][1]["counts"].size() == 3);
  std::int64_t total = 0;
  for (const auto& c : doc["rows"][1]["counts"]) total += c.get<std::int64_t>();
  CHECK(total == 100);
}
