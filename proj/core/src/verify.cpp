#include "sadic/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "sadic/generators.hpp"
#include "sadic/pipeline.hpp"
#include "sadic/stats.hpp"
#include "sadic/transforms.hpp"

namespace sadic {

namespace {

constexpr std::uint64_t kVerifySeed = 42;

struct ScaleParams {
  std::int64_t empirical_n;  // length of the pseudorandom experiments
};

ScaleParams params_for(VerifyScale scale) {
  return scale == VerifyScale::full ? ScaleParams{1'000'000}
                                    : ScaleParams{100'000};
}

// Accumulates per-check lines; a criterion passes iff all its checks hold.
class Checks {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) pass_ = false;
    if (!details_.empty()) details_ += "; ";
    details_ += (ok ? "" : "FAIL ") + what;
  }

  void note(const std::string& what) {
    if (!details_.empty()) details_ += "; ";
    details_ += what;
  }

  CriterionResult result(int id, std::string name) const {
    return CriterionResult{id, std::move(name), pass_, details_};
  }

 private:
  bool pass_ = true;
  std::string details_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// 1. Pseudorandom uniform ternary digits look normal: frequencies near 1/3
// and mean near 1 at the end of the run.
CriterionResult check_normality(const ScaleParams& p) {
  Checks c;
  const auto stream = run_pipeline("uniform(3," + std::to_string(kVerifySeed) + ")");
  const auto start = std::chrono::steady_clock::now();
  const auto trace = run_stats(stream, geometric_checkpoints(p.empirical_n));
  const double elapsed = seconds_since(start);
  const auto& last = trace.last();
  for (std::size_t i = 0; i < 3; ++i) {
    c.require(std::abs(last.v(i) - 1.0 / 3.0) < 0.005,
              "v" + std::to_string(i) + "=" + fmt(last.v(i)) + " within 0.005 of 1/3");
  }
  c.require(std::abs(last.r() - 1.0) < 0.01,
            "r=" + fmt(last.r()) + " within 0.01 of 1");
  c.require(elapsed < 1.0, "runtime " + fmt(elapsed) + "s < 1s");
  return c.result(1, "borel-normality-surrogate");
}

// 2. Rewriting every seventh occurrence of digit 1 (and the occurrence
// after it) moves the frequencies to 8/21, 5/21, 8/21 and keeps the mean.
CriterionResult check_seventh_occurrence(const ScaleParams& p) {
  Checks c;
  const auto stream =
      run_pipeline("uniform(3," + std::to_string(kVerifySeed) + ") | seven");
  const auto trace = run_stats(stream, geometric_checkpoints(p.empirical_n));
  const auto& last = trace.last();
  const std::array<double, 3> target{8.0 / 21.0, 5.0 / 21.0, 8.0 / 21.0};
  for (std::size_t i = 0; i < 3; ++i) {
    c.require(std::abs(last.v(i) - target[i]) < 0.01,
              "v" + std::to_string(i) + "=" + fmt(last.v(i)) + " within 0.01 of " +
                  fmt(target[i]));
  }
  c.require(std::abs(last.r() - 1.0) < 0.01,
            "r=" + fmt(last.r()) + " within 0.01 of 1");
  return c.result(2, "seventh-occurrence-frequencies");
}

// 3. The counting identities behind the 8/21-5/21-8/21 split, against
// brute-force set intersection.
CriterionResult check_mod7_counts(const ScaleParams&) {
  Checks c;
  bool multiples_ok = true;
  bool successors_ok = true;
  for (std::int64_t n = 1; n <= 10'000; ++n) {
    std::int64_t multiples = 0;
    for (std::int64_t k = 1; 7 * k <= n; ++k) ++multiples;
    std::int64_t successors = 0;
    for (std::int64_t k = 1; 7 * k + 1 <= n; ++k) ++successors;
    multiples_ok = multiples_ok && (count_multiples_of_7(n) == multiples);
    successors_ok = successors_ok && (count_congruent_1_mod_7(n) == successors);
  }
  c.require(multiples_ok, "floor(n/7) matches brute force for n <= 1e4");
  c.require(successors_ok, "floor((n-1)/7) matches brute force for n <= 1e4");
  return c.result(3, "mod7-counting");
}

// 4. The canonical block point of the class (0.2, 0.3, 0.5): empirical
// frequencies near tau, and the floor-sum bracket bounds hold exactly at
// every block boundary.
CriterionResult check_canonical_point(const ScaleParams& p) {
  Checks c;
  const std::array<double, 3> tau{0.2, 0.3, 0.5};
  const auto stream =
      canonical_be_point(FrequencyVector({tau[0], tau[1], tau[2]}),
                         WeightKind::linear());
  const auto trace = run_stats(stream, geometric_checkpoints(p.empirical_n));
  const auto& last = trace.last();
  for (std::size_t i = 0; i < 3; ++i) {
    c.require(std::abs(last.v(i) - tau[i]) < 0.02,
              "v" + std::to_string(i) + "=" + fmt(last.v(i)) + " within 0.02 of " +
                  fmt(tau[i]));
  }
  c.require(std::abs(last.r() - 1.3) < 0.02,
            "r=" + fmt(last.r()) + " within 0.02 of 1.3");

  // Bracket bounds: sum(tau_i j - 1) <= N_i <= sum(tau_i j) after each block.
  auto cursor = stream.cursor();
  std::array<std::int64_t, 3> counts{};
  std::array<long double, 3> exact_sums{};
  std::int64_t position = 0;
  bool brackets_ok = true;
  std::int64_t boundaries = 0;
  for (std::int64_t j = 1; position <= p.empirical_n; ++j) {
    std::int64_t block_digits = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      block_digits += static_cast<std::int64_t>(
          std::floor(tau[i] * static_cast<double>(j)));
      exact_sums[i] += static_cast<long double>(tau[i]) * j;
    }
    for (std::int64_t k = 0; k < block_digits; ++k) ++counts[cursor->next()];
    position += block_digits;
    ++boundaries;
    for (std::size_t i = 0; i < 3; ++i) {
      const long double lower = exact_sums[i] - j;  // sum of (tau_i k - 1)
      if (!(lower <= counts[i] && counts[i] <= exact_sums[i])) {
        brackets_ok = false;
      }
    }
  }
  c.require(brackets_ok, "bracket bounds exact at all " +
                             std::to_string(boundaries) + " block boundaries");
  return c.result(4, "canonical-class-point");
}

// 5. The dimension formula at the three reference vectors.
CriterionResult check_dimension(const ScaleParams&) {
  Checks c;
  const double uniform_dim = be_dimension(FrequencyVector::uniform(3), 3);
  c.require(std::abs(uniform_dim - 1.0) <= 1e-12,
            "dim(1/3,1/3,1/3)=" + fmt(uniform_dim) + " within 1e-12 of 1");
  const double degenerate_dim = be_dimension(FrequencyVector::degenerate(3, 0), 3);
  c.require(degenerate_dim == 0.0, "dim(1,0,0) is exactly 0");
  const double dim = be_dimension(FrequencyVector({0.2, 0.3, 0.5}), 3);
  const double reference =
      -(0.2 * std::log(0.2) + 0.3 * std::log(0.3) + 0.5 * std::log(0.5)) /
      std::log(3.0);
  c.require(std::abs(dim - reference) <= 1e-10,
            "dim(0.2,0.3,0.5)=" + fmt(dim) + " matches direct evaluation");
  return c.result(5, "dimension-formula");
}

// 6. The power-sum ratio limits: (n+1)^(1+a)/S_n -> 0, n^(2+a)/S_n -> 2+a.
CriterionResult check_power_sums(const ScaleParams&) {
  Checks c;
  for (const double alpha : {0.5, 1.0, 2.0}) {
    const auto ratios = power_sum_ratios(alpha, 100'000);
    const double limit = 2.0 + alpha;
    c.require(ratios.next_term_ratio < 1e-4 * limit,
              "alpha=" + fmt(alpha) + ": next-term ratio " +
                  fmt(ratios.next_term_ratio) + " < " + fmt(1e-4 * limit));
    c.require(std::abs(ratios.power_ratio - limit) < 0.01 * limit,
              "alpha=" + fmt(alpha) + ": power ratio " + fmt(ratios.power_ratio) +
                  " within 1% of " + fmt(limit));
  }
  return c.result(6, "power-sum-limits");
}

// 7. The factorial-switch construction: digit-0 frequency separates along
// the two checkpoint families while the mean stays put at 1.
CriterionResult check_oscillation(const ScaleParams&) {
  Checks c;
  const auto cp = oscillation_checkpoints(1.0, 3);
  std::vector<std::int64_t> merged;
  for (std::int64_t v : cp.l) {
    if (v >= 1) merged.push_back(v);  // the first family checkpoint is 0
  }
  for (std::int64_t v : cp.l_star) {
    if (v >= 1) merged.push_back(v);
  }
  std::ranges::sort(merged);
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  const auto start = std::chrono::steady_clock::now();
  const auto trace = run_stats(oscillating_stream(1.0), merged);
  const double elapsed = seconds_since(start);

  double min_along_l = 1.0;
  double max_along_l_star = 0.0;
  bool mean_ok = true;
  for (const auto& row : trace.rows()) {
    if (std::ranges::find(cp.l, row.n) != cp.l.end()) {
      min_along_l = std::min(min_along_l, row.v(0));
    }
    if (std::ranges::find(cp.l_star, row.n) != cp.l_star.end()) {
      max_along_l_star = std::max(max_along_l_star, row.v(0));
    }
    mean_ok = mean_ok && std::abs(row.r() - 1.0) < 0.03;
  }
  c.require(min_along_l - max_along_l_star >= 0.05,
            "v0 separates: min along l " + fmt(min_along_l) +
                " vs max along l* " + fmt(max_along_l_star) + " (>= 0.05)");
  const auto v0_verdict = frequency_verdicts(trace, 0.01)[0];
  c.require(!v0_verdict.converged,
            "v0 verdict not converged (spread " + fmt(v0_verdict.spread()) + ")");
  c.require(mean_ok, "r within 0.03 of 1 at all " +
                         std::to_string(trace.rows().size()) + " checkpoints");
  c.require(elapsed < 30.0, "runtime " + fmt(elapsed) + "s < 30s");
  return c.result(7, "frequency-oscillation");
}

// 8. Window permutations: involutions, order sensitivity of composition,
// and exact count invariance at window multiples.
CriterionResult check_group_laws(const ScaleParams&) {
  Checks c;
  const std::size_t prefix_len = 10'000;
  const auto base = uniform_stream(Alphabet::ternary(), 7);
  const auto base_prefix = base.prefix(prefix_len);

  const auto swap2 = pair_swap();
  const auto rev3 = triple_reverse();
  c.require(swap2(swap2(base)).prefix(prefix_len) == base_prefix,
            "pair swap is an involution on a 1e4 prefix");
  c.require(rev3(rev3(base)).prefix(prefix_len) == base_prefix,
            "triple reverse is an involution on a 1e4 prefix");

  const auto witness =
      periodic_stream(PeriodicWord{Alphabet::ternary(), {}, {0, 1, 2}});
  const auto one_way = compose(rev3, swap2)(witness).prefix(12);
  const auto other_way = compose(swap2, rev3)(witness).prefix(12);
  c.require(one_way != other_way,
            "rev3∘swap2 differs from swap2∘rev3 on the witness prefix");

  auto counts_match = [&](const Transform& t, std::int64_t window) {
    std::vector<std::int64_t> checkpoints;
    for (std::int64_t n = window; n <= 9'999; n *= 4) checkpoints.push_back(n);
    const auto before = run_stats(base, checkpoints);
    const auto after = run_stats(t(base), checkpoints);
    for (std::size_t row = 0; row < checkpoints.size(); ++row) {
      if (before.rows()[row].counts != after.rows()[row].counts) return false;
    }
    return true;
  };
  c.require(counts_match(swap2, 2), "pair swap keeps counts at even positions");
  c.require(counts_match(rev3, 3),
            "triple reverse keeps counts at multiples of 3");
  c.require(counts_match(transpose_at(7), 8),
            "transposition keeps counts past its window");
  return c.result(8, "permutation-group-laws");
}

// 9. The finitary mean-frequency inequalities, exactly in integers, at
// every checkpoint of the experiments above.
CriterionResult check_mean_inequalities(const ScaleParams& p) {
  Checks c;
  struct Experiment {
    std::string name;
    DigitStream stream;
    std::vector<std::int64_t> checkpoints;
  };
  const std::string seed = std::to_string(kVerifySeed);
  const auto cp = oscillation_checkpoints(1.0, 3);
  std::vector<std::int64_t> osc_cp;
  for (std::int64_t v : cp.l) {
    if (v >= 1) osc_cp.push_back(v);
  }
  for (std::int64_t v : cp.l_star) {
    if (v >= 1) osc_cp.push_back(v);
  }
  std::ranges::sort(osc_cp);

  std::vector<Experiment> experiments;
  experiments.push_back({"uniform", run_pipeline("uniform(3," + seed + ")"),
                         geometric_checkpoints(p.empirical_n)});
  experiments.push_back({"seven",
                         run_pipeline("uniform(3," + seed + ") | seven"),
                         geometric_checkpoints(p.empirical_n)});
  experiments.push_back({"canonicalpt",
                         run_pipeline("canonicalpt((0.2, 0.3, 0.5))"),
                         geometric_checkpoints(p.empirical_n)});
  experiments.push_back({"osc", run_pipeline("osc(1)"), osc_cp});
  experiments.push_back({"inverted const",
                         run_pipeline("const(0) | invert"),
                         geometric_checkpoints(100)});

  for (const auto& e : experiments) {
    bool ok = true;
    const auto trace = run_stats(e.stream, e.checkpoints);
    for (const auto& row : trace.rows()) {
      ok = ok && row.digit_sum >= row.counts[1];       // r_n >= v1
      ok = ok && row.digit_sum >= row.counts[2];       // r_n >= v2
      ok = ok && row.counts[2] >= row.digit_sum - row.n;  // v2 >= r_n - 1
    }
    c.require(ok, e.name + ": inequalities exact at " +
                      std::to_string(trace.rows().size()) + " checkpoints");
  }
  return c.result(9, "mean-frequency-inequalities");
}

// 10. The digit inverter moves the mean: image of the zero expansion has
// r = 2 exactly.
CriterionResult check_inverter(const ScaleParams&) {
  Checks c;
  const auto checkpoints = geometric_checkpoints(100);
  const auto in_trace = run_stats(run_pipeline("const(0)"), checkpoints);
  const auto out_trace = run_stats(run_pipeline("const(0) | invert"), checkpoints);
  bool input_zero = true;
  bool output_two = true;
  for (const auto& row : in_trace.rows()) {
    input_zero = input_zero && row.r() == 0.0;
  }
  for (const auto& row : out_trace.rows()) {
    output_two = output_two && row.counts[2] == row.n && row.r() == 2.0;
  }
  c.require(input_zero, "input r is exactly 0 at every checkpoint");
  c.require(output_two, "image r is exactly 2 at every checkpoint");
  return c.result(10, "inverter-counterexample");
}

// 11. Parser totality under fuzzing and the pretty-print fixpoint.
CriterionResult check_dsl(const ScaleParams&) {
  Checks c;
  std::mt19937_64 rng(20'240'601);

  bool total = true;
  std::string failure;
  std::uniform_int_distribution<int> length_dist(0, 64);
  std::uniform_int_distribution<int> byte_dist(0, 255);
  for (int iter = 0; iter < 100'000 && total; ++iter) {
    std::string input;
    const int length = length_dist(rng);
    for (int i = 0; i < length; ++i) {
      input.push_back(static_cast<char>(byte_dist(rng)));
    }
    try {
      (void)parse(input);
    } catch (const ParseError&) {
      // fine: one well-formed error
    } catch (const std::exception& e) {
      total = false;
      failure = e.what();
    }
  }
  c.require(total, total ? "1e5 fuzz inputs: parse or ParseError only"
                         : "fuzz escaped ParseError: " + failure);

  bool fixpoint = true;
  std::uniform_int_distribution<int> stage_count(0, 4);
  std::uniform_int_distribution<int> pick(0, 6);
  std::uniform_int_distribution<int> small(0, 9);
  auto number = [&] {
    if (small(rng) < 5) return std::to_string(small(rng));
    return std::to_string(small(rng)) + "." + std::to_string(small(rng)) +
           std::to_string(small(rng));
  };
  auto tuple = [&] {
    return "(" + number() + ", " + number() + ", " + number() + ")";
  };
  for (int iter = 0; iter < 1'000 && fixpoint; ++iter) {
    std::string text;
    switch (pick(rng)) {
      case 0: text = "const(" + number() + ")"; break;
      case 1: text = "rational(" + number() + ", " + number() + ")"; break;
      case 2: text = "uniform(3, " + number() + ")"; break;
      case 3: text = "iid(" + tuple() + ", " + number() + ")"; break;
      case 4: text = "canonicalpt(" + tuple() + ")"; break;
      case 5: text = "osc(" + number() + ")"; break;
      default: text = "beta"; break;
    }
    const int stages = stage_count(rng);
    for (int s = 0; s < stages; ++s) {
      switch (pick(rng)) {
        case 0: text += " | id"; break;
        case 1: text += " | swap2"; break;
        case 2: text += " | rev3"; break;
        case 3: text += " | shift"; break;
        case 4: text += " | prepend(" + number() + ")"; break;
        case 5: text += " | inc(" + number() + ")"; break;
        default: text += " | seven"; break;
      }
    }
    try {
      const auto first = parse(text);
      const std::string printed = to_text(first);
      const auto second = parse(printed);
      fixpoint = fixpoint && second == first && to_text(second) == printed;
    } catch (const std::exception&) {
      fixpoint = false;
    }
  }
  c.require(fixpoint, "print-parse fixpoint on 1e3 generated pipelines");
  return c.result(11, "dsl-robustness");
}

using CriterionFn = CriterionResult (*)(const ScaleParams&);

struct CriterionEntry {
  CriterionInfo info;
  CriterionFn run;
};

const std::vector<CriterionEntry>& criteria() {
  static const std::vector<CriterionEntry> entries{
      {{1, "borel-normality-surrogate",
        "uniform ternary digits: frequencies near 1/3, mean near 1"},
       check_normality},
      {{2, "seventh-occurrence-frequencies",
        "seventh-occurrence rewrite lands on 8/21, 5/21, 8/21 with mean 1"},
       check_seventh_occurrence},
      {{3, "mod7-counting",
        "floor(n/7) and floor((n-1)/7) against brute-force intersection"},
       check_mod7_counts},
      {{4, "canonical-class-point",
        "block point of (0.2,0.3,0.5): frequencies and exact bracket bounds"},
       check_canonical_point},
      {{5, "dimension-formula",
        "class dimension at the uniform, degenerate, and (0.2,0.3,0.5) vectors"},
       check_dimension},
      {{6, "power-sum-limits",
        "power-sum ratios approach 0 and 2+alpha"},
       check_power_sums},
      {{7, "frequency-oscillation",
        "digit-0 frequency splits along the two checkpoint families, mean holds"},
       check_oscillation},
      {{8, "permutation-group-laws",
        "involutions, noncommutativity witness, exact window-count invariance"},
       check_group_laws},
      {{9, "mean-frequency-inequalities",
        "r_n >= v1, r_n >= v2, v2 >= r_n - 1, exactly, at every checkpoint"},
       check_mean_inequalities},
      {{10, "inverter-counterexample",
        "digit inverter sends the zero expansion to mean exactly 2"},
       check_inverter},
      {{11, "dsl-robustness",
        "parser totality under fuzzing; pretty-print fixpoint"},
       check_dsl},
  };
  return entries;
}

}  // namespace

bool VerifyReport::all_pass() const {
  return std::ranges::all_of(results,
                             [](const CriterionResult& r) { return r.pass; });
}

std::string VerifyReport::to_json() const {
  nlohmann::json doc;
  doc["scale"] = scale == VerifyScale::full ? "full" : "small";
  doc["pass"] = all_pass();
  doc["criteria"] = nlohmann::json::array();
  for (const auto& r : results) {
    doc["criteria"].push_back({{"id", r.id},
                               {"name", r.name},
                               {"pass", r.pass},
                               {"details", r.details}});
  }
  return doc.dump(2);
}

const std::vector<CriterionInfo>& verification_catalog() {
  static const std::vector<CriterionInfo> infos = [] {
    std::vector<CriterionInfo> out;
    for (const auto& entry : criteria()) out.push_back(entry.info);
    return out;
  }();
  return infos;
}

VerifyReport run_verification(VerifyScale scale,
                              std::optional<int> only_criterion) {
  const ScaleParams params = params_for(scale);
  VerifyReport report;
  report.scale = scale;
  bool found = false;
  for (const auto& entry : criteria()) {
    if (only_criterion && entry.info.id != *only_criterion) continue;
    found = true;
    report.results.push_back(entry.run(params));
  }
  if (only_criterion && !found) {
    throw std::invalid_argument("unknown criterion id " +
                                std::to_string(*only_criterion));
  }
  return report;
}

}  // namespace sadic
