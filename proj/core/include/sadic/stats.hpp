#pragma once

// Digit-counting statistics over streams: exact running counts, checkpointed
// traces of relative frequencies and the running digit mean, convergence
// verdicts, the Besicovitch-Eggleston dimension formula, and the power-sum
// ratio limits used by the oscillating construction.

#include <cstdint>
#include <string>
#include <vector>

#include "sadic/frequency.hpp"
#include "sadic/stream.hpp"

namespace sadic {

/// Exact tallies after consuming n digits: per-digit counts and the digit
/// sum. All integer arithmetic; counts are 64-bit so 1e8-digit runs are
/// nowhere near overflow.
struct RunningCounts {
  std::int64_t n = 0;
  std::vector<std::int64_t> counts;  // one per digit
  std::int64_t digit_sum = 0;

  explicit RunningCounts(std::uint32_t radix) : counts(radix, 0) {}
  void feed(digit_t d) {
    ++n;
    ++counts[d];
    digit_sum += d;
  }
};

/// One checkpoint row: exact integer state at position n, with the derived
/// relative frequencies v_i = N_i/n and running mean r = (sum of digits)/n.
struct TraceRow {
  std::int64_t n = 0;
  std::vector<std::int64_t> counts;
  std::int64_t digit_sum = 0;

  double v(std::size_t digit) const {
    return static_cast<double>(counts[digit]) / static_cast<double>(n);
  }
  double r() const {
    return static_cast<double>(digit_sum) / static_cast<double>(n);
  }
};

/// Checkpointed statistics of one stream pass.
class StatsTrace {
 public:
  StatsTrace(Alphabet alphabet, std::vector<TraceRow> rows);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<TraceRow>& rows() const noexcept { return rows_; }
  const TraceRow& last() const { return rows_.back(); }

  /// CSV with header n,v0,...,v{s-1},r; with_counts appends the exact
  /// integer columns N0,...,N{s-1}. Doubles are printed in shortest
  /// round-trip form, so output is byte-stable.
  std::string to_csv(bool with_counts = false) const;
  std::string to_json(bool with_counts = false) const;

 private:
  Alphabet alphabet_;
  std::vector<TraceRow> rows_;
};

/// Single pass over the stream recording a row at each checkpoint.
/// Checkpoints must be nonempty, strictly increasing, and >= 1.
StatsTrace run_stats(const DigitStream& stream,
                     const std::vector<std::int64_t>& checkpoints);

/// Convergence proxy for a checkpoint sequence: converged iff the spread of
/// the statistic over the last half of the checkpoints is <= tol.
struct LimitVerdict {
  bool converged = false;
  double estimate = 0.0;     // value at the last checkpoint
  double liminf_proxy = 0.0;  // min over the tail
  double limsup_proxy = 0.0;  // max over the tail

  double spread() const { return limsup_proxy - liminf_proxy; }
};

/// Verdict on the running digit mean r_n. Requires >= 4 checkpoints.
LimitVerdict asymptotic_mean_verdict(const StatsTrace& trace, double tol);

/// Per-digit verdicts on the relative frequencies v_i.
std::vector<LimitVerdict> frequency_verdicts(const StatsTrace& trace,
                                             double tol);

/// Digit mean implied by a frequency vector: sum_i i * tau_i.
double mean_from_frequencies(const FrequencyVector& tau);

/// Hausdorff dimension of the Besicovitch-Eggleston class with digit
/// frequencies tau in radix s: -sum_i tau_i ln tau_i / ln s, with the
/// convention 0 * ln 0 = 0. Requires tau.size() == s.
double be_dimension(const FrequencyVector& tau, std::uint32_t radix);

/// |{1..n} intersect {7k : k >= 1}| = floor(n/7).
std::int64_t count_multiples_of_7(std::int64_t n);
/// |{1..n} intersect {7k+1 : k >= 1}| = floor((n-1)/7).
std::int64_t count_congruent_1_mod_7(std::int64_t n);

/// The two power-sum ratios (n+1)^(1+alpha)/S_n and n^(2+alpha)/S_n with
/// S_n = sum_{i<=n} i^(1+alpha). As n grows the first tends to 0 and the
/// second to 2+alpha. Evaluated in extended precision, falling back to
/// log-space accumulation when terms overflow.
struct PowerSumRatios {
  double next_term_ratio = 0.0;   // (n+1)^(1+alpha) / S_n
  double power_ratio = 0.0;       // n^(2+alpha) / S_n
};
PowerSumRatios power_sum_ratios(double alpha, std::int64_t n);

/// Geometric checkpoint schedule ceil(10^(k/8)), deduplicated, capped and
/// terminated at max_n.
std::vector<std::int64_t> geometric_checkpoints(std::int64_t max_n);

}  // namespace sadic
