#include "sadic/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sadic {

namespace {

void append_double(std::string& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

void append_int(std::string& out, std::int64_t value) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

// Tail of the checkpoint rows used by the convergence proxies: the last
// half, rounded up.
std::size_t tail_start(std::size_t rows) { return rows / 2; }

LimitVerdict verdict_over(const std::vector<double>& values, double tol) {
  LimitVerdict v;
  const std::size_t start = tail_start(values.size());
  v.liminf_proxy = *std::min_element(values.begin() + start, values.end());
  v.limsup_proxy = *std::max_element(values.begin() + start, values.end());
  v.estimate = values.back();
  v.converged = (v.limsup_proxy - v.liminf_proxy) <= tol;
  return v;
}

void require_enough_checkpoints(const StatsTrace& trace) {
  if (trace.rows().size() < 4) {
    throw std::invalid_argument(
        "convergence verdicts need at least 4 checkpoints");
  }
}

}  // namespace

StatsTrace::StatsTrace(Alphabet alphabet, std::vector<TraceRow> rows)
    : alphabet_(alphabet), rows_(std::move(rows)) {
  std::int64_t prev = 0;
  for (const auto& row : rows_) {
    if (row.n <= prev) {
      throw std::invalid_argument("trace rows must be strictly increasing in n");
    }
    if (row.counts.size() != alphabet_.radix()) {
      throw std::invalid_argument("trace row count width mismatch");
    }
    prev = row.n;
  }
}

std::string StatsTrace::to_csv(bool with_counts) const {
  std::string out = "n";
  for (std::uint32_t i = 0; i < alphabet_.radix(); ++i) {
    out += ",v" + std::to_string(i);
  }
  out += ",r";
  if (with_counts) {
    for (std::uint32_t i = 0; i < alphabet_.radix(); ++i) {
      out += ",N" + std::to_string(i);
    }
  }
  out += "\n";
  for (const auto& row : rows_) {
    append_int(out, row.n);
    for (std::uint32_t i = 0; i < alphabet_.radix(); ++i) {
      out += ',';
      append_double(out, row.v(i));
    }
    out += ',';
    append_double(out, row.r());
    if (with_counts) {
      for (std::uint32_t i = 0; i < alphabet_.radix(); ++i) {
        out += ',';
        append_int(out, row.counts[i]);
      }
    }
    out += '\n';
  }
  return out;
}

std::string StatsTrace::to_json(bool with_counts) const {
  std::string out = "{\"radix\":" + std::to_string(alphabet_.radix()) +
                    ",\"rows\":[";
  bool first_row = true;
  for (const auto& row : rows_) {
    if (!first_row) out += ',';
    first_row = false;
    out += "{\"n\":";
    append_int(out, row.n);
    out += ",\"v\":[";
    for (std::uint32_t i = 0; i < alphabet_.radix(); ++i) {
      if (i) out += ',';
      append_double(out, row.v(i));
    }
    out += "],\"r\":";
    append_double(out, row.r());
    if (with_counts) {
      out += ",\"counts\":[";
      for (std::uint32_t i = 0; i < alphabet_.radix(); ++i) {
        if (i) out += ',';
        append_int(out, row.counts[i]);
      }
      out += ']';
    }
    out += '}';
  }
  out += "]}";
  return out;
}

StatsTrace run_stats(const DigitStream& stream,
                     const std::vector<std::int64_t>& checkpoints) {
  if (checkpoints.empty()) {
    throw std::invalid_argument("checkpoint list must be nonempty");
  }
  std::int64_t prev = 0;
  for (std::int64_t c : checkpoints) {
    if (c <= prev) {
      throw std::invalid_argument(
          "checkpoints must be strictly increasing and >= 1");
    }
    prev = c;
  }

  RunningCounts running(stream.alphabet().radix());
  std::vector<TraceRow> rows;
  rows.reserve(checkpoints.size());
  auto cursor = stream.cursor();
  for (std::int64_t target : checkpoints) {
    while (running.n < target) running.feed(cursor->next());
    rows.push_back(TraceRow{running.n, running.counts, running.digit_sum});
  }
  return StatsTrace(stream.alphabet(), std::move(rows));
}

LimitVerdict asymptotic_mean_verdict(const StatsTrace& trace, double tol) {
  require_enough_checkpoints(trace);
  std::vector<double> values;
  values.reserve(trace.rows().size());
  for (const auto& row : trace.rows()) values.push_back(row.r());
  return verdict_over(values, tol);
}

std::vector<LimitVerdict> frequency_verdicts(const StatsTrace& trace,
                                             double tol) {
  require_enough_checkpoints(trace);
  std::vector<LimitVerdict> verdicts;
  for (std::uint32_t digit = 0; digit < trace.alphabet().radix(); ++digit) {
    std::vector<double> values;
    values.reserve(trace.rows().size());
    for (const auto& row : trace.rows()) values.push_back(row.v(digit));
    verdicts.push_back(verdict_over(values, tol));
  }
  return verdicts;
}

double mean_from_frequencies(const FrequencyVector& tau) {
  double m = 0.0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    m += static_cast<double>(i) * tau[i];
  }
  return m;
}

double be_dimension(const FrequencyVector& tau, std::uint32_t radix) {
  if (tau.size() != radix) {
    throw std::domain_error(
        "frequency vector size must equal the radix for the dimension formula");
  }
  double entropy = 0.0;  // -sum tau ln tau, with 0 ln 0 = 0
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] > 0.0) entropy -= tau[i] * std::log(tau[i]);
  }
  return entropy / std::log(static_cast<double>(radix));
}

std::int64_t count_multiples_of_7(std::int64_t n) {
  if (n < 1) throw std::domain_error("count is defined for n >= 1");
  return n / 7;
}

std::int64_t count_congruent_1_mod_7(std::int64_t n) {
  if (n < 1) throw std::domain_error("count is defined for n >= 1");
  return (n - 1) / 7;
}

PowerSumRatios power_sum_ratios(double alpha, std::int64_t n) {
  if (!(alpha > 0.0)) throw std::domain_error("power-sum ratios need alpha > 0");
  if (n < 1) throw std::domain_error("power-sum ratios need n >= 1");

  const long double exponent = 1.0L + static_cast<long double>(alpha);
  const long double log_max =
      std::log(std::numeric_limits<long double>::max());
  const long double top_log =
      (exponent + 1.0L) * std::log(static_cast<long double>(n) + 1.0L);

  PowerSumRatios out;
  if (top_log < log_max - 8.0L) {
    long double sum = 0.0L;
    for (std::int64_t i = 1; i <= n; ++i) {
      sum += std::pow(static_cast<long double>(i), exponent);
    }
    out.next_term_ratio = static_cast<double>(
        std::pow(static_cast<long double>(n) + 1.0L, exponent) / sum);
    out.power_ratio = static_cast<double>(
        std::pow(static_cast<long double>(n), exponent + 1.0L) / sum);
    return out;
  }

  // Log-space fallback: log S_n = m + log(sum exp(log term - m)).
  const long double m = exponent * std::log(static_cast<long double>(n));
  long double acc = 0.0L;
  for (std::int64_t i = 1; i <= n; ++i) {
    acc += std::exp(exponent * std::log(static_cast<long double>(i)) - m);
  }
  const long double log_sum = m + std::log(acc);
  out.next_term_ratio = static_cast<double>(
      std::exp(exponent * std::log(static_cast<long double>(n) + 1.0L) - log_sum));
  out.power_ratio = static_cast<double>(std::exp(
      (exponent + 1.0L) * std::log(static_cast<long double>(n)) - log_sum));
  return out;
}

std::vector<std::int64_t> geometric_checkpoints(std::int64_t max_n) {
  if (max_n < 1) throw std::domain_error("max_n must be >= 1");
  std::vector<std::int64_t> out;
  for (int k = 0;; ++k) {
    const double value = std::ceil(std::pow(10.0, k / 8.0));
    if (!(value < static_cast<double>(max_n))) break;
    const auto n = static_cast<std::int64_t>(value);
    if (out.empty() || out.back() != n) out.push_back(n);
  }
  out.push_back(max_n);
  return out;
}

}  // namespace sadic
