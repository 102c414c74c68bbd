// Command-line front end: run pipelines and write checkpoint traces, print
// class dimensions, and drive the verification battery.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sadic/sadic.hpp"

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StatsOptions {
  std::string pipeline;
  std::string checkpoints = "geometric";
  std::int64_t max_n = 0;  // 0: default per checkpoint kind
  double p = 1.0;
  double tol = 0.01;
  std::string format = "csv";
  std::string out;
  std::optional<std::uint64_t> seed;
  bool counts = false;
};

void apply_config_file(const std::string& path, StatsOptions& opt) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");

  for (const auto& [key, value] : doc.items()) {
    if (key == "pipeline") {
      if (!value.is_string()) throw ConfigError("pipeline: must be a string");
      opt.pipeline = value.get<std::string>();
    } else if (key == "checkpoints") {
      if (!value.is_object() || !value.contains("kind")) {
        throw ConfigError("checkpoints: must be an object with \"kind\"");
      }
      const auto kind = value["kind"].get<std::string>();
      if (kind == "geometric") {
        if (value.contains("max_n")) {
          if (!value["max_n"].is_number_integer() ||
              value["max_n"].get<std::int64_t>() < 1) {
            throw ConfigError("checkpoints.max_n: must be a positive integer");
          }
          opt.max_n = value["max_n"].get<std::int64_t>();
        }
      } else if (kind == "paper-l") {
        if (value.contains("n_max")) {
          if (!value["n_max"].is_number_integer() ||
              value["n_max"].get<std::int64_t>() < 1) {
            throw ConfigError("checkpoints.n_max: must be a positive integer");
          }
          opt.max_n = value["n_max"].get<std::int64_t>();
        }
        if (value.contains("p")) {
          if (!value["p"].is_number()) {
            throw ConfigError("checkpoints.p: must be a number");
          }
          opt.p = value["p"].get<double>();
        }
      } else {
        throw ConfigError(
            "checkpoints.kind: must be \"geometric\" or \"paper-l\"");
      }
      opt.checkpoints = kind;
    } else if (key == "tol") {
      if (!value.is_number() || value.get<double>() <= 0) {
        throw ConfigError("tol: must be a positive number");
      }
      opt.tol = value.get<double>();
    } else if (key == "format") {
      const auto format = value.get<std::string>();
      if (format != "csv" && format != "json") {
        throw ConfigError("format: must be \"csv\" or \"json\"");
      }
      opt.format = format;
    } else if (key == "out") {
      if (!value.is_string()) throw ConfigError("out: must be a string");
      opt.out = value.get<std::string>();
    } else if (key == "seed") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
        throw ConfigError("seed: must be a nonnegative integer");
      }
      opt.seed = value.get<std::uint64_t>();
    } else if (key == "counts") {
      if (!value.is_boolean()) throw ConfigError("counts: must be a boolean");
      opt.counts = value.get<bool>();
    } else {
      throw ConfigError("unknown config key \"" + key + "\"");
    }
  }
}

std::vector<std::int64_t> build_checkpoints(const StatsOptions& opt,
                                            std::ostream& notes) {
  if (opt.checkpoints == "geometric") {
    return sadic::geometric_checkpoints(opt.max_n > 0 ? opt.max_n : 1'000'000);
  }
  if (opt.checkpoints != "paper-l") {
    throw ConfigError("--checkpoints must be geometric or paper-l");
  }
  if (opt.max_n > 10) {
    throw ConfigError("paper-l n_max larger than 10 overflows 64-bit positions");
  }
  const int n_max = opt.max_n > 0 ? static_cast<int>(opt.max_n) : 3;
  const auto cp = sadic::oscillation_checkpoints(opt.p, n_max);
  std::vector<std::int64_t> merged;
  for (std::int64_t v : cp.l) {
    if (v >= 1) {
      merged.push_back(v);
    } else {
      notes << "note: dropped checkpoint at position " << v
            << " (the first construction block is empty)\n";
    }
  }
  for (std::int64_t v : cp.l_star) {
    if (v >= 1) merged.push_back(v);
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return merged;
}

void print_verdicts(const sadic::StatsTrace& trace, double tol,
                    std::ostream& os) {
  const auto frequency = sadic::frequency_verdicts(trace, tol);
  for (std::size_t i = 0; i < frequency.size(); ++i) {
    const auto& v = frequency[i];
    os << "digit " << i << ": " << (v.converged ? "converged" : "not converged")
       << " estimate=" << v.estimate << " spread=" << v.spread() << "\n";
  }
  const auto mean = sadic::asymptotic_mean_verdict(trace, tol);
  os << "mean: " << (mean.converged ? "converged" : "not converged")
     << " estimate=" << mean.estimate << " spread=" << mean.spread()
     << " (tol " << tol << ")\n";
}

int cmd_stats(const StatsOptions& opt) {
  if (opt.pipeline.empty()) {
    throw ConfigError("stats needs a pipeline (--pipeline or --config)");
  }
  sadic::ResolveOptions resolve_options;
  resolve_options.seed_override = opt.seed;
  const auto stream = sadic::run_pipeline(opt.pipeline, resolve_options);

  const bool to_stdout = opt.out.empty();
  auto& notes = to_stdout ? std::cerr : std::cout;
  const auto checkpoints = build_checkpoints(opt, notes);
  const auto trace = sadic::run_stats(stream, checkpoints);

  const std::string rendered =
      opt.format == "json" ? trace.to_json(opt.counts) : trace.to_csv(opt.counts);
  if (to_stdout) {
    std::cout << rendered;
    if (opt.format == "json") std::cout << "\n";
  } else {
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) throw IoError("cannot open output file " + opt.out);
    file << rendered;
    if (opt.format == "json") file << "\n";
    if (!file.flush()) throw IoError("failed writing " + opt.out);
  }
  if (trace.rows().size() >= 4) {
    print_verdicts(trace, opt.tol, notes);
  } else {
    notes << "note: fewer than 4 checkpoints, no convergence verdicts\n";
  }
  return 0;
}

double parse_tau_entry(const std::string& token) {
  const auto slash = token.find('/');
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(token.substr(0, slash));
      const double den = std::stod(token.substr(slash + 1));
      return num / den;
    }
    return std::stod(token);
  } catch (const std::exception&) {
    throw ConfigError("--tau entry '" + token + "' is not a number");
  }
}

int cmd_dimension(const std::string& tau_text, std::uint32_t radix) {
  std::vector<double> tau;
  std::size_t begin = 0;
  while (begin <= tau_text.size()) {
    const auto comma = tau_text.find(',', begin);
    const auto end = comma == std::string::npos ? tau_text.size() : comma;
    tau.push_back(parse_tau_entry(tau_text.substr(begin, end - begin)));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  const double dim =
      sadic::be_dimension(sadic::FrequencyVector(std::move(tau)), radix);
  std::printf("%.6f\n", dim);
  return 0;
}

int cmd_verify(const std::string& scale_text, std::optional<int> criterion,
               const std::string& out) {
  if (scale_text != "small" && scale_text != "full") {
    throw ConfigError("--scale must be small or full");
  }
  const auto scale = scale_text == "full" ? sadic::VerifyScale::full
                                          : sadic::VerifyScale::small;
  const auto report = sadic::run_verification(scale, criterion);
  for (const auto& r : report.results) {
    std::printf("%s %2d %s: %s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.details.c_str());
  }
  if (!out.empty()) {
    std::ofstream file(out, std::ios::binary);
    if (!file) throw IoError("cannot open report file " + out);
    file << report.to_json() << "\n";
    if (!file.flush()) throw IoError("failed writing " + out);
  }
  return report.all_pass() ? 0 : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"s-adic digit streams: pipelines, traces, and verification"};
  app.require_subcommand(1);

  StatsOptions stats_options;
  std::string config_path;
  auto* stats = app.add_subcommand("stats", "run a pipeline and emit a trace");
  stats->add_option("--pipeline", stats_options.pipeline, "pipeline expression");
  stats->add_option("--config", config_path, "JSON experiment config");
  auto* checkpoints_flag = stats->add_option(
      "--checkpoints", stats_options.checkpoints, "geometric | paper-l");
  auto* max_n_flag = stats->add_option(
      "--max-n", stats_options.max_n,
      "last geometric checkpoint, or n_max for paper-l");
  auto* p_flag =
      stats->add_option("--p", stats_options.p, "exponent for paper-l blocks");
  auto* tol_flag =
      stats->add_option("--tol", stats_options.tol, "verdict tolerance");
  auto* out_flag = stats->add_option("--out", stats_options.out, "output file");
  auto* format_flag =
      stats->add_option("--format", stats_options.format, "csv | json");
  std::int64_t seed_value = 0;
  auto* seed_flag = stats->add_option("--seed", seed_value,
                                      "override pseudorandom source seeds");
  auto* counts_flag = stats->add_flag("--counts", stats_options.counts,
                                      "include exact integer counts");

  std::string tau_text;
  std::uint32_t radix = 3;
  auto* dimension =
      app.add_subcommand("dimension", "Besicovitch-Eggleston class dimension");
  dimension->add_option("--tau", tau_text, "frequencies, e.g. 0.2,0.3,0.5 or 1/3,1/3,1/3")
      ->required();
  dimension->add_option("--s", radix, "alphabet radix");

  std::string scale = "small";
  int criterion_id = 0;
  std::string report_out;
  auto* verify = app.add_subcommand("verify", "run the reproduction battery");
  verify->add_option("--scale", scale, "small | full");
  auto* criterion_flag =
      verify->add_option("--criterion", criterion_id, "run a single criterion");
  verify->add_option("--out", report_out, "write a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (stats->parsed()) {
      StatsOptions opt;  // config file first, explicit flags on top
      if (!config_path.empty()) apply_config_file(config_path, opt);
      if (!stats_options.pipeline.empty()) opt.pipeline = stats_options.pipeline;
      if (checkpoints_flag->count()) opt.checkpoints = stats_options.checkpoints;
      if (max_n_flag->count()) opt.max_n = stats_options.max_n;
      if (p_flag->count()) opt.p = stats_options.p;
      if (tol_flag->count()) opt.tol = stats_options.tol;
      if (out_flag->count()) opt.out = stats_options.out;
      if (format_flag->count()) opt.format = stats_options.format;
      if (seed_flag->count()) {
        if (seed_value < 0) throw ConfigError("--seed must be >= 0");
        opt.seed = static_cast<std::uint64_t>(seed_value);
      }
      if (counts_flag->count()) opt.counts = true;
      if (opt.format != "csv" && opt.format != "json") {
        throw ConfigError("--format must be csv or json");
      }
      return cmd_stats(opt);
    }
    if (dimension->parsed()) return cmd_dimension(tau_text, radix);
    return cmd_verify(scale,
                      criterion_flag->count()
                          ? std::optional<int>(criterion_id)
                          : std::nullopt,
                      report_out);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}
