#pragma once

// The reproduction battery: one check per headline claim, runnable at two
// scales. "full" runs the million-digit experiments; "small" cuts the
// pseudorandom runs to 1e5 digits for a quick smoke pass. Every tolerance
// is fixed here, in code.

#include <optional>
#include <string>
#include <vector>

namespace sadic {

enum class VerifyScale { small, full };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
};

struct VerifyReport {
  VerifyScale scale = VerifyScale::small;
  std::vector<CriterionResult> results;

  bool all_pass() const;
  std::string to_json() const;
};

struct CriterionInfo {
  int id;
  const char* name;
  const char* summary;
};

/// The fixed list of criteria, ordered by id.
const std::vector<CriterionInfo>& verification_catalog();

/// Runs every criterion (or a single one) at the given scale. Throws
/// std::invalid_argument for an unknown criterion id.
VerifyReport run_verification(VerifyScale scale,
                              std::optional<int> only_criterion = {});

}  // namespace sadic
