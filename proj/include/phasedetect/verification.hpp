#pragma once

// Closed form vs truncated-Fock-space simulation, check by check.

#include <optional>
#include <string>
#include <vector>

namespace phasedetect::verification {

enum class Grid { Small, Full };

struct Options {
  Grid grid = Grid::Full;
  /// Replaces every check's own tolerance when set.
  std::optional<double> tolerance;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Largest deviation observed; compared against `tolerance`.
  double max_discrepancy = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  /// Set when the check threw instead of producing a number.
  std::string error;
};

std::vector<std::string> check_names();

std::vector<CheckResult> run(const Options& options);

/// Runs a single named check. Throws ValidationError for unknown names.
CheckResult run_one(const std::string& name, const Options& options);

}  // namespace phasedetect::verification
