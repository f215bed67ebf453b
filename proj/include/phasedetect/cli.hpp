#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace phasedetect::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 1,
  kComputationError = 2,
  kVerificationFailure = 3,
};

/// Entry point of the `phasedetect` tool. CSV goes to `out` unless --out is
/// given; diagnostics and usage text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct FigureOptions {
  std::optional<int> steps;
  std::vector<double> etas = {1.0, 0.98, 0.95, 0.9, 0.8};
  int max_photons = 10;  // figure 2 rows
};

/// Writes the data behind figure `id` (2..6) as CSV.
void write_figure(int id, const FigureOptions& options, std::ostream& out);

/// n evenly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace phasedetect::cli
