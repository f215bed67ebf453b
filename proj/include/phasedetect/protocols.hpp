#pragma once

// End-to-end evaluation of a detection scenario: phase -> displacement ->
// error rates, through the closed forms and (optionally) through a full
// truncated-Fock-space simulation of the lossy states.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phasedetect/analytic.hpp"

namespace phasedetect {

struct NumericOptions {
  bool with_oracle = false;
  std::optional<int> dim;  // overrides recommend_dim when set
  double tail_tol = 1e-12;
};

struct Evaluation {
  double phi = 0.0;
  double delta = 0.0;           // sqrt(N) phi e^r
  double delta_detected = 0.0;  // sqrt(eta) delta
  std::optional<ErrorRates> analytic;
  std::optional<ErrorRates> numeric;
  /// max(|dp_fp|, |dp_fn|) between the two paths, when both ran.
  std::optional<double> discrepancy;
  int dim = 0;  // basis size used by the numeric path, 0 if it did not run

  /// The analytic rates when available, otherwise the numeric ones.
  const ErrorRates& rates() const;
};

/// Error rates at phase `phi`. The Fock strategy declares "no shift" on
/// exactly n clicks, the cat strategy on an even count. Lossy Fock probes
/// with n != 1 have no closed form: without the oracle this throws
/// ComputationError, with it only the numeric rates are reported.
Evaluation evaluate(const ProtocolParams& params, double phi, const NumericOptions& options = {});

struct OperatingPoint {
  enum class Source { AnalyticThreshold, ParityMinimized };

  double phi0 = 0.0;
  /// Displacement at the detector, sqrt(eta) sqrt(N) phi0 e^r.
  double delta = 0.0;
  Source source = Source::AnalyticThreshold;
};

std::string_view to_string(OperatingPoint::Source source);

/// Fock n = 1: delta'^2 = 1. Lossless Fock n >= 2: delta^2 = R_n.
/// Cat: minimum of the lossy parity over delta' in (0, pi / (2 alpha')).
OperatingPoint optimize_delta(const ProtocolParams& params);

/// Cat operating point at the first overlap zero instead of the parity minimum.
OperatingPoint cat_overlap_zero_point(const ProtocolParams& params);

enum class SweepAxis { Alpha, Eta, N, Delta, R };

std::string_view to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(std::string_view name);

struct SweepPoint {
  double value = 0.0;
  /// Absent on the delta axis, where points are evaluated at the given delta.
  std::optional<OperatingPoint> operating_point;
  Evaluation evaluation;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::Alpha;
  std::vector<double> values;
  std::vector<SweepPoint> points;  // same order as values
  std::optional<double> max_discrepancy;
};

/// Thrown by sweep() when a point fails; carries the point index.
class SweepError : public Error {
 public:
  SweepError(std::size_t index, bool validation, const std::string& what)
      : Error(what), index_(index), validation_(validation) {}

  std::size_t index() const { return index_; }
  bool is_validation() const { return validation_; }

 private:
  std::size_t index_;
  bool validation_;
};

/// For each value, sets the axis field of `base` and evaluates: on the delta
/// axis directly at that delta, on the other axes at optimize_delta().
/// Points run concurrently on up to `threads` workers (0 = hardware).
SweepResult sweep(const ProtocolParams& base, SweepAxis axis, const std::vector<double>& values,
                  const NumericOptions& options = {}, unsigned threads = 0);

}  // namespace phasedetect
