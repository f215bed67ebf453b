#pragma once

// Scalar root bracketing and 1-D minimisation.

#include <cmath>
#include <functional>
#include <optional>

#include "phasedetect/error.hpp"

namespace phasedetect::numerics {

struct Bracket {
  double lo;
  double hi;
};

/// Walks from `start` in steps of `step` until f changes sign; gives up after
/// max_steps.
std::optional<Bracket> scan_for_sign_change(const std::function<double(double)>& f, double start, double step,
                                            int max_steps);

/// Bisection on [lo, hi] until the bracket is narrower than `tol`. f(lo) and
/// f(hi) must differ in sign (or one of them be zero).
double bisect(const std::function<double(double)>& f, Bracket bracket, double tol);

struct Minimum {
  double x;
  double value;
};

/// Golden-section search for a minimum of a unimodal f on [lo, hi].
Minimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol,
                                int max_iterations = 500);

/// Central finite difference of f at x.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace phasedetect::numerics
