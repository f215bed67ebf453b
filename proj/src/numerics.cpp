#include "phasedetect/numerics.hpp"

#include <utility>

namespace phasedetect::numerics {

std::optional<Bracket> scan_for_sign_change(const std::function<double(double)>& f, double start, double step,
                                            int max_steps) {
  double x0 = start;
  double f0 = f(x0);
  for (int i = 1; i <= max_steps; ++i) {
    double x1 = start + i * step;
    double f1 = f(x1);
    if (f0 == 0.0) return Bracket{x0, x0};
    if ((f0 < 0.0) != (f1 < 0.0) || f1 == 0.0) return Bracket{x0, x1};
    x0 = x1;
    f0 = f1;
  }
  return std::nullopt;
}

double bisect(const std::function<double(double)>& f, Bracket bracket, double tol) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) throw ComputationError("bisect: endpoints do not bracket a root");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
    double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Minimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol,
                                int max_iterations) {
  if (!(hi > lo)) throw ValidationError("golden_section_minimize: empty interval");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iterations && (hi - lo) > tol; ++i) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  if ((hi - lo) > tol) throw ComputationError("golden_section_minimize: did not reach tolerance");
  double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

}  // namespace phasedetect::numerics
