#pragma once

// Reference computations used only by the tests. Each one takes a different
// route from the library code it checks (series summation, textbook matrix
// elements, brute-force scans), so agreement is evidence rather than
// tautology.

#include <cmath>
#include <complex>
#include <functional>
#include <utility>

namespace oracle {

using Complex = std::complex<double>;

/// <alpha|beta> by summing conj(<n|alpha>) <n|beta> term by term.
inline Complex coherent_overlap_series(Complex alpha, Complex beta, int terms = 200) {
  Complex sum = 0.0;
  Complex ta = std::exp(-0.5 * std::norm(alpha));  // <0|alpha>
  Complex tb = std::exp(-0.5 * std::norm(beta));
  for (int n = 0; n < terms; ++n) {
    sum += std::conj(ta) * tb;
    ta *= alpha / std::sqrt(n + 1.0);
    tb *= beta / std::sqrt(n + 1.0);
  }
  return sum;
}

/// Generalised Laguerre L_n^(k)(x) from the explicit finite sum.
inline double generalized_laguerre_sum(int n, int k, double x) {
  double sum = 0.0;
  for (int j = 0; j <= n; ++j) {
    double log_binom = std::lgamma(n + k + 1.0) - std::lgamma(n - j + 1.0) - std::lgamma(k + j + 1.0);
    double term = std::exp(log_binom - std::lgamma(j + 1.0)) * std::pow(x, j);
    sum += (j % 2 == 0) ? term : -term;
  }
  return sum;
}

/// <m|exp(beta a^dagger - beta* a)|n> from the Cahill-Glauber formula.
inline Complex displaced_fock_element(int m, int n, Complex beta) {
  const double x = std::norm(beta);
  if (m >= n) {
    double mag = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)) - 0.5 * x);
    return mag * std::pow(beta, m - n) * generalized_laguerre_sum(n, m - n, x);
  }
  double mag = std::exp(0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0)) - 0.5 * x);
  return mag * std::pow(-std::conj(beta), n - m) * generalized_laguerre_sum(m, n - m, x);
}

/// Poisson(mean) mass at n >= from, summing upward well past the mode.
inline double poisson_tail_direct(double mean, int from) {
  double sum = 0.0;
  for (int n = from; n < from + 2000; ++n) {
    sum += std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
  }
  return sum;
}

/// Minimum of f on [lo, hi] by evaluating `points` equally spaced samples.
inline std::pair<double, double> grid_scan_min(const std::function<double(double)>& f, double lo, double hi,
                                               int points) {
  double best_x = lo, best_f = f(lo);
  for (int i = 1; i < points; ++i) {
    double x = lo + (hi - lo) * i / (points - 1);
    double v = f(x);
    if (v < best_f) {
      best_f = v;
      best_x = x;
    }
  }
  return {best_x, best_f};
}

/// Plain bisection, independent of the library's root finder.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
