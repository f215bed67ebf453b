#include <charconv>
#include <ostream>
#include <string>

#include "phasedetect/analytic.hpp"
#include "phasedetect/cli.hpp"
#include "phasedetect/csv.hpp"
#include "phasedetect/fock_space.hpp"

namespace phasedetect::cli {

namespace {

std::string short_number(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc{} ? std::string(buf, end) : std::string("?");
}

std::vector<std::string> eta_columns(const std::string& prefix, const std::vector<double>& etas) {
  std::vector<std::string> header = {"alpha"};
  for (double eta : etas) header.push_back(prefix + "_eta_" + short_number(eta));
  return header;
}

// Photon statistics of |1> and D(1)|1>; D(1)|1> has no one-photon component.
void figure2(const FigureOptions& options, std::ostream& out) {
  const double delta = std::sqrt(analytic::laguerre_first_root(1));
  FockSpace space(std::max(recommend_dim(1.0, delta), options.max_photons + 1));
  PureState initial = fock_state(space, 1);
  PureState shifted = apply(displacement(space, delta), initial).state;
  auto p0 = photon_distribution(initial);
  auto p1 = photon_distribution(shifted);
  csv::Writer csv(out, {"n", "p_initial", "p_displaced"});
  for (int n = 0; n <= options.max_photons; ++n) {
    csv.row(std::vector<csv::Cell>{static_cast<long long>(n), p0[n], p1[n]});
  }
}

void figure3(const FigureOptions& options, std::ostream& out) {
  csv::Writer csv(out, {"delta", "parity_alpha_1.5", "parity_alpha_3"});
  for (double delta : linspace(0.0, 2.5, options.steps.value_or(500))) {
    csv.row({delta, analytic::cat_parity(1.5, delta, 1.0), analytic::cat_parity(3.0, delta, 1.0)});
  }
}

void figure4(const FigureOptions& options, std::ostream& out) {
  csv::Writer csv(out, {"alpha", "delta", "parity", "p_even", "p_odd"});
  for (double alpha : linspace(0.5, 4.0, options.steps.value_or(200))) {
    auto best = analytic::minimize_cat_parity(alpha, 1.0);
    csv.row({alpha, best.delta, best.parity, 0.5 * (1.0 + best.parity), 0.5 * (1.0 - best.parity)});
  }
}

void figure5(const FigureOptions& options, std::ostream& out) {
  csv::Writer csv(out, eta_columns("p_fp", options.etas));
  for (double alpha : linspace(0.5, 4.0, options.steps.value_or(200))) {
    std::vector<double> row = {alpha};
    for (double eta : options.etas) row.push_back(analytic::cat_false_positive_product(alpha, eta));
    csv.row(row);
  }
}

// False-negative rate at the parity-minimising displacement for each eta.
void figure6(const FigureOptions& options, std::ostream& out) {
  csv::Writer csv(out, eta_columns("p_fn", options.etas));
  for (double alpha : linspace(0.5, 4.0, options.steps.value_or(200))) {
    std::vector<double> row = {alpha};
    for (double eta : options.etas) {
      auto best = analytic::minimize_cat_parity(alpha, eta);
      row.push_back(analytic::cat_error_rates(alpha, best.delta, eta).p_fn);
    }
    csv.row(row);
  }
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw ValidationError("grid needs at least one point");
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

void write_figure(int id, const FigureOptions& options, std::ostream& out) {
  if (options.steps && *options.steps < 2) throw ValidationError("figure grids need --steps >= 2");
  for (double eta : options.etas) {
    if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("figure eta values must lie in (0, 1]");
  }
  switch (id) {
    case 2: return figure2(options, out);
    case 3: return figure3(options, out);
    case 4: return figure4(options, out);
    case 5: return figure5(options, out);
    case 6: return figure6(options, out);
    default: throw ValidationError("unknown figure id " + std::to_string(id) + " (expected 2..6)");
  }
}

}  // namespace phasedetect::cli
