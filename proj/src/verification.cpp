#include "phasedetect/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "phasedetect/analytic.hpp"
#include "phasedetect/fock_space.hpp"
#include "phasedetect/loss_channel.hpp"
#include "phasedetect/numerics.hpp"
#include "phasedetect/protocols.hpp"

namespace phasedetect::verification {

namespace {

using Values = std::vector<double>;

struct Sets {
  std::vector<int> fock_n;
  Values alphas;         // acceptance grid {1, 2, 3}
  Values deltas;         // acceptance grid {0.1, 0.4, 0.8}
  Values etas;           // acceptance grid {0.5, 0.9, 0.98}
  Values zero_alphas;    // {1.5, 2, 3}
  Values probe_deltas;   // {0.1, 0.5, 1, 2}
  Values sweep_alphas;
  Values wide_etas;      // {0.5, 0.8, 0.9, 0.95, 0.98, 1}
};

Sets sets_for(Grid grid) {
  if (grid == Grid::Small) {
    return {{1, 2, 5},        {1.0, 3.0},   {0.4},           {0.5, 0.98},   {1.5, 3.0},
            {0.5, 2.0},       {1.0, 2.5},   {0.8, 1.0}};
  }
  return {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
          {1.0, 2.0, 3.0},
          {0.1, 0.4, 0.8},
          {0.5, 0.9, 0.98},
          {1.5, 2.0, 3.0},
          {0.1, 0.5, 1.0, 2.0},
          {0.5, 1.0, 1.5, 2.0, 2.5, 3.0},
          {0.5, 0.8, 0.9, 0.95, 0.98, 1.0}};
}

struct Check {
  const char* name;
  double tolerance;
  std::function<double(const Sets&)> metric;
};

double track(double current, double candidate) { return std::max(current, std::abs(candidate)); }

FockSpace space_for(double amplitude, double delta) { return FockSpace(recommend_dim(amplitude, delta)); }

// --- acceptance-grade checks ---------------------------------------------

double fock_orthogonality(const Sets& s) {
  double worst = 0.0;
  for (int n : s.fock_n) {
    const double delta = std::sqrt(analytic::laguerre_first_root(n));
    FockSpace space = space_for(std::sqrt(static_cast<double>(n)), delta);
    worst = track(worst, std::abs(displacement(space, delta).element(n, n)));
  }
  return worst;
}

double fock1_closed_form(const Sets& s) {
  double worst = 0.0;
  (void)s;
  for (double eta : {0.8, 0.9, 0.98}) {
    auto rates = analytic::fock1_error_rates(1.0 / std::sqrt(eta), eta);
    worst = track(worst, rates.p_fp - (1.0 - eta));
    worst = track(worst, rates.p_fn - (1.0 - eta) / std::numbers::e);
  }
  return worst;
}

double fock1_kraus(const Sets&) {
  double worst = 0.0;
  for (double eta : {0.8, 0.9, 0.98}) {
    const double delta = 1.0 / std::sqrt(eta);
    FockSpace space = space_for(1.0, delta);
    LossChannel channel(eta, space);
    auto rho0 = apply_loss(channel, fock_state(space, 1));
    auto rho_d = apply_loss(channel, apply(displacement(space, delta), fock_state(space, 1)).state);
    auto rates = analytic::fock1_error_rates(delta, eta);
    worst = track(worst, (1.0 - rho0.element(1, 1).real()) - rates.p_fp);
    worst = track(worst, rho_d.element(1, 1).real() - rates.p_fn);
  }
  return worst;
}

double cat_zero_closed_form(const Sets& s) {
  double worst = 0.0;
  for (double alpha : s.zero_alphas)
    for (int k : {0, 1}) worst = track(worst, analytic::cat_overlap(alpha, analytic::cat_overlap_zero(alpha, k)));
  return worst;
}

double cat_zero_numeric(const Sets& s) {
  double worst = 0.0;
  for (double alpha : s.zero_alphas) {
    for (int k : {0, 1}) {
      const double delta = analytic::cat_overlap_zero(alpha, k);
      FockSpace space = space_for(alpha, delta);
      PureState cat = cat_state(space, alpha);
      worst = track(worst, std::abs(overlap(cat, apply(displacement(space, delta), cat).state)));
    }
  }
  return worst;
}

double lossy_cat_parity_distribution(const Sets& s) {
  double worst = 0.0;
  for (double alpha : s.alphas) {
    for (double delta : s.deltas) {
      FockSpace space = space_for(alpha, delta);
      PureState cat = cat_state(space, alpha);
      PureState shifted = apply(displacement(space, delta), cat).state;
      for (double eta : s.etas) {
        auto rho = apply_loss(LossChannel(eta, space), shifted);
        worst = track(worst, parity_expectation(rho) - analytic::cat_parity(alpha, delta, eta));
        auto p = photon_distribution(rho);
        for (int n = 0; n < space.dim(); ++n) worst = track(worst, p[n] - analytic::cat_pn(alpha, delta, eta, n));
      }
    }
  }
  return worst;
}

double cat_false_positive_identity(const Sets& s) {
  double worst = 0.0;
  for (double alpha : s.alphas)
    for (double eta : s.etas)
      worst = track(worst, analytic::cat_error_rates(alpha, 0.1, eta).p_fp -
                               analytic::cat_false_positive_product(alpha, eta));
  return worst;
}

// --- module invariants ----------------------------------------------------

double displaced_fock_laguerre(const Sets& s) {
  double worst = 0.0;
  for (double delta : s.probe_deltas) {
    FockSpace space = space_for(std::sqrt(10.0), delta);
    auto d = displacement(space, delta);
    for (int n = 0; n <= 10; ++n) worst = track(worst, std::abs(d.element(n, n) - analytic::fock_overlap(n, delta)));
  }
  return worst;
}

double unitarity(const Sets& s) {
  double worst = 0.0;
  FockSpace space(64);
  for (double delta : s.probe_deltas) worst = track(worst, unitarity_defect(displacement(space, delta), 32));
  for (double r : {0.25, 0.5, 1.0}) worst = track(worst, unitarity_defect(squeeze(space, r), 32));
  return worst;
}

// S^dagger a S = a cosh r + a^dagger sinh r and S^dagger D(A phi) S = D(A phi e^r),
// on the lowest dim/8 levels, which the squeeze keeps inside the cutoff.
double squeeze_conjugation(const Sets&) {
  FockSpace space(128);
  const int block = space.dim() / 8;
  const double r = 0.5;
  auto s = squeeze(space, r);
  auto a = annihilation(space);
  auto ad = creation(space);
  CMatrix lhs = (s.adjoint() * a * s).matrix();
  CMatrix rhs = a.matrix() * std::cosh(r) + ad.matrix() * std::sinh(r);
  double worst = block_difference(lhs, rhs, block);
  const double amp = 5.0, phi = 0.01;
  CMatrix sds = (s.adjoint() * displacement(space, amp * phi) * s).matrix();
  worst = std::max(worst, block_difference(sds, displacement(space, amp * phi * std::exp(r)).matrix(), block));
  return worst;
}

double cat_evenness(const Sets& s) {
  double worst = 0.0;
  for (double alpha : s.sweep_alphas) {
    PureState cat = cat_state(space_for(alpha, 0.0), alpha);
    for (int n = 1; n < cat.dim(); n += 2) worst = track(worst, std::abs(cat.amplitude(n)));
  }
  return worst;
}

double kraus_completeness(const Sets& s) {
  double worst = 0.0;
  for (double eta : s.wide_etas) worst = track(worst, LossChannel(eta, FockSpace(40)).completeness_defect());
  return worst;
}

double loss_trace_positivity(const Sets& s) {
  double worst = 0.0;
  for (double alpha : s.alphas) {
    FockSpace space = space_for(alpha, 0.8);
    PureState shifted = apply(displacement(space, 0.8), cat_state(space, alpha)).state;
    for (double eta : s.wide_etas) {
      auto rho = apply_loss(LossChannel(eta, space), shifted);
      worst = track(worst, rho.matrix().trace().real() - 1.0);
      Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
      worst = track(worst, std::min(0.0, solver.eigenvalues().minCoeff()));
    }
  }
  return worst;
}

double loss_composition(const Sets& s) {
  double worst = 0.0;
  for (double alpha : s.alphas) {
    FockSpace space = space_for(alpha, 0.4);
    PureState shifted = apply(displacement(space, 0.4), cat_state(space, alpha)).state;
    for (auto [e1, e2] : {std::pair{0.9, 0.8}, std::pair{0.5, 0.98}}) {
      auto twice = apply_loss(LossChannel(e2, space), apply_loss(LossChannel(e1, space), shifted));
      auto once = apply_loss(LossChannel(e1 * e2, space), shifted);
      worst = track(worst, trace_distance(twice, once));
    }
  }
  return worst;
}

double kraus_vs_purification(const Sets&) {
  double worst = 0.0;
  FockSpace space(14);
  PureState probe = apply(displacement(space, 0.5), fock_state(space, 2)).state;
  PureState cat_in = cat_state(space, 0.8);
  for (double eta : {0.5, 0.9, 0.98}) {
    LossChannel channel(eta, space);
    worst = track(worst, trace_distance(apply_loss(channel, probe), apply_loss_purified(channel, probe)));
    worst = track(worst, trace_distance(apply_loss(channel, cat_in), apply_loss_purified(channel, cat_in)));
  }
  return worst;
}

double lossy_fock1_vs_kraus(const Sets& s) {
  double worst = 0.0;
  for (double delta : s.probe_deltas) {
    FockSpace space = space_for(1.0, delta);
    PureState shifted = apply(displacement(space, delta), fock_state(space, 1)).state;
    for (double eta : s.etas) {
      worst = track(worst, trace_distance(lossy_displaced_fock1(space, delta, eta),
                                          apply_loss(LossChannel(eta, space), shifted)));
    }
  }
  return worst;
}

double lossy_cat_vs_kraus(const Sets& s) {
  double worst = 0.0;
  for (double alpha : s.alphas) {
    for (double delta : s.deltas) {
      FockSpace space = space_for(alpha, delta);
      PureState shifted = apply(displacement(space, delta), cat_state(space, alpha)).state;
      for (double eta : s.etas) {
        worst = track(worst, trace_distance(lossy_displaced_cat(space, alpha, delta, eta),
                                            apply_loss(LossChannel(eta, space), shifted)));
      }
    }
  }
  return worst;
}

double cat_overlap_numeric(const Sets& s) {
  double worst = 0.0;
  for (double alpha : s.sweep_alphas) {
    for (double delta : s.probe_deltas) {
      FockSpace space = space_for(alpha, delta);
      PureState cat = cat_state(space, alpha);
      Complex numeric = overlap(cat, apply(displacement(space, delta), cat).state);
      worst = track(worst, std::abs(numeric - analytic::cat_overlap(alpha, delta)));
    }
  }
  return worst;
}

double fock1_stationarity(const Sets& s) {
  double worst = 0.0;
  for (double eta : s.wide_etas) {
    // p_fn as a function of x = delta'^2.
    auto p_fn = [eta](double x) { return analytic::fock1_error_rates(std::sqrt(x / eta), eta).p_fn; };
    worst = track(worst, numerics::central_difference(p_fn, 1.0, 1e-5));
  }
  return worst;
}

double parity_bounds(const Sets& s) {
  double worst = 0.0;
  for (double alpha : s.sweep_alphas)
    for (double eta : s.wide_etas)
      for (int i = 0; i <= 40; ++i) {
        double excess = std::abs(analytic::cat_parity(alpha, 0.05 * i, eta)) - 1.0;
        worst = std::max(worst, excess);
      }
  return worst;
}

double cat_pn_sums(const Sets& s) {
  double worst = 0.0;
  for (double alpha : s.alphas)
    for (double delta : s.deltas)
      for (double eta : s.etas) {
        double total = 0.0, signed_total = 0.0;
        for (int n = 0; n <= 150; ++n) {
          double p = analytic::cat_pn(alpha, delta, eta, n);
          total += p;
          signed_total += (n % 2 == 0) ? p : -p;
        }
        worst = track(worst, total - 1.0);
        worst = track(worst, signed_total - analytic::cat_parity(alpha, delta, eta));
      }
  return worst;
}

double sweep_dual_path(const Sets& s) {
  NumericOptions options;
  options.with_oracle = true;
  double worst = 0.0;
  for (double eta : {1.0, 0.9}) {
    auto result = sweep(ProtocolParams::cat(2.0, eta), SweepAxis::Alpha, s.sweep_alphas, options);
    worst = std::max(worst, result.max_discrepancy.value_or(1.0));
  }
  auto fock = sweep(ProtocolParams::fock(1), SweepAxis::Eta, s.wide_etas, options);
  return std::max(worst, fock.max_discrepancy.value_or(1.0));
}

const std::vector<Check>& checks() {
  static const std::vector<Check> all = {
      {"fock_orthogonality", 1e-8, fock_orthogonality},
      {"fock1_operating_point_closed_form", 1e-12, fock1_closed_form},
      {"fock1_operating_point_kraus", 1e-8, fock1_kraus},
      {"cat_overlap_zero_closed_form", 1e-12, cat_zero_closed_form},
      {"cat_overlap_zero_numeric", 1e-8, cat_zero_numeric},
      {"lossy_cat_parity_and_distribution", 1e-8, lossy_cat_parity_distribution},
      {"cat_false_positive_product_identity", 1e-12, cat_false_positive_identity},
      {"displaced_fock_diagonal_vs_laguerre", 1e-8, displaced_fock_laguerre},
      {"unitarity_low_block", 1e-8, unitarity},
      {"squeeze_conjugation_low_block", 1e-8, squeeze_conjugation},
      {"cat_odd_amplitudes_zero", 0.0, cat_evenness},
      {"kraus_completeness", 1e-9, kraus_completeness},
      {"loss_trace_and_positivity", 1e-9, loss_trace_positivity},
      {"loss_composition", 1e-8, loss_composition},
      {"kraus_vs_purification", 1e-9, kraus_vs_purification},
      {"lossy_fock1_vs_kraus", 1e-9, lossy_fock1_vs_kraus},
      {"lossy_cat_vs_kraus", 1e-8, lossy_cat_vs_kraus},
      {"cat_overlap_vs_numeric", 1e-8, cat_overlap_numeric},
      {"fock1_stationarity", 1e-8, fock1_stationarity},
      {"cat_parity_bounds", 0.0, parity_bounds},
      {"cat_pn_normalisation_and_parity", 1e-10, cat_pn_sums},
      {"sweep_dual_path", 1e-6, sweep_dual_path},
  };
  return all;
}

CheckResult execute(const Check& check, const Options& options) {
  CheckResult result;
  result.name = check.name;
  result.tolerance = options.tolerance.value_or(check.tolerance);
  const auto start = std::chrono::steady_clock::now();
  try {
    result.max_discrepancy = check.metric(sets_for(options.grid));
    result.passed = result.max_discrepancy <= result.tolerance;
  } catch (const std::exception& e) {
    result.error = e.what();
    result.passed = false;
    result.max_discrepancy = std::numeric_limits<double>::quiet_NaN();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& c : checks()) names.emplace_back(c.name);
  return names;
}

std::vector<CheckResult> run(const Options& options) {
  std::vector<CheckResult> results;
  for (const auto& c : checks()) results.push_back(execute(c, options));
  return results;
}

CheckResult run_one(const std::string& name, const Options& options) {
  for (const auto& c : checks())
    if (name == c.name) return execute(c, options);
  throw ValidationError("unknown verification check '" + name + "'");
}

}  // namespace phasedetect::verification
