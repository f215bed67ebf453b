#include "phasedetect/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "phasedetect/numerics.hpp"

namespace phasedetect {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPriorTol = 1e-12;

void require_eta(double eta, const char* where) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    std::ostringstream msg;
    msg << where << ": eta must lie in (0, 1], got " << eta;
    throw ValidationError(msg.str());
  }
}

void require_positive_alpha(double alpha, const char* where) {
  if (!(alpha > 0.0)) throw ValidationError(std::string(where) + ": alpha must be > 0");
}

double cat_norm(double alpha) { return 2.0 * (1.0 + std::exp(-2.0 * alpha * alpha)); }

}  // namespace

std::string_view to_string(Family family) { return family == Family::Fock ? "fock" : "cat"; }

Family family_from_string(std::string_view name) {
  if (name == "fock") return Family::Fock;
  if (name == "cat") return Family::Cat;
  throw ValidationError("unknown state family '" + std::string(name) + "' (expected fock or cat)");
}

ProtocolParams ProtocolParams::fock(int n, double eta, double r, double photons) {
  ProtocolParams p;
  p.family = Family::Fock;
  p.n = n;
  p.eta = eta;
  p.r = r;
  p.photons = photons;
  return p;
}

ProtocolParams ProtocolParams::cat(double alpha, double eta, double r, double photons) {
  ProtocolParams p;
  p.family = Family::Cat;
  p.alpha = alpha;
  p.eta = eta;
  p.r = r;
  p.photons = photons;
  return p;
}

void ProtocolParams::validate() const {
  if (family == Family::Fock && n < 1) throw ValidationError("Fock probe needs n >= 1");
  if (family == Family::Cat) require_positive_alpha(alpha, "cat probe");
  require_eta(eta, "protocol");
  if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("squeeze factor r must be finite and >= 0");
  if (!(photons > 0.0) || !std::isfinite(photons)) throw ValidationError("photon number N must be finite and > 0");
  if (!(p0 >= 0.0 && p0 <= 1.0 && p_delta >= 0.0 && p_delta <= 1.0)) {
    throw ValidationError("priors must lie in [0, 1]");
  }
  if (std::abs(p0 + p_delta - 1.0) > kPriorTol) throw ValidationError("priors p0 + p_delta must sum to 1");
}

double ProtocolParams::delta_from_phi(double phi) const { return std::sqrt(photons) * phi * std::exp(r); }
double ProtocolParams::phi_from_delta(double delta) const { return delta * std::exp(-r) / std::sqrt(photons); }

namespace analytic {

double laguerre(int n, double x) {
  if (n < 0) throw ValidationError("laguerre: n must be >= 0");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre_first_root(int n, double tol) {
  if (n < 1) throw ValidationError("laguerre_first_root: L_0 has no roots");
  // Step R_1 / n; consecutive small roots of L_n are several times 1/n apart.
  auto f = [n](double x) { return laguerre(n, x); };
  auto bracket = numerics::scan_for_sign_change(f, 0.0, 1.0 / n, 100 * n);
  if (!bracket) throw ComputationError("laguerre_first_root: no sign change found");
  return numerics::bisect(f, *bracket, tol);
}

double fock_overlap(int n, double delta) {
  const double x = delta * delta;
  return laguerre(n, x) * std::exp(-0.5 * x);
}

double cat_overlap(double alpha, double delta) {
  return 2.0 * std::exp(-0.5 * delta * delta) / cat_norm(alpha) *
         (std::cos(2.0 * alpha * delta) + std::exp(-2.0 * alpha * alpha));
}

double cat_overlap_zero(double alpha, int k) {
  require_positive_alpha(alpha, "cat_overlap_zero");
  if (k < 0) throw ValidationError("cat_overlap_zero: k must be >= 0");
  return (std::acos(-std::exp(-2.0 * alpha * alpha)) + 2.0 * kPi * k) / (2.0 * alpha);
}

double cat_overlap_zero_approx(double alpha) {
  require_positive_alpha(alpha, "cat_overlap_zero_approx");
  return kPi / (4.0 * alpha);
}

double threshold_phase(const ProtocolParams& params) {
  params.validate();
  const double scale = std::exp(-params.r) / std::sqrt(params.eta * params.photons);
  if (params.family == Family::Fock) return std::sqrt(laguerre_first_root(params.n)) * scale;
  return cat_overlap_zero(params.alpha, 0) * scale;
}

double cat_threshold_phase_approx(const ProtocolParams& params) {
  params.validate();
  if (params.family != Family::Cat) throw ValidationError("cat_threshold_phase_approx: needs a cat probe");
  return cat_overlap_zero_approx(params.alpha) * std::exp(-params.r) / std::sqrt(params.eta * params.photons);
}

double helstrom(double p0, double p_delta, double overlap_sq) {
  if (!(p0 >= 0.0 && p_delta >= 0.0 && p0 <= 1.0 && p_delta <= 1.0)) {
    throw ValidationError("helstrom: priors must lie in [0, 1]");
  }
  double arg = 1.0 - 4.0 * p0 * p_delta * overlap_sq;
  if (arg < -1e-12) {
    std::ostringstream msg;
    msg << "helstrom: inconsistent inputs, 1 - 4 p0 p_delta |<.|.>|^2 = " << arg;
    throw ValidationError(msg.str());
  }
  return 0.5 * (1.0 - std::sqrt(std::max(arg, 0.0)));
}

ErrorRates fock1_error_rates(double delta, double eta) {
  require_eta(eta, "fock1_error_rates");
  const double d2 = eta * delta * delta;
  ErrorRates rates;
  rates.p_fp = 1.0 - eta;
  rates.p_fn = (eta * (1.0 - d2) * (1.0 - d2) + (1.0 - eta) * d2) * std::exp(-d2);
  const double ov = fock_overlap(1, delta);
  rates.helstrom = helstrom(0.5, 0.5, ov * ov);
  return rates;
}

ErrorRates fock_lossless_error_rates(int n, double delta) {
  if (n < 0) throw ValidationError("fock_lossless_error_rates: n must be >= 0");
  const double ov = fock_overlap(n, delta);
  ErrorRates rates;
  rates.p_fp = 0.0;
  rates.p_fn = ov * ov;
  rates.helstrom = helstrom(0.5, 0.5, ov * ov);
  return rates;
}

double cat_parity(double alpha, double delta, double eta) {
  require_eta(eta, "cat_parity");
  const double a2 = eta * alpha * alpha;
  const double ad = eta * alpha * delta;  // alpha' delta'
  const double d2 = eta * delta * delta;
  const double coherence = std::exp(-2.0 * (1.0 - eta) * alpha * alpha);
  return 2.0 * std::exp(-2.0 * d2) / cat_norm(alpha) * (coherence * std::cos(4.0 * ad) + std::exp(-2.0 * a2));
}

double cat_parity_unshifted(double alpha, double eta) {
  require_eta(eta, "cat_parity_unshifted");
  const double coherence = std::exp(-2.0 * (1.0 - eta) * alpha * alpha);
  return 2.0 / cat_norm(alpha) * (coherence + std::exp(-2.0 * eta * alpha * alpha));
}

ErrorRates cat_error_rates(double alpha, double delta, double eta) {
  ErrorRates rates;
  rates.p_fp = 0.5 * (1.0 - cat_parity_unshifted(alpha, eta));
  rates.p_fn = 0.5 * (1.0 + cat_parity(alpha, delta, eta));
  const double ov = cat_overlap(alpha, delta);
  rates.helstrom = helstrom(0.5, 0.5, ov * ov);
  return rates;
}

double cat_false_positive_product(double alpha, double eta) {
  require_eta(eta, "cat_false_positive_product");
  // -expm1 keeps both factors accurate when they are small.
  const double bath = -std::expm1(-2.0 * (1.0 - eta) * alpha * alpha);
  const double signal = -std::expm1(-2.0 * eta * alpha * alpha);
  return bath * signal / cat_norm(alpha);
}

BaselinePhaseErrors baseline_phase_errors(double photons, double r) {
  if (!(photons > 0.0)) throw ValidationError("baseline_phase_errors: N must be > 0");
  const double snl = 1.0 / (2.0 * std::sqrt(photons));
  return {snl, snl * std::exp(-r)};
}

double cat_pn(double alpha, double delta, double eta, int n) {
  require_eta(eta, "cat_pn");
  if (n < 0) throw ValidationError("cat_pn: n must be >= 0");
  const double root_eta = std::sqrt(eta);
  const double a = root_eta * alpha;
  const double d = root_eta * delta;
  const double s = a * a + d * d;
  const double coherence = std::exp(-2.0 * (1.0 - eta) * alpha * alpha);
  const double prefactor = 2.0 / cat_norm(alpha);
  if (s == 0.0) return n == 0 ? prefactor * (1.0 + coherence) : 0.0;
  // [-(a + i d)^2]^n = (-1)^n s^n e^{2 i n theta}, theta = arg(a + i d).
  const double theta = std::atan2(d, a);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double log_poisson = -s + n * std::log(s) - std::lgamma(n + 1.0);
  return prefactor * std::exp(log_poisson) * (1.0 + coherence * sign * std::cos(2.0 * a * d + 2.0 * n * theta));
}

ParityMinimum minimize_cat_parity(double alpha, double eta, double tol) {
  require_positive_alpha(alpha, "minimize_cat_parity");
  require_eta(eta, "minimize_cat_parity");
  const double root_eta = std::sqrt(eta);
  const double alpha_det = root_eta * alpha;
  auto parity_of_detected = [&](double delta_det) { return cat_parity(alpha, delta_det / root_eta, eta); };
  auto best = numerics::golden_section_minimize(parity_of_detected, 0.0, kPi / (2.0 * alpha_det), tol);
  return {best.x / root_eta, best.x, best.value};
}

}  // namespace analytic
}  // namespace phasedetect
