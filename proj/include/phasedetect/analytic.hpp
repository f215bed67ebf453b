#pragma once

// Closed-form overlaps, parities, thresholds and error probabilities for
// detecting a known displacement delta with Fock and even-cat probes.
//
// Conventions used throughout:
//   delta      effective displacement seen by the dark-port mode,
//              delta = sqrt(N) * phi * exp(r)
//   eta        detector power efficiency in (0, 1]
//   primes     alpha' = sqrt(eta) alpha, delta' = sqrt(eta) delta
//   eps^2      (1 - eta) / eta, so eps^2 alpha'^2 = (1 - eta) alpha^2
//   K          2 (1 + exp(-2 alpha^2)), the even-cat normalisation

#include <string_view>

#include "phasedetect/error.hpp"

namespace phasedetect {

enum class Family { Fock, Cat };

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);

/// One detection scenario.
struct ProtocolParams {
  Family family = Family::Fock;
  int n = 1;           // Fock photon number
  double alpha = 2.0;  // cat amplitude (real)
  double eta = 1.0;
  double r = 0.0;         // logarithmic squeeze factor
  double photons = 1e6;   // N, photons at the phase object
  double p0 = 0.5;        // prior of "no phase shift"
  double p_delta = 0.5;   // prior of "phase shift present"

  static ProtocolParams fock(int n, double eta = 1.0, double r = 0.0, double photons = 1e6);
  static ProtocolParams cat(double alpha, double eta = 1.0, double r = 0.0, double photons = 1e6);

  /// Throws ValidationError on inconsistent or out-of-range fields.
  void validate() const;

  /// delta = sqrt(N) phi e^r.
  double delta_from_phi(double phi) const;
  double phi_from_delta(double delta) const;
};

/// Error probabilities of a decision strategy. p_fp conditions on "no shift",
/// p_fn on "shift present"; helstrom is the prior-weighted lower bound for the
/// corresponding lossless pure states.
struct ErrorRates {
  double p_fp = 0.0;
  double p_fn = 0.0;
  double helstrom = 0.0;
};

namespace analytic {

/// L_n(x) by the three-term recurrence.
double laguerre(int n, double x);

/// Smallest positive root of L_n, n >= 1, to absolute tolerance `tol`.
double laguerre_first_root(int n, double tol = 1e-12);

/// <n|D(delta)|n> = L_n(delta^2) exp(-delta^2 / 2).
double fock_overlap(int n, double delta);

/// <cat|D(delta)|cat> = (2 e^{-delta^2/2} / K)(cos 2 alpha delta + e^{-2 alpha^2}).
double cat_overlap(double alpha, double delta);

/// k-th positive zero of cat_overlap: (arccos(-e^{-2 alpha^2}) + 2 pi k) / (2 alpha).
double cat_overlap_zero(double alpha, int k);

/// Large-alpha form of cat_overlap_zero(alpha, 0): pi / (4 alpha).
double cat_overlap_zero_approx(double alpha);

/// Smallest |phi| reaching the orthogonality point, divided by sqrt(eta) for
/// detector loss. Fock: sqrt(R_n) e^{-r} / sqrt(eta N). Cat: delta_0 e^{-r} / sqrt(eta N).
double threshold_phase(const ProtocolParams& params);

/// pi e^{-r} / (4 alpha sqrt(eta N)); the cat threshold for large alpha.
double cat_threshold_phase_approx(const ProtocolParams& params);

/// (1/2)(1 - sqrt(1 - 4 p0 p_delta |<psi_0|psi_delta>|^2)).
double helstrom(double p0, double p_delta, double overlap_sq);

/// Single-photon probe, "exactly one click means no shift".
/// p_fp = 1 - eta, p_fn = [eta (1 - d'^2)^2 + (1 - eta) d'^2] e^{-d'^2}.
ErrorRates fock1_error_rates(double delta, double eta);

/// Lossless n-photon probe, "exactly n clicks means no shift":
/// p_fp = 0, p_fn = fock_overlap(n, delta)^2.
ErrorRates fock_lossless_error_rates(int n, double delta);

/// <(-1)^n> of the lossy displaced cat:
/// (2 e^{-2 d'^2} / K)(e^{-2 eps^2 a'^2} cos 4 a' d' + e^{-2 a'^2}).
double cat_parity(double alpha, double delta, double eta);

/// Parity with no shift applied: (2 / K)(e^{-2 eps^2 a'^2} + e^{-2 a'^2}).
double cat_parity_unshifted(double alpha, double eta);

/// Even-cat probe, "odd count means shift present":
/// p_fp = (1 - P_0) / 2, p_fn = (1 + P_delta) / 2.
ErrorRates cat_error_rates(double alpha, double delta, double eta);

/// (1/K)(1 - e^{-2 eps^2 a'^2})(1 - e^{-2 a'^2}); equals (1 - P_0) / 2.
double cat_false_positive_product(double alpha, double eta);

struct BaselinePhaseErrors {
  double shot_noise;  // 1 / (2 sqrt(N))
  double squeezed;    // e^{-r} / (2 sqrt(N))
};

BaselinePhaseErrors baseline_phase_errors(double photons, double r);

/// Photon-number distribution of the lossy displaced cat,
/// (2 e^{-a'^2-d'^2} / (K n!)) ((a'^2+d'^2)^n + e^{-2 eps^2 a'^2} Re{e^{2i a' d'} [-(a'+i d')^2]^n}),
/// evaluated in log space.
double cat_pn(double alpha, double delta, double eta, int n);

struct ParityMinimum {
  double delta;         // lossless effective displacement
  double delta_detected;  // sqrt(eta) * delta
  double parity;
};

/// Minimises cat_parity over delta' in (0, pi / (2 alpha')) by golden section.
ParityMinimum minimize_cat_parity(double alpha, double eta, double tol = 1e-10);

}  // namespace analytic
}  // namespace phasedetect
