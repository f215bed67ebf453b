#pragma once

// Detector inefficiency as a beamsplitter of power transmissivity eta that
// mixes the signal mode with a vacuum bath mode.

#include "phasedetect/fock_space.hpp"

namespace phasedetect {

class LossChannel {
 public:
  /// eta in (0, 1]. eta = 1 is the identity channel.
  LossChannel(double eta, FockSpace space);

  double eta() const { return eta_; }
  /// sqrt((1 - eta) / eta): bath amplitude relative to the transmitted one.
  double epsilon() const;
  const FockSpace& space() const { return space_; }
  bool is_identity() const { return eta_ == 1.0; }

  /// E_k = sqrt((1-eta)^k / k!) eta^(n/2) a^k.
  LinearOperator kraus_operator(int k) const;

  /// max-abs of sum_k E_k^dagger E_k - I over the whole truncated space.
  double completeness_defect() const;

 private:
  double eta_;
  FockSpace space_;
};

/// sum_k E_k rho E_k^dagger, summing k until the discarded weight drops below
/// the space's tail_tol (never beyond dim - 1, where a^k vanishes).
DensityOperator apply_loss(const LossChannel& channel, const DensityOperator& rho);
DensityOperator apply_loss(const LossChannel& channel, const PureState& psi);

/// Same channel via its purification: a two-mode beamsplitter unitary acting
/// on psi (x) |0>_bath, followed by a partial trace over the bath. Costs
/// O(dim^6); intended for cross-checking apply_loss on small spaces.
DensityOperator apply_loss_purified(const LossChannel& channel, const PureState& psi);

/// eta D(d')|1><1|D^dagger(d') + (1-eta) D(d')|0><0|D^dagger(d'), d' = delta sqrt(eta).
DensityOperator lossy_displaced_fock1(const FockSpace& space, double delta, double eta);

/// Lossy displaced even cat, assembled from coherent states:
///   (1/K)(|a><a| + |b><b| + exp(-2 eps^2 alpha'^2)[exp(2i alpha' delta')|a><b| + h.c.])
/// with a = alpha' + i delta', b = -alpha' + i delta', primes meaning times sqrt(eta).
DensityOperator lossy_displaced_cat(const FockSpace& space, double alpha, double delta, double eta);

}  // namespace phasedetect
