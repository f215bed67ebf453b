#pragma once

// Truncated single-mode Fock space: states, operators and photon statistics.
//
// Every state lives in a FockSpace of dimension D spanning |0>..|D-1>.
// Operators built by exponentiating a generator (displacement, squeeze) are
// exactly unitary inside the truncated space, but their action on levels near
// D-1 differs from the infinite-dimensional operator. Callers keep the states
// they care about well below the cutoff; recommend_dim() picks D for that.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "phasedetect/error.hpp"

namespace phasedetect {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTailTol = 1e-12;
/// Extra levels added above the Poisson cutoff by recommend_dim().
inline constexpr int kTruncationMargin = 20;

class FockSpace {
 public:
  explicit FockSpace(int dim, double tail_tol = kDefaultTailTol);

  int dim() const { return dim_; }
  double tail_tol() const { return tail_tol_; }

  friend bool operator==(const FockSpace&, const FockSpace&) = default;

 private:
  int dim_;
  double tail_tol_;
};

/// Unit-norm ket over a FockSpace. `leakage()` is the probability mass the
/// untruncated state would place at n >= dim (zero when exact).
class PureState {
 public:
  /// Validates the norm against 1e-12 unless `normalize` is set, in which
  /// case the amplitudes are rescaled first.
  PureState(FockSpace space, CVector amplitudes, double leakage = 0.0, bool normalize = false);

  const FockSpace& space() const { return space_; }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex amplitude(int n) const { return amplitudes_(n); }
  double leakage() const { return leakage_; }
  int dim() const { return space_.dim(); }

 private:
  FockSpace space_;
  CVector amplitudes_;
  double leakage_;
};

/// Hermitian, positive, unit-trace matrix over a FockSpace.
/// Construction checks Hermiticity (1e-12), trace (1e-10) and the minimum
/// eigenvalue (>= -1e-10).
class DensityOperator {
 public:
  DensityOperator(FockSpace space, CMatrix matrix);

  static DensityOperator from_pure(const PureState& psi);

  const FockSpace& space() const { return space_; }
  const CMatrix& matrix() const { return matrix_; }
  Complex element(int m, int n) const { return matrix_(m, n); }
  int dim() const { return space_.dim(); }

 private:
  FockSpace space_;
  CMatrix matrix_;
};

class LinearOperator {
 public:
  LinearOperator(FockSpace space, CMatrix matrix);

  const FockSpace& space() const { return space_; }
  const CMatrix& matrix() const { return matrix_; }
  Complex element(int m, int n) const { return matrix_(m, n); }
  int dim() const { return space_.dim(); }

  LinearOperator adjoint() const;
  friend LinearOperator operator*(const LinearOperator& a, const LinearOperator& b);

 private:
  FockSpace space_;
  CMatrix matrix_;
};

// --- operators -------------------------------------------------------------

LinearOperator identity(const FockSpace& space);
LinearOperator annihilation(const FockSpace& space);
LinearOperator creation(const FockSpace& space);
LinearOperator number_operator(const FockSpace& space);
/// (-1)^n as a diagonal matrix.
LinearOperator parity_operator(const FockSpace& space);

/// exp(i*delta*(a + a^dagger)), via the eigendecomposition of the real
/// symmetric generator a + a^dagger.
LinearOperator displacement(const FockSpace& space, double delta);

/// exp((r/2)(a^dagger^2 - a^2)); satisfies S^dagger a S = a cosh r + a^dagger sinh r
/// on the part of the basis that the squeeze keeps inside the cutoff.
LinearOperator squeeze(const FockSpace& space, double r);

/// Caches the eigendecomposition of a + a^dagger so that D(delta) for many
/// delta values costs one complex matrix product each.
class DisplacementFamily {
 public:
  explicit DisplacementFamily(const FockSpace& space);

  const FockSpace& space() const { return space_; }
  LinearOperator operator()(double delta) const;
  /// D(delta)|psi> without materialising D(delta).
  CVector apply(double delta, const CVector& psi) const;

 private:
  FockSpace space_;
  Eigen::MatrixXd eigenvectors_;
  Eigen::VectorXd eigenvalues_;
};

// --- states ----------------------------------------------------------------

PureState fock_state(const FockSpace& space, int n);

/// Truncated coherent state, renormalised. Throws ComputationError if the
/// Poisson tail above dim exceeds space.tail_tol().
PureState coherent_state(const FockSpace& space, Complex alpha);

/// Even cat (|alpha> + |-alpha>)/sqrt(K), K = 2(1 + exp(-2 alpha^2)).
/// Odd amplitudes are exactly zero.
PureState cat_state(const FockSpace& space, double alpha);

/// Unnormalised truncated coherent amplitudes <n|alpha>, n < dim.
CVector coherent_amplitudes(int dim, Complex alpha);

/// Probability mass of Poisson(mean) at n >= dim.
double poisson_tail(double mean, int dim);

// --- measurements ----------------------------------------------------------

Complex overlap(const PureState& a, const PureState& b);

std::vector<double> photon_distribution(const PureState& psi);
std::vector<double> photon_distribution(const DensityOperator& rho);

double parity_expectation(const PureState& psi);
double parity_expectation(const DensityOperator& rho);

double mean_photon_number(const PureState& psi);

/// <psi|rho|psi>.
double fidelity(const PureState& psi, const DensityOperator& rho);

/// (1/2) sum |eigenvalues(rho - sigma)|.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

// --- application -----------------------------------------------------------

enum class Renormalize { No, Yes };

struct Applied {
  PureState state;
  /// ||op psi|| - 1 before any renormalisation.
  double norm_change;
};

/// op|psi>. Without Renormalize::Yes the result must already have unit norm
/// within 1e-12; otherwise a ComputationError reports the norm change.
/// Renormalisation beyond tail_tol is logged to std::clog.
Applied apply(const LinearOperator& op, const PureState& psi, Renormalize renormalize = Renormalize::No);

/// U rho U^dagger.
DensityOperator conjugate(const LinearOperator& op, const DensityOperator& rho);

/// Smallest dimension whose Poisson(max_alpha^2 + max_delta^2) tail above
/// (dim - kTruncationMargin) is below tail_tol. Monotone in every argument.
int recommend_dim(double max_alpha, double max_delta, double tail_tol = kDefaultTailTol);

/// ||A^dagger A - I|| (max-abs) over the leading `block` x `block` corner.
double unitarity_defect(const LinearOperator& op, int block);

/// Max-abs entry of (a - b) over the leading `block` x `block` corner.
double block_difference(const CMatrix& a, const CMatrix& b, int block);

}  // namespace phasedetect
