#include "phasedetect/fock_space.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

namespace phasedetect {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kPositivityTol = 1e-10;

void require_same_space(const FockSpace& a, const FockSpace& b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": space mismatch (dim " << a.dim() << " vs " << b.dim() << ")";
    throw ValidationError(msg.str());
  }
}

// log(Poisson(mean)(n)); mean > 0.
double log_poisson(double mean, int n) {
  return -mean + n * std::log(mean) - std::lgamma(n + 1.0);
}

// Sum of weight(n) * Poisson(mean)(n) over n >= from, stopping once the terms
// are past the mode and negligible relative to the running sum.
template <class Weight>
double poisson_tail_weighted(double mean, int from, Weight weight) {
  if (mean <= 0.0) return 0.0;
  double sum = 0.0;
  for (int n = std::max(from, 0);; ++n) {
    double term = weight(n) * std::exp(log_poisson(mean, n));
    sum += term;
    if (n > mean && term <= 1e-18 * sum) break;
    if (n > mean && sum == 0.0 && log_poisson(mean, n) < -745.0) break;
  }
  return sum;
}

CMatrix real_to_complex(const Eigen::MatrixXd& m) { return m.cast<Complex>(); }

Eigen::MatrixXd annihilation_real(int dim) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

}  // namespace

// --- FockSpace -------------------------------------------------------------

FockSpace::FockSpace(int dim, double tail_tol) : dim_(dim), tail_tol_(tail_tol) {
  if (dim < 2) throw ValidationError("FockSpace: dim must be >= 2, got " + std::to_string(dim));
  if (!(tail_tol > 0.0)) throw ValidationError("FockSpace: tail_tol must be > 0");
}

// --- PureState -------------------------------------------------------------

PureState::PureState(FockSpace space, CVector amplitudes, double leakage, bool normalize)
    : space_(space), amplitudes_(std::move(amplitudes)), leakage_(leakage) {
  if (amplitudes_.size() != space_.dim()) {
    throw ValidationError("PureState: amplitude vector length does not match dim");
  }
  double norm = amplitudes_.norm();
  if (normalize) {
    if (norm == 0.0) throw ComputationError("PureState: cannot normalise a zero vector");
    amplitudes_ /= norm;
  } else if (std::abs(norm - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg << "PureState: norm " << norm << " differs from 1 by more than " << kNormTol;
    throw ValidationError(msg.str());
  }
}

// --- DensityOperator -------------------------------------------------------

DensityOperator::DensityOperator(FockSpace space, CMatrix matrix) : space_(space), matrix_(std::move(matrix)) {
  const int d = space_.dim();
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw ValidationError("DensityOperator: matrix shape does not match dim");
  }
  double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    std::ostringstream msg;
    msg << "DensityOperator: not Hermitian (defect " << herm << ")";
    throw ValidationError(msg.str());
  }
  Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream msg;
    msg << "DensityOperator: trace " << tr.real() << " differs from 1";
    throw ValidationError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ComputationError("DensityOperator: eigenvalue check failed");
  if (solver.eigenvalues().minCoeff() < -kPositivityTol) {
    std::ostringstream msg;
    msg << "DensityOperator: negative eigenvalue " << solver.eigenvalues().minCoeff();
    throw ValidationError(msg.str());
  }
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  return DensityOperator(psi.space(), psi.amplitudes() * psi.amplitudes().adjoint());
}

// --- LinearOperator --------------------------------------------------------

LinearOperator::LinearOperator(FockSpace space, CMatrix matrix) : space_(space), matrix_(std::move(matrix)) {
  if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
    throw ValidationError("LinearOperator: matrix shape does not match dim");
  }
}

LinearOperator LinearOperator::adjoint() const { return LinearOperator(space_, matrix_.adjoint()); }

LinearOperator operator*(const LinearOperator& a, const LinearOperator& b) {
  require_same_space(a.space(), b.space(), "operator product");
  return LinearOperator(a.space(), a.matrix() * b.matrix());
}

// --- operators -------------------------------------------------------------

LinearOperator identity(const FockSpace& space) {
  return LinearOperator(space, CMatrix::Identity(space.dim(), space.dim()));
}

LinearOperator annihilation(const FockSpace& space) {
  return LinearOperator(space, real_to_complex(annihilation_real(space.dim())));
}

LinearOperator creation(const FockSpace& space) {
  return LinearOperator(space, real_to_complex(annihilation_real(space.dim()).transpose()));
}

LinearOperator number_operator(const FockSpace& space) {
  CMatrix n = CMatrix::Zero(space.dim(), space.dim());
  for (int k = 0; k < space.dim(); ++k) n(k, k) = static_cast<double>(k);
  return LinearOperator(space, std::move(n));
}

LinearOperator parity_operator(const FockSpace& space) {
  CMatrix p = CMatrix::Zero(space.dim(), space.dim());
  for (int k = 0; k < space.dim(); ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return LinearOperator(space, std::move(p));
}

DisplacementFamily::DisplacementFamily(const FockSpace& space) : space_(space) {
  Eigen::MatrixXd a = annihilation_real(space.dim());
  Eigen::MatrixXd x = a + a.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(x);
  if (solver.info() != Eigen::Success) {
    throw ComputationError("displacement: eigendecomposition of a + a^dagger did not converge");
  }
  eigenvectors_ = solver.eigenvectors();
  eigenvalues_ = solver.eigenvalues();
}

LinearOperator DisplacementFamily::operator()(double delta) const {
  const int d = space_.dim();
  CMatrix phased(d, d);
  for (int j = 0; j < d; ++j) {
    Complex phase = std::polar(1.0, delta * eigenvalues_(j));
    phased.col(j) = eigenvectors_.col(j).cast<Complex>() * phase;
  }
  return LinearOperator(space_, phased * eigenvectors_.transpose().cast<Complex>());
}

CVector DisplacementFamily::apply(double delta, const CVector& psi) const {
  CVector coeffs = eigenvectors_.transpose().cast<Complex>() * psi;
  for (int j = 0; j < coeffs.size(); ++j) coeffs(j) *= std::polar(1.0, delta * eigenvalues_(j));
  return eigenvectors_.cast<Complex>() * coeffs;
}

LinearOperator displacement(const FockSpace& space, double delta) {
  if (delta == 0.0) return identity(space);
  return DisplacementFamily(space)(delta);
}

LinearOperator squeeze(const FockSpace& space, double r) {
  if (r == 0.0) return identity(space);
  const int d = space.dim();
  Eigen::MatrixXd a = annihilation_real(d);
  Eigen::MatrixXd a2 = a * a;
  // (a^dagger^2 - a^2) is real antisymmetric; i times it is Hermitian.
  CMatrix h = Complex(0.0, 1.0) * real_to_complex(a2.transpose() - a2);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ComputationError("squeeze: eigendecomposition of the generator did not converge");
  }
  const CMatrix& v = solver.eigenvectors();
  CMatrix phased(d, d);
  for (int j = 0; j < d; ++j) phased.col(j) = v.col(j) * std::polar(1.0, -0.5 * r * solver.eigenvalues()(j));
  return LinearOperator(space, phased * v.adjoint());
}

// --- states ----------------------------------------------------------------

double poisson_tail(double mean, int dim) {
  return poisson_tail_weighted(mean, dim, [](int) { return 1.0; });
}

CVector coherent_amplitudes(int dim, Complex alpha) {
  CVector amps = CVector::Zero(dim);
  const double mod = std::abs(alpha);
  if (mod == 0.0) {
    amps(0) = 1.0;
    return amps;
  }
  const double arg = std::arg(alpha);
  const double log_mod = std::log(mod);
  for (int n = 0; n < dim; ++n) {
    double log_mag = -0.5 * mod * mod + n * log_mod - 0.5 * std::lgamma(n + 1.0);
    amps(n) = std::polar(std::exp(log_mag), n * arg);
  }
  return amps;
}

PureState fock_state(const FockSpace& space, int n) {
  if (n < 0 || n >= space.dim()) {
    throw ValidationError("fock_state: n=" + std::to_string(n) + " outside [0, " + std::to_string(space.dim()) + ")");
  }
  CVector amps = CVector::Zero(space.dim());
  amps(n) = 1.0;
  return PureState(space, std::move(amps));
}

PureState coherent_state(const FockSpace& space, Complex alpha) {
  double leakage = poisson_tail(std::norm(alpha), space.dim());
  if (leakage > space.tail_tol()) {
    std::ostringstream msg;
    msg << "coherent_state: leakage " << leakage << " above tail_tol " << space.tail_tol() << " at dim "
        << space.dim();
    throw ComputationError(msg.str());
  }
  return PureState(space, coherent_amplitudes(space.dim(), alpha), leakage, true);
}

PureState cat_state(const FockSpace& space, double alpha) {
  const double mean = alpha * alpha;
  const double k_norm = 2.0 * (1.0 + std::exp(-2.0 * mean));
  // |<n|cat>|^2 = 4 Poisson(alpha^2)(n) / K on even n.
  double leakage =
      poisson_tail_weighted(mean, space.dim(), [](int n) { return n % 2 == 0 ? 1.0 : 0.0; }) * 4.0 / k_norm;
  if (leakage > space.tail_tol()) {
    std::ostringstream msg;
    msg << "cat_state: leakage " << leakage << " above tail_tol " << space.tail_tol() << " at dim "
        << space.dim();
    throw ComputationError(msg.str());
  }
  CVector amps = CVector::Zero(space.dim());
  CVector coh = coherent_amplitudes(space.dim(), alpha);
  for (int n = 0; n < space.dim(); n += 2) amps(n) = 2.0 * coh(n) / std::sqrt(k_norm);
  return PureState(space, std::move(amps), leakage, true);
}

// --- measurements ----------------------------------------------------------

Complex overlap(const PureState& a, const PureState& b) {
  require_same_space(a.space(), b.space(), "overlap");
  return a.amplitudes().dot(b.amplitudes());  // Eigen's dot conjugates the left operand.
}

std::vector<double> photon_distribution(const PureState& psi) {
  std::vector<double> p(psi.dim());
  for (int n = 0; n < psi.dim(); ++n) p[n] = std::norm(psi.amplitude(n));
  return p;
}

std::vector<double> photon_distribution(const DensityOperator& rho) {
  std::vector<double> p(rho.dim());
  for (int n = 0; n < rho.dim(); ++n) p[n] = rho.element(n, n).real();
  return p;
}

namespace {
double signed_parity_sum(const std::vector<double>& p) {
  double s = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) s += (n % 2 == 0) ? p[n] : -p[n];
  return s;
}
}  // namespace

double parity_expectation(const PureState& psi) { return signed_parity_sum(photon_distribution(psi)); }
double parity_expectation(const DensityOperator& rho) { return signed_parity_sum(photon_distribution(rho)); }

double mean_photon_number(const PureState& psi) {
  auto p = photon_distribution(psi);
  double mean = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) mean += static_cast<double>(n) * p[n];
  return mean;
}

double fidelity(const PureState& psi, const DensityOperator& rho) {
  require_same_space(psi.space(), rho.space(), "fidelity");
  return psi.amplitudes().dot(rho.matrix() * psi.amplitudes()).real();
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_space(rho.space(), sigma.space(), "trace_distance");
  CMatrix diff = rho.matrix() - sigma.matrix();
  diff = 0.5 * (diff + diff.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

// --- application -----------------------------------------------------------

Applied apply(const LinearOperator& op, const PureState& psi, Renormalize renormalize) {
  require_same_space(op.space(), psi.space(), "apply");
  CVector out = op.matrix() * psi.amplitudes();
  const double norm_change = out.norm() - 1.0;
  if (renormalize == Renormalize::No) {
    if (std::abs(norm_change) > kNormTol) {
      std::ostringstream msg;
      msg << "apply: norm changed by " << norm_change << "; request renormalisation explicitly";
      throw ComputationError(msg.str());
    }
    return {PureState(psi.space(), std::move(out), psi.leakage()), norm_change};
  }
  if (std::abs(norm_change) > psi.space().tail_tol()) {
    std::clog << "[phasedetect] apply: renormalised state, norm change " << norm_change << "\n";
  }
  return {PureState(psi.space(), std::move(out), psi.leakage() + std::abs(norm_change), true), norm_change};
}

DensityOperator conjugate(const LinearOperator& op, const DensityOperator& rho) {
  require_same_space(op.space(), rho.space(), "conjugate");
  CMatrix out = op.matrix() * rho.matrix() * op.matrix().adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityOperator(rho.space(), std::move(out));
}

int recommend_dim(double max_alpha, double max_delta, double tail_tol) {
  if (max_alpha < 0.0 || max_delta < 0.0) throw ValidationError("recommend_dim: amplitudes must be nonnegative");
  if (!(tail_tol > 0.0)) throw ValidationError("recommend_dim: tail_tol must be > 0");
  const double mean = max_alpha * max_alpha + max_delta * max_delta;
  int cutoff = 1;
  while (poisson_tail(mean, cutoff) >= tail_tol) ++cutoff;
  return std::max(2, cutoff + kTruncationMargin);
}

double unitarity_defect(const LinearOperator& op, int block) {
  CMatrix g = op.matrix().adjoint() * op.matrix();
  return block_difference(g, CMatrix::Identity(op.dim(), op.dim()), block);
}

double block_difference(const CMatrix& a, const CMatrix& b, int block) {
  block = std::min<int>(block, static_cast<int>(std::min(a.rows(), b.rows())));
  return (a.topLeftCorner(block, block) - b.topLeftCorner(block, block)).cwiseAbs().maxCoeff();
}

}  // namespace phasedetect
