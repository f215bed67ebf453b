#include "phasedetect/loss_channel.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace phasedetect {

namespace {

// Nonzero entries of E_k: (E_k)(m, m + k) = sqrt(C(m+k, k) (1-eta)^k eta^m).
std::vector<double> kraus_band(double eta, int k, int dim) {
  std::vector<double> band(std::max(dim - k, 0));
  const double log_loss = std::log1p(-eta);
  const double log_eta = std::log(eta);
  for (int m = 0; m + k < dim; ++m) {
    double log_sq = std::lgamma(m + k + 1.0) - std::lgamma(m + 1.0) - std::lgamma(k + 1.0) + k * log_loss + m * log_eta;
    band[m] = std::exp(0.5 * log_sq);
  }
  return band;
}

}  // namespace

LossChannel::LossChannel(double eta, FockSpace space) : eta_(eta), space_(space) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    std::ostringstream msg;
    msg << "LossChannel: eta must lie in (0, 1], got " << eta;
    throw ValidationError(msg.str());
  }
}

double LossChannel::epsilon() const { return std::sqrt((1.0 - eta_) / eta_); }

LinearOperator LossChannel::kraus_operator(int k) const {
  const int d = space_.dim();
  CMatrix e = CMatrix::Zero(d, d);
  if (is_identity()) {
    if (k == 0) e.setIdentity();
    return LinearOperator(space_, std::move(e));
  }
  auto band = kraus_band(eta_, k, d);
  for (int m = 0; m + k < d; ++m) e(m, m + k) = band[m];
  return LinearOperator(space_, std::move(e));
}

double LossChannel::completeness_defect() const {
  const int d = space_.dim();
  CMatrix sum = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const CMatrix e = kraus_operator(k).matrix();
    sum += e.adjoint() * e;
  }
  return (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

DensityOperator apply_loss(const LossChannel& channel, const DensityOperator& rho) {
  if (channel.space() != rho.space()) throw ValidationError("apply_loss: space mismatch");
  if (channel.is_identity()) return rho;

  const int d = rho.dim();
  const CMatrix& in = rho.matrix();
  const double total = in.trace().real();
  const double tol = rho.space().tail_tol();
  CMatrix out = CMatrix::Zero(d, d);
  double kept = 0.0;
  int k = 0;
  for (; k < d; ++k) {
    auto band = kraus_band(channel.eta(), k, d);
    for (int mp = 0; mp + k < d; ++mp) {
      for (int m = 0; m + k < d; ++m) {
        out(m, mp) += band[m] * band[mp] * in(m + k, mp + k);
      }
      kept += band[mp] * band[mp] * in(mp + k, mp + k).real();
    }
    if (total - kept < tol) break;
  }
  if (total - kept >= tol && k == d) {
    std::ostringstream msg;
    msg << "apply_loss: Kraus sum exhausted with discarded weight " << (total - kept);
    throw ComputationError(msg.str());
  }
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityOperator(rho.space(), std::move(out));
}

DensityOperator apply_loss(const LossChannel& channel, const PureState& psi) {
  return apply_loss(channel, DensityOperator::from_pure(psi));
}

DensityOperator apply_loss_purified(const LossChannel& channel, const PureState& psi) {
  if (channel.space() != psi.space()) throw ValidationError("apply_loss_purified: space mismatch");
  const int d = psi.dim();
  const int joint = d * d;
  auto index = [d](int signal, int bath) { return signal * d + bath; };

  // Generator a^dagger b - a b^dagger on signal (x) bath; exact on every
  // total-photon-number sector below d.
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(joint, joint);
  for (int s = 0; s < d; ++s) {
    for (int b = 0; b < d; ++b) {
      if (s + 1 < d && b >= 1) {
        gen(index(s + 1, b - 1), index(s, b)) += std::sqrt((s + 1.0) * b);
      }
      if (s >= 1 && b + 1 < d) {
        gen(index(s - 1, b + 1), index(s, b)) -= std::sqrt(s * (b + 1.0));
      }
    }
  }
  const double theta = std::acos(std::sqrt(channel.eta()));
  CMatrix herm = Complex(0.0, 1.0) * gen.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
  if (solver.info() != Eigen::Success) throw ComputationError("apply_loss_purified: eigensolver failed");

  CVector joint_in = CVector::Zero(joint);
  for (int s = 0; s < d; ++s) joint_in(index(s, 0)) = psi.amplitude(s);
  CVector coeffs = solver.eigenvectors().adjoint() * joint_in;
  for (int j = 0; j < joint; ++j) coeffs(j) *= std::polar(1.0, -theta * solver.eigenvalues()(j));
  CVector joint_out = solver.eigenvectors() * coeffs;

  CMatrix amp(d, d);  // rows: signal, columns: bath
  for (int s = 0; s < d; ++s)
    for (int b = 0; b < d; ++b) amp(s, b) = joint_out(index(s, b));
  CMatrix rho = amp * amp.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(psi.space(), std::move(rho));
}

DensityOperator lossy_displaced_fock1(const FockSpace& space, double delta, double eta) {
  LossChannel channel(eta, space);  // validates eta
  const double delta_det = delta * std::sqrt(eta);
  DisplacementFamily family(space);
  CVector one = CVector::Zero(space.dim());
  CVector vac = CVector::Zero(space.dim());
  one(1) = 1.0;
  vac(0) = 1.0;
  CVector d1 = family.apply(delta_det, one);
  CVector d0 = family.apply(delta_det, vac);
  CMatrix rho = eta * (d1 * d1.adjoint()) + (1.0 - eta) * (d0 * d0.adjoint());
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(space, std::move(rho));
}

DensityOperator lossy_displaced_cat(const FockSpace& space, double alpha, double delta, double eta) {
  LossChannel channel(eta, space);
  const double root_eta = std::sqrt(eta);
  const double alpha_det = root_eta * alpha;
  const double delta_det = root_eta * delta;
  const Complex plus(alpha_det, delta_det);
  const Complex minus(-alpha_det, delta_det);

  double leakage = poisson_tail(std::norm(plus), space.dim());
  if (leakage > space.tail_tol()) {
    std::ostringstream msg;
    msg << "lossy_displaced_cat: leakage " << leakage << " above tail_tol at dim " << space.dim();
    throw ComputationError(msg.str());
  }

  const double k_norm = 2.0 * (1.0 + std::exp(-2.0 * alpha * alpha));
  // eps^2 alpha'^2 = (1 - eta) alpha^2; written this way it stays finite at eta = 1.
  const double coherence = std::exp(-2.0 * (1.0 - eta) * alpha * alpha);
  const Complex phase = std::polar(1.0, 2.0 * alpha_det * delta_det);

  CVector va = coherent_amplitudes(space.dim(), plus);
  CVector vb = coherent_amplitudes(space.dim(), minus);
  CMatrix cross = phase * (va * vb.adjoint());
  CMatrix rho = (va * va.adjoint() + vb * vb.adjoint() + coherence * (cross + cross.adjoint())) / k_norm;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(space, std::move(rho));
}

}  // namespace phasedetect
