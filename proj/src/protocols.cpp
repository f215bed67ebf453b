#include "phasedetect/protocols.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "phasedetect/fock_space.hpp"
#include "phasedetect/loss_channel.hpp"

namespace phasedetect {

namespace {

double odd_mass(const std::vector<double>& p) {
  double s = 0.0;
  for (std::size_t n = 1; n < p.size(); n += 2) s += p[n];
  return s;
}

double even_mass(const std::vector<double>& p) {
  double s = 0.0;
  for (std::size_t n = 0; n < p.size(); n += 2) s += p[n];
  return s;
}

int numeric_dim(const ProtocolParams& params, double delta, const NumericOptions& options) {
  if (options.dim) return *options.dim;
  const double probe_amplitude = params.family == Family::Fock ? std::sqrt(static_cast<double>(params.n)) : params.alpha;
  return recommend_dim(probe_amplitude, std::abs(delta), options.tail_tol);
}

// Builds the lossy density operators from scratch: probe state, displacement
// by matrix exponential, Kraus loss channel, photon counting.
ErrorRates numeric_rates(const ProtocolParams& params, double delta, const FockSpace& space) {
  LossChannel channel(params.eta, space);
  DisplacementFamily displace(space);
  const PureState probe =
      params.family == Family::Fock ? fock_state(space, params.n) : cat_state(space, params.alpha);
  const PureState shifted(space, displace.apply(delta, probe.amplitudes()), probe.leakage());

  const auto p_unshifted = photon_distribution(apply_loss(channel, probe));
  const auto p_shifted = photon_distribution(apply_loss(channel, shifted));

  ErrorRates rates;
  if (params.family == Family::Fock) {
    rates.p_fp = 1.0 - p_unshifted[params.n];
    rates.p_fn = p_shifted[params.n];
  } else {
    rates.p_fp = odd_mass(p_unshifted);
    rates.p_fn = even_mass(p_shifted);
  }
  rates.helstrom = analytic::helstrom(params.p0, params.p_delta, std::norm(overlap(probe, shifted)));
  return rates;
}

std::optional<ErrorRates> analytic_rates(const ProtocolParams& params, double delta) {
  if (params.family == Family::Cat) {
    ErrorRates rates = analytic::cat_error_rates(params.alpha, delta, params.eta);
    const double ov = analytic::cat_overlap(params.alpha, delta);
    rates.helstrom = analytic::helstrom(params.p0, params.p_delta, ov * ov);
    return rates;
  }
  if (params.eta == 1.0) {
    ErrorRates rates = analytic::fock_lossless_error_rates(params.n, delta);
    const double ov = analytic::fock_overlap(params.n, delta);
    rates.helstrom = analytic::helstrom(params.p0, params.p_delta, ov * ov);
    return rates;
  }
  if (params.n == 1) {
    ErrorRates rates = analytic::fock1_error_rates(delta, params.eta);
    const double ov = analytic::fock_overlap(1, delta);
    rates.helstrom = analytic::helstrom(params.p0, params.p_delta, ov * ov);
    return rates;
  }
  return std::nullopt;
}

OperatingPoint point_from_detected_delta(const ProtocolParams& params, double delta_det, OperatingPoint::Source source) {
  OperatingPoint op;
  op.delta = delta_det;
  op.phi0 = params.phi_from_delta(delta_det / std::sqrt(params.eta));
  op.source = source;
  return op;
}

}  // namespace

const ErrorRates& Evaluation::rates() const {
  if (analytic) return *analytic;
  if (numeric) return *numeric;
  throw ComputationError("evaluation carries no error rates");
}

Evaluation evaluate(const ProtocolParams& params, double phi, const NumericOptions& options) {
  params.validate();
  if (!std::isfinite(phi)) throw ValidationError("evaluate: phi must be finite");

  Evaluation ev;
  ev.phi = phi;
  ev.delta = params.delta_from_phi(phi);
  ev.delta_detected = std::sqrt(params.eta) * ev.delta;
  ev.analytic = analytic_rates(params, ev.delta);

  if (!ev.analytic && !options.with_oracle) {
    std::ostringstream msg;
    msg << "no closed form for a lossy Fock probe with n = " << params.n
        << " (only n = 1); enable the numeric oracle";
    throw ComputationError(msg.str());
  }
  if (options.with_oracle) {
    ev.dim = numeric_dim(params, ev.delta, options);
    FockSpace space(ev.dim, options.tail_tol);
    ev.numeric = numeric_rates(params, ev.delta, space);
    if (ev.analytic) {
      ev.discrepancy = std::max(std::abs(ev.analytic->p_fp - ev.numeric->p_fp),
                                std::abs(ev.analytic->p_fn - ev.numeric->p_fn));
    }
  }
  return ev;
}

std::string_view to_string(OperatingPoint::Source source) {
  return source == OperatingPoint::Source::AnalyticThreshold ? "analytic_threshold" : "parity_minimized";
}

OperatingPoint optimize_delta(const ProtocolParams& params) {
  params.validate();
  if (params.family == Family::Cat) {
    auto best = analytic::minimize_cat_parity(params.alpha, params.eta);
    return point_from_detected_delta(params, best.delta_detected, OperatingPoint::Source::ParityMinimized);
  }
  if (params.n == 1) {
    return point_from_detected_delta(params, 1.0, OperatingPoint::Source::AnalyticThreshold);
  }
  if (params.eta == 1.0) {
    return point_from_detected_delta(params, std::sqrt(analytic::laguerre_first_root(params.n)),
                                     OperatingPoint::Source::AnalyticThreshold);
  }
  std::ostringstream msg;
  msg << "no closed-form operating point for a lossy Fock probe with n = " << params.n;
  throw ComputationError(msg.str());
}

OperatingPoint cat_overlap_zero_point(const ProtocolParams& params) {
  params.validate();
  if (params.family != Family::Cat) throw ValidationError("cat_overlap_zero_point: needs a cat probe");
  const double delta = analytic::cat_overlap_zero(params.alpha, 0);
  return point_from_detected_delta(params, std::sqrt(params.eta) * delta, OperatingPoint::Source::AnalyticThreshold);
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Alpha: return "alpha";
    case SweepAxis::Eta: return "eta";
    case SweepAxis::N: return "n";
    case SweepAxis::Delta: return "delta";
    case SweepAxis::R: return "r";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(std::string_view name) {
  if (name == "alpha") return SweepAxis::Alpha;
  if (name == "eta") return SweepAxis::Eta;
  if (name == "n") return SweepAxis::N;
  if (name == "delta") return SweepAxis::Delta;
  if (name == "r") return SweepAxis::R;
  throw ValidationError("unknown sweep axis '" + std::string(name) + "' (expected alpha, eta, n, delta or r)");
}

namespace {

SweepPoint sweep_point(const ProtocolParams& base, SweepAxis axis, double value, const NumericOptions& options) {
  if (!std::isfinite(value)) throw ValidationError("sweep value is not finite");
  ProtocolParams params = base;
  SweepPoint point;
  point.value = value;
  switch (axis) {
    case SweepAxis::Alpha: params.alpha = value; break;
    case SweepAxis::Eta: params.eta = value; break;
    case SweepAxis::R: params.r = value; break;
    case SweepAxis::N:
      if (value != std::floor(value)) throw ValidationError("sweep over n needs integer values");
      params.n = static_cast<int>(value);
      break;
    case SweepAxis::Delta:
      params.validate();
      point.evaluation = evaluate(params, params.phi_from_delta(value), options);
      return point;
  }
  point.operating_point = optimize_delta(params);
  point.evaluation = evaluate(params, point.operating_point->phi0, options);
  return point;
}

}  // namespace

SweepResult sweep(const ProtocolParams& base, SweepAxis axis, const std::vector<double>& values,
                  const NumericOptions& options, unsigned threads) {
  SweepResult result;
  result.axis = axis;
  result.values = values;
  result.points.resize(values.size());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(values.size(), 1)));

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::optional<std::size_t> failed_index;
  std::exception_ptr failure;

  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        result.points[i] = sweep_point(base, axis, values[i], options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failed_index || i < *failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  if (failure) {
    std::ostringstream msg;
    msg << "sweep point " << *failed_index << " (" << to_string(axis) << " = " << values[*failed_index] << "): ";
    try {
      std::rethrow_exception(failure);
    } catch (const ValidationError& e) {
      throw SweepError(*failed_index, true, msg.str() + e.what());
    } catch (const std::exception& e) {
      throw SweepError(*failed_index, false, msg.str() + e.what());
    }
  }

  for (const auto& p : result.points) {
    if (p.evaluation.discrepancy) {
      result.max_discrepancy = std::max(result.max_discrepancy.value_or(0.0), *p.evaluation.discrepancy);
    }
  }
  return result;
}

}  // namespace phasedetect
