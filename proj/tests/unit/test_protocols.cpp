#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "../oracles.hpp"
#include "phasedetect/fock_space.hpp"
#include "phasedetect/protocols.hpp"

using namespace phasedetect;

namespace {

NumericOptions with_oracle() {
  NumericOptions o;
  o.with_oracle = true;
  return o;
}

void check_probabilities(const ErrorRates& r) {
  CHECK(r.p_fp >= -1e-15);
  CHECK(r.p_fp <= 1.0 + 1e-15);
  CHECK(r.p_fn >= -1e-15);
  CHECK(r.p_fn <= 1.0 + 1e-15);
}

}  // namespace

TEST_CASE("evaluate: lossless single photon at the threshold phase") {
  auto params = ProtocolParams::fock(1);
  auto ev = evaluate(params, analytic::threshold_phase(params), with_oracle());
  REQUIRE(ev.analytic);
  REQUIRE(ev.numeric);
  CHECK(ev.analytic->p_fp == 0.0);
  CHECK(ev.analytic->p_fn < 1e-24);
  CHECK(ev.numeric->p_fp < 1e-12);
  CHECK(ev.numeric->p_fn < 1e-12);
  CHECK(ev.analytic->helstrom < 1e-12);
  CHECK(*ev.discrepancy < 1e-8);
}

TEST_CASE("evaluate: lossy single photon at its threshold phase") {
  auto params = ProtocolParams::fock(1, 0.98);
  auto ev = evaluate(params, analytic::threshold_phase(params), with_oracle());
  CHECK(std::abs(ev.delta_detected - 1.0) < 1e-12);
  CHECK(std::abs(ev.analytic->p_fp - 0.02) < 1e-12);
  CHECK(std::abs(ev.analytic->p_fn - 0.02 / std::exp(1.0)) < 1e-12);
  CHECK(std::abs(ev.numeric->p_fp - 0.02) < 1e-8);
  CHECK(std::abs(ev.numeric->p_fn - 0.02 / std::exp(1.0)) < 1e-8);
}

TEST_CASE("evaluate: lossless cat at the parity minimum") {
  auto params = ProtocolParams::cat(2.0);
  auto best = analytic::minimize_cat_parity(2.0, 1.0);
  auto ev = evaluate(params, params.phi_from_delta(best.delta), with_oracle());
  CHECK(ev.analytic->p_fp == 0.0);
  CHECK(ev.analytic->p_fn == doctest::Approx(0.5 * (1.0 + best.parity)).epsilon(1e-13));
  CHECK(*ev.discrepancy < 1e-8);
  // Numeric parity of the displaced cat as an independent cross-check.
  FockSpace space(recommend_dim(2.0, best.delta));
  double parity = parity_expectation(apply(displacement(space, best.delta), cat_state(space, 2.0)).state);
  CHECK(std::abs(ev.analytic->p_fn - 0.5 * (1.0 + parity)) < 1e-8);
}

TEST_CASE("evaluate: lossy Fock with n >= 2 only has the numeric path") {
  auto params = ProtocolParams::fock(2, 0.9);
  CHECK_THROWS_AS(evaluate(params, 1e-3), ComputationError);
  auto ev = evaluate(params, 1e-3, with_oracle());
  CHECK_FALSE(ev.analytic);
  REQUIRE(ev.numeric);
  CHECK_FALSE(ev.discrepancy);
  check_probabilities(ev.rates());
  CHECK(std::abs(ev.numeric->p_fp - (1.0 - 0.81)) < 1e-10);  // |2> survives with probability eta^2
}

TEST_CASE("evaluate: the priors only move the Helstrom reference") {
  auto a = ProtocolParams::cat(1.5, 0.9);
  auto b = a;
  b.p0 = 0.8;
  b.p_delta = 0.2;
  auto ea = evaluate(a, 2e-4);
  auto eb = evaluate(b, 2e-4);
  CHECK(ea.analytic->p_fp == eb.analytic->p_fp);
  CHECK(ea.analytic->p_fn == eb.analytic->p_fn);
  CHECK(ea.analytic->helstrom != eb.analytic->helstrom);
}

TEST_CASE("evaluate: validation") {
  CHECK_THROWS_AS(evaluate(ProtocolParams::cat(1.0, 1.2), 1e-3), ValidationError);
  CHECK_THROWS_AS(evaluate(ProtocolParams::cat(1.0), std::nan("")), ValidationError);
}

TEST_CASE("Helstrom vanishes exactly when the lossless overlap does") {
  auto cat = ProtocolParams::cat(2.0);
  auto zero = evaluate(cat, cat.phi_from_delta(analytic::cat_overlap_zero(2.0, 0)));
  CHECK(zero.analytic->helstrom < 1e-12);
  auto off = evaluate(cat, cat.phi_from_delta(0.2));
  CHECK(off.analytic->helstrom > 1e-3);
  auto fock = ProtocolParams::fock(1);
  CHECK(evaluate(fock, fock.phi_from_delta(1.0)).analytic->helstrom < 1e-12);
  CHECK(evaluate(fock, fock.phi_from_delta(0.5)).analytic->helstrom > 1e-3);
}

TEST_CASE("single-photon p_fp does not depend on the phase") {
  auto params = ProtocolParams::fock(1, 0.9);
  const double reference = evaluate(params, 1e-4).analytic->p_fp;
  for (double phi : {0.0, 3e-4, 1e-3, 2.5e-3}) CHECK(evaluate(params, phi).analytic->p_fp == reference);
}

TEST_CASE("optimize_delta") {
  SUBCASE("lossy single photon sits at delta' = 1") {
    auto params = ProtocolParams::fock(1, 0.9, 0.3);
    auto op = optimize_delta(params);
    CHECK(op.delta == 1.0);
    CHECK(op.phi0 == doctest::Approx(std::exp(-0.3) / std::sqrt(0.9e6)).epsilon(1e-14));
    CHECK(op.source == OperatingPoint::Source::AnalyticThreshold);
  }
  SUBCASE("lossless cat alpha = 2 against a grid scan") {
    auto op = optimize_delta(ProtocolParams::cat(2.0));
    auto scan = oracle::grid_scan_min([](double d) { return analytic::cat_parity(2.0, d, 1.0); }, 0.0,
                                      std::numbers::pi / 4.0, 40001);
    CHECK(std::abs(op.delta - scan.first) < 1e-4);
    CHECK(std::abs(op.delta - 0.371) < 0.005);
    CHECK(std::abs(analytic::cat_error_rates(2.0, op.delta, 1.0).p_fn - 0.126) < 0.01);
    CHECK(op.source == OperatingPoint::Source::ParityMinimized);
  }
  SUBCASE("cat optimum is near the large-alpha approximation") {
    for (double alpha : {1.5, 2.0, 2.5, 3.0, 4.0}) {
      auto params = ProtocolParams::cat(alpha);
      CHECK(std::abs(optimize_delta(params).phi0 / analytic::cat_threshold_phase_approx(params) - 1.0) < 0.15);
    }
  }
  SUBCASE("the optimiser never loses to the overlap-zero points") {
    for (double alpha : {1.0, 1.5, 2.0, 3.0})
      for (double eta : {0.8, 0.95, 1.0}) {
        auto params = ProtocolParams::cat(alpha, eta);
        const double best = evaluate(params, optimize_delta(params).phi0).rates().p_fn;
        CHECK(best <= evaluate(params, cat_overlap_zero_point(params).phi0).rates().p_fn + 1e-14);
        CHECK(best <= evaluate(params, analytic::cat_threshold_phase_approx(params)).rates().p_fn + 1e-14);
      }
  }
  SUBCASE("lossless Fock n uses the first Laguerre root; lossy n >= 2 is refused") {
    auto op = optimize_delta(ProtocolParams::fock(3));
    CHECK(op.delta * op.delta == doctest::Approx(analytic::laguerre_first_root(3)).epsilon(1e-14));
    CHECK_THROWS_AS(optimize_delta(ProtocolParams::fock(3, 0.9)), ComputationError);
  }
}

TEST_CASE("sweep") {
  SUBCASE("lossless cat never reports a false positive") {
    std::vector<double> alphas;
    for (double a = 0.5; a <= 4.0; a += 0.25) alphas.push_back(a);
    auto res = sweep(ProtocolParams::cat(2.0, 1.0), SweepAxis::Alpha, alphas);
    for (const auto& p : res.points) CHECK(p.evaluation.rates().p_fp == 0.0);
  }
  SUBCASE("alpha sweep: p_fn falls toward ~0.1 past alpha = 2") {
    std::vector<double> alphas{1.0, 1.5, 2.0, 2.5, 3.0, 3.5};
    auto res = sweep(ProtocolParams::cat(1.0), SweepAxis::Alpha, alphas);
    for (std::size_t i = 1; i < res.points.size(); ++i) {
      // p_fn is the even mass after displacement, so p_odd = 1 - p_fn rises.
      CHECK(res.points[i].evaluation.rates().p_fn < res.points[i - 1].evaluation.rates().p_fn);
    }
    CHECK(res.points[2].evaluation.rates().p_fn <= 0.14);
    CHECK(res.points[3].evaluation.rates().p_fn <= 0.10);
  }
  SUBCASE("oracle-enabled sweep agrees with the closed forms") {
    auto res = sweep(ProtocolParams::cat(2.0, 0.9), SweepAxis::Eta, {0.5, 0.8, 0.9, 0.95, 0.98, 1.0}, with_oracle(), 2);
    REQUIRE(res.max_discrepancy);
    CHECK(*res.max_discrepancy < 1e-6);
    for (const auto& p : res.points) {
      check_probabilities(*p.evaluation.analytic);
      check_probabilities(*p.evaluation.numeric);
    }
    auto fock = sweep(ProtocolParams::fock(1, 0.9), SweepAxis::Delta, {0.2, 0.6, 1.0, 1.4, 2.0}, with_oracle());
    CHECK(*fock.max_discrepancy < 1e-6);
  }
  SUBCASE("results are independent of the thread count") {
    std::vector<double> etas{0.6, 0.7, 0.8, 0.9, 1.0};
    auto one = sweep(ProtocolParams::cat(1.5, 0.9), SweepAxis::Eta, etas, {}, 1);
    auto many = sweep(ProtocolParams::cat(1.5, 0.9), SweepAxis::Eta, etas, {}, 4);
    for (std::size_t i = 0; i < etas.size(); ++i) {
      CHECK(one.points[i].evaluation.rates().p_fn == many.points[i].evaluation.rates().p_fn);
      CHECK(one.points[i].value == etas[i]);
    }
  }
  SUBCASE("failing points are reported by index") {
    try {
      sweep(ProtocolParams::cat(2.0), SweepAxis::Eta, {0.9, 0.8, 1.5, -1.0}, {}, 3);
      FAIL("expected SweepError");
    } catch (const SweepError& e) {
      CHECK(e.index() == 2);
      CHECK(e.is_validation());
    }
    try {
      sweep(ProtocolParams::fock(1), SweepAxis::N, {1.0, 2.5});
      FAIL("expected SweepError");
    } catch (const SweepError& e) {
      CHECK(e.index() == 1);
    }
  }
  SUBCASE("axis names") {
    for (auto axis : {SweepAxis::Alpha, SweepAxis::Eta, SweepAxis::N, SweepAxis::Delta, SweepAxis::R})
      CHECK(sweep_axis_from_string(to_string(axis)) == axis);
    CHECK_THROWS_AS(sweep_axis_from_string("gamma"), ValidationError);
  }
}

TEST_CASE("property: error rates are probabilities and both paths agree on random parameters") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> alpha_dist(0.3, 3.0), eta_dist(0.5, 1.0), delta_dist(0.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto params = ProtocolParams::cat(alpha_dist(rng), eta_dist(rng));
    auto ev = evaluate(params, params.phi_from_delta(delta_dist(rng)), with_oracle());
    check_probabilities(*ev.analytic);
    CHECK(*ev.discrepancy < 1e-8);
  }
  for (int trial = 0; trial < 10; ++trial) {
    auto params = ProtocolParams::fock(1, eta_dist(rng));
    auto ev = evaluate(params, params.phi_from_delta(delta_dist(rng)), with_oracle());
    check_probabilities(*ev.analytic);
    CHECK(*ev.discrepancy < 1e-8);
  }
}
