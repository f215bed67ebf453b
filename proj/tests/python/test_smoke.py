import math

import pytest

import phasedetect as pd


def test_single_photon_threshold():
    params = pd.ProtocolParams(family="fock", n=1)
    assert pd.threshold_phase(params) == pytest.approx(1e-3, rel=1e-14)
    ev = pd.evaluate(params, pd.threshold_phase(params), oracle=True)
    assert ev.analytic.p_fp == 0.0
    assert ev.analytic.p_fn < 1e-24
    assert ev.discrepancy < 1e-8


def test_lossy_single_photon_rates():
    rates = pd.analytic.fock1_error_rates(1 / math.sqrt(0.98), 0.98)
    assert rates.p_fp == pytest.approx(0.02, abs=1e-12)
    assert rates.p_fn == pytest.approx(0.02 / math.e, abs=1e-12)


def test_cat_optimum():
    op = pd.optimize_delta(pd.ProtocolParams(family="cat", alpha=2.0))
    assert op.source == "parity_minimized"
    assert op.delta == pytest.approx(0.371, abs=0.005)
    delta, _, parity = pd.analytic.minimize_cat_parity(2.0)
    assert 0.5 * (1 + parity) == pytest.approx(0.126, abs=0.01)


def test_sweep_and_numeric_agreement():
    res = pd.sweep(pd.ProtocolParams(family="cat", alpha=2.0), "eta", [0.8, 0.9, 1.0], oracle=True)
    assert len(res.points) == 3
    assert res.max_discrepancy < 1e-6


def test_states_and_operators():
    dim = pd.fock.recommend_dim(1.5, 0.3)
    cat = pd.fock.cat_state(dim, 1.5)
    assert abs(cat[1]) == 0.0
    assert sum(abs(c) ** 2 for c in cat) == pytest.approx(1.0, abs=1e-12)
    d = pd.fock.displacement(32, 1.0)
    assert abs(d[0, 0] - math.exp(-0.5)) < 1e-9


def test_errors_are_typed():
    with pytest.raises(pd.ValidationError):
        pd.ProtocolParams(family="cat", eta=0.0)
    with pytest.raises(pd.ComputationError):
        pd.evaluate(pd.ProtocolParams(family="fock", n=2, eta=0.9), 1e-3)
    with pytest.raises(pd.Error):
        pd.analytic.cat_overlap_zero(-1.0)


def test_verify_small():
    results = pd.verify("small")
    assert results
    assert all(r.passed for r in results)
