"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import macorr


def test_version():
    assert macorr.__version__ == "0.1.0"


def test_series_transforms():
    out = macorr.mean_subtract_integrate(np.array([1.0, 2.0, 3.0]))
    assert out.tolist() == [-1.0, -1.0, 0.0]

    r = macorr.log_returns(np.array([2.0, 4.0, 8.0, 16.0]), horizon=2)
    assert r == pytest.approx([math.log(4.0)] * 2)

    vol = macorr.rolling_volatility(np.array([0.0, 2.0]), window=2)
    assert vol == pytest.approx([math.sqrt(2.0)])


def test_moving_average_alignment():
    values, first_valid = macorr.moving_average(np.arange(10.0), n=2, theta=0.0)
    assert first_valid == 2
    assert values[0] == pytest.approx(1.0)

    resid, _ = macorr.detrend(np.full(50, 2.0), n=4)
    assert np.all(resid == 0.0)


def test_cross_correlation_grid():
    rng = np.random.default_rng(1)
    x = np.cumsum(rng.standard_normal(2048))
    y = np.cumsum(rng.standard_normal(2048))
    r = macorr.cross_correlation(x, y, ns=[16, 32], lags=[-8, 0, 8], min_count=10)
    assert r["value"].shape == (2, 3)
    assert np.all(np.isfinite(r["value"]))
    assert r["count"][0, 1] == 2048 - 16

    auto = macorr.cross_correlation(x, x, ns=[16], lags=[0], min_count=10)
    assert auto["value"][0, 0] >= 0.0

    fft = macorr.cross_correlation_fft(x, y, n=16, max_lag=8, min_count=10)
    dense = macorr.cross_correlation(x, y, ns=[16], lags=list(range(-8, 9)), min_count=10)
    assert fft["value"][0] == pytest.approx(dense["value"][0], rel=1e-9)


def test_ensemble_mode_pools_counts():
    rng = np.random.default_rng(11)
    xs = [np.cumsum(rng.standard_normal(256)) for _ in range(8)]
    ys = [np.cumsum(rng.standard_normal(256)) for _ in range(8)]
    pooled = macorr.ensemble_cross_correlation(xs, ys, ns=[16], lags=[0, 8], min_count=500)
    assert pooled["count"][0, 0] == 8 * (256 - 16)
    assert np.all(np.isfinite(pooled["value"]))

    with pytest.raises(ValueError):
        macorr.ensemble_cross_correlation(xs, ys[:-1], ns=[16], lags=[0])


def test_absent_cells_are_nan():
    rng = np.random.default_rng(2)
    x = rng.standard_normal(80)
    r = macorr.cross_correlation(x, x, ns=[16], lags=[0], min_count=100)
    assert math.isnan(r["value"][0, 0])


def test_collapse_helper():
    rng = np.random.default_rng(3)
    x = np.cumsum(rng.standard_normal(4096))
    r = macorr.cross_correlation(x, x, ns=[100, 200], lags=[0, 10], min_count=10)
    c = macorr.collapse(r, 0.5, 0.5)
    assert c["value"][0, 0] == pytest.approx(r["value"][0, 0] / 100.0)
    assert c["lags_scaled"]


def test_scaling_fit():
    curve = [(n, float(n) ** 1.2) for n in (8, 16, 32, 64, 128)]
    fit = macorr.fit_scaling(curve)
    assert fit["slope"] == pytest.approx(1.2, abs=1e-12)
    assert fit["exponent"] == pytest.approx(0.6, abs=1e-12)
    assert fit["r_squared"] == pytest.approx(1.0, abs=1e-12)

    with pytest.raises(ValueError):
        macorr.fit_scaling([(8, 1.0), (16, -1.0), (32, 2.0), (64, 3.0)])


def test_analytic_submodule():
    ana = macorr.analytic
    assert ana.covariance_coefficient(0.5, 0.5) == pytest.approx(1.0, abs=1e-12)
    assert ana.trailing_bracket(0.0, 1.0) == pytest.approx(2.0 / 3.0, abs=1e-14)
    # closed form against the quadrature oracle
    cid = ana.select_case(0.3, 0.2)
    assert cid == 3
    closed = ana.case_bracket(cid, 0.3, 0.2, 1.1)
    quad = ana.bracket_quadrature(0.3, 0.2, 1.1)
    assert closed == pytest.approx(quad, abs=1e-8)


def test_fbm_generator():
    x1, y1 = macorr.fbm.generate_pair(0.5, 0.8, 512, seed=9)
    x2, _ = macorr.fbm.generate_pair(0.5, 0.8, 512, seed=9)
    assert np.array_equal(x1, x2)
    assert x1[0] == 0.0 and y1[0] == 0.0

    same_h, other = macorr.fbm.generate_pair(0.6, 0.6, 256, seed=1)
    assert np.array_equal(same_h, other)

    scale = macorr.fbm.calibrate_scale(0.5, 0.8, 512)
    assert scale > 0.0

    with pytest.raises(ValueError):
        macorr.fbm.generate_single(1.5, 64, 0)


def test_hurst_recovery_small():
    path = macorr.fbm.generate_single(0.5, 1 << 14, seed=21)
    ns = [16, 23, 32, 45, 64, 91, 128, 181, 256]
    fit = macorr.fit_scaling(macorr.auto_scaling_curve(path, ns))
    assert fit["exponent"] == pytest.approx(0.5, abs=0.08)


def test_leverage_binding():
    rng = np.random.default_rng(5)
    prices = np.exp(np.cumsum(0.01 * rng.standard_normal(3000)))
    curve = macorr.leverage_curve(prices, horizon=1, vol_window=10, n=40,
                                  lags=[-20, 0, 20, 60], min_count=50)
    assert len(curve["L"]) == 4
    assert curve["denominator"] > 0.0

    with pytest.raises(ValueError):
        macorr.leverage_curve(np.full(500, 3.0), horizon=1, vol_window=10, n=40,
                              lags=[0], min_count=50)
