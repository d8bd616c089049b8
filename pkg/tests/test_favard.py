"""Quadrature vs Monte Carlo vs membership descent, plus decay fits."""

import math

import numpy as np
import pytest

from favlab import favard, ifs, shadow
from favlab.errors import DegenerateSeries, FavlabError


def dense_grid_oracle(system, depth, points=100001):
    thetas = np.linspace(0.0, np.pi, points)
    vals = [
        shadow.support_measure(shadow.multiplicity(system, depth, t)) for t in thetas
    ]
    return np.trapezoid(vals, thetas) / np.pi


def test_unit_disc_is_two():
    g = ifs.preset("gasket")
    res = favard.favard_length(g, 0, favard.QuadratureConfig(grid_size=16))
    assert res.value == pytest.approx(2.0, abs=1e-9)
    assert res.converged


def test_gasket_depth1_matches_dense_oracle():
    g = ifs.preset("gasket")
    cfg = favard.QuadratureConfig(grid_size=64, refinement_limit=8, target_rel_error=1e-6)
    res = favard.favard_length(g, 1, cfg)
    oracle = dense_grid_oracle(g, 1, points=20001)
    assert res.value == pytest.approx(oracle, rel=1e-5)


def test_monotone_decay_small_depths():
    g = ifs.preset("gasket")
    cfg = favard.QuadratureConfig(grid_size=64, refinement_limit=5, target_rel_error=1e-5)
    results = [favard.favard_length(g, n, cfg) for n in range(4)]
    for a, b in zip(results, results[1:]):
        assert b.value <= a.value + a.error_estimate + b.error_estimate


def test_corner4_quarter_turn_symmetry():
    # the square system repeats every quarter turn, so integrating the
    # shadow measure over [0, pi/2) and doubling matches the full average
    c4 = ifs.preset("corner4")
    n = 2
    for theta in (0.1, 0.8, 1.3):
        a = shadow.support_measure(shadow.multiplicity(c4, n, theta))
        b = shadow.support_measure(shadow.multiplicity(c4, n, theta + np.pi / 2))
        assert a == pytest.approx(b, abs=1e-9)
    thetas = np.linspace(0.0, np.pi, 4097)
    vals = np.array(
        [shadow.support_measure(shadow.multiplicity(c4, n, t)) for t in thetas]
    )
    full = np.trapezoid(vals, thetas) / np.pi
    half_idx = 2049  # thetas[2048] == pi/2
    half = 2.0 * np.trapezoid(vals[:half_idx], thetas[:half_idx]) / np.pi
    assert half == pytest.approx(full, rel=1e-6)


def test_quadrature_config_validation():
    with pytest.raises(FavlabError):
        favard.QuadratureConfig(grid_size=4)
    with pytest.raises(FavlabError):
        favard.QuadratureConfig(target_rel_error=0.0)


def test_needle_hits_examples():
    g = ifs.preset("gasket")
    assert favard.needle_hits(g, 1, 0.0, 0.0)
    assert not favard.needle_hits(g, 1, 0.0, 0.9)
    assert not favard.needle_hits(g, 3, 1.1, 1.2)  # outside the unit region


def test_needle_hits_agrees_with_profile_support():
    rng = np.random.Generator(np.random.Philox(12))
    for name in ("gasket", "corner4"):
        system = ifs.preset(name)
        for _ in range(400):
            n = int(rng.integers(0, 4))
            theta = float(rng.uniform(0, np.pi))
            x = float(rng.uniform(-1, 1))
            f = shadow.multiplicity(system, n, theta)
            assert favard.needle_hits(system, n, theta, x) == (
                shadow.value_at(f, x) > 0
            )


def test_batch_hits_matches_scalar():
    g = ifs.preset("corner4")
    rng = np.random.Generator(np.random.Philox(13))
    thetas = rng.uniform(0, np.pi, 300)
    xs = rng.uniform(-1, 1, 300)
    batch = favard._hits_batch(g, 3, thetas, xs)
    scalar = [favard.needle_hits(g, 3, t, x) for t, x in zip(thetas, xs)]
    assert list(batch) == scalar


def test_buffon_depth0_exact_and_deterministic():
    g = ifs.preset("gasket")
    est, err = favard.buffon_estimate(g, 0, 5000, seed=3)
    assert est == 2.0 and err == 0.0
    a = favard.buffon_estimate(g, 2, 40000, seed=17)
    b = favard.buffon_estimate(g, 2, 40000, seed=17)
    assert a == b
    c = favard.buffon_estimate(g, 2, 40000, seed=18)
    assert a != c


def test_buffon_agrees_with_quadrature():
    g = ifs.preset("gasket")
    cfg = favard.QuadratureConfig(grid_size=128, refinement_limit=6, target_rel_error=1e-6)
    quad = favard.favard_length(g, 1, cfg)
    est, err = favard.buffon_estimate(g, 1, 10**6, seed=21)
    assert abs(est - quad.value) <= 4 * err


def test_fit_power_recovers_parameters():
    series = [(n, 5.0 * n**-0.25) for n in range(2, 12)]
    fit = favard.fit_decay(series, "power")
    assert fit.params[0] == pytest.approx(5.0, abs=1e-6)
    assert fit.params[1] == pytest.approx(0.25, abs=1e-6)
    assert fit.residual < 1e-12


def test_fit_sqrtlog_recovers_parameters():
    series = [(n, 3.0 * math.exp(-0.7 * math.sqrt(math.log(n)))) for n in range(2, 12)]
    fit = favard.fit_decay(series, "sqrtlog")
    assert fit.params[0] == pytest.approx(3.0, abs=1e-6)
    assert fit.params[1] == pytest.approx(0.7, abs=1e-6)


def test_fit_loglower_reports_mean_and_inf():
    series = [(n, 2.0 * math.log(n) / n) for n in range(2, 10)]
    fit = favard.fit_decay(series, "loglower")
    assert fit.params[0] == pytest.approx(2.0, abs=1e-12)
    assert fit.params[1] == pytest.approx(2.0, abs=1e-12)
    assert fit.residual < 1e-12


def test_fit_degenerate_series():
    with pytest.raises(DegenerateSeries):
        favard.fit_decay([(2, 1.0), (3, 1.0), (4, 1.0)], "power")
    with pytest.raises(DegenerateSeries):
        favard.fit_decay([(2, 1.0), (3, -0.5), (4, 0.2)], "power")
    with pytest.raises(DegenerateSeries):
        favard.fit_decay([(2, 1.0), (3, 0.9)], "power")


def test_gasket_series_power_exponent_in_unit_interval():
    g = ifs.preset("gasket")
    cfg = favard.QuadratureConfig(grid_size=64, refinement_limit=4, target_rel_error=1e-4)
    series = [(n, favard.favard_length(g, n, cfg).value) for n in range(1, 6)]
    fit = favard.fit_decay(series, "power")
    assert 0.0 < fit.params[1] < 1.0
