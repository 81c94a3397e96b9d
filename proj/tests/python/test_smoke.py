import json
import math

import numpy as np
import pytest

import weaklab


@pytest.fixture
def grid():
    return weaklab.build_grid(1, 1.0, 64)


def test_grid_geometry(grid):
    assert grid.cell_count == 64
    assert grid.cell_side == pytest.approx(2.0 / 64)
    centers = grid.cell_centers()
    assert centers.shape == (64,)
    # staggering: no center sits on the origin
    assert np.min(np.abs(centers)) >= grid.cell_side / 2 - 1e-15


def test_build_grid_validation():
    with pytest.raises(ValueError):
        weaklab.build_grid(1, 1.0, 6)
    with pytest.raises(ValueError):
        weaklab.build_grid(3, 1.0, 8)


def test_maximal_of_ones(grid):
    ones = np.ones(64)
    out = weaklab.maximal(grid, [ones], alpha=0.0)
    assert np.allclose(out, 1.0, atol=1e-14)
    oracle = weaklab.maximal_oracle(grid, [ones], alpha=0.0)
    assert np.allclose(out, oracle, rtol=1e-10)


def test_a1_constant_of_ones(grid):
    rep = weaklab.a1_constant(grid, np.ones(64))
    assert rep["constant"] == pytest.approx(1.0)
    assert rep["class"] == "A1"


def test_power_weight_and_multilinear(grid):
    w2 = weaklab.sample_power(grid, -1.0)
    rep = weaklab.multilinear_ap_constant(grid, [np.ones(64), w2], [1.0, 1.0])
    assert math.isfinite(rep["constant"])
    assert rep["constant"] >= 1.0 - 1e-9


def test_weak_norm_indicator(grid):
    f = np.zeros(64)
    f[16:32] = 1.0  # sixteen cells, Lebesgue mass 1/2
    value, level = weaklab.weak_norm(grid, f, np.ones(64), 2.0)
    assert value == pytest.approx(math.sqrt(0.5), rel=1e-12)
    assert level == 1.0


def test_power_identity(grid):
    rng = np.random.default_rng(7)
    f = rng.random(64)
    density = 0.1 + rng.random(64)
    for q in (1.0 / 3.0, 0.5, 1.0, 2.0):
        assert weaklab.power_identity_check(grid, f, density, q) <= 1e-12


def test_fractional_integral_guard():
    big = weaklab.build_grid(1, 1.0, 512)
    with pytest.raises(weaklab.GuardError):
        weaklab.fractional_integral(big, [np.ones(512)], 0.5)


def test_fractional_integral_value(grid):
    f = np.zeros(64)
    centers = grid.cell_centers()
    f[(centers >= 0.0) & (centers < 1.0)] = 1.0
    out = weaklab.fractional_integral(grid, [f], 0.5)
    targets = grid.target_points()
    edge = 31  # target nearest the support edge at 0
    x = targets[edge]
    exact = 2.0 * (math.sqrt(1.0 - x) - math.sqrt(-x))
    assert out[edge] == pytest.approx(exact, rel=0.02)


def test_kernel():
    assert weaklab.kernel(0.0, [4.0], 0.5) == pytest.approx(0.5)
    assert weaklab.kernel(0.0, [1.0, 1.0], 1.0) == pytest.approx(0.5)


def test_run_verify_pipeline(tmp_path):
    config = {
        "grid": {"dim": 1, "half_width": 1.0, "cells": [32, 64]},
        "operator": {"m": 1, "alpha": 0.5},
        "weights": {"u": [{"kind": "constant", "value": 1.0}],
                    "v": {"kind": "constant", "value": 1.0}},
        "functions": [{"constant": 0.0,
                       "bumps": [{"box": {"lo": [0.0], "hi": [0.5]},
                                  "height": 1.0}]}],
        "theorems": ["ThmMax", "LemmaPointwise"],
        "seed": 11,
    }
    out = tmp_path / "out"
    assert weaklab.run_verify(json.dumps(config), str(out)) == 0
    report = json.loads((out / "report_ThmMax.json").read_text())
    assert report["report"]["status"] == "OK"
    assert (out / "summary.csv").read_text().startswith(
        "theorem,N,empirical_constant,status\n")
