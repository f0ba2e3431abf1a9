"""Uncentered maximal functions: exact continuum route and lattice route.

Oracle: for f = chi_{[c,d]} and x outside [c,d], the best interval is
[min(x,c), max(x,d)], so M f(x) = (d - c) / (max(x,d) - min(x,c)).
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockspaces import (
    LatticeFunction,
    PiecewiseConstant1D,
    geometric_schedule,
    hl_maximal,
    maximal_1d_exact,
)

chi = PiecewiseConstant1D.indicator


def m_indicator(c, d, x):
    x = np.asarray(x, dtype=float)
    width = np.maximum(x, d) - np.minimum(x, c)
    return (d - c) / width


def test_indicator_oracle_outside_support():
    f = chi(0.0, 1.0)
    x = np.array([2.0, -1.0, 10.0])
    np.testing.assert_allclose(maximal_1d_exact(f, x), m_indicator(0.0, 1.0, x), rtol=1e-14)
    assert maximal_1d_exact(f, np.array([2.0]))[0] == 0.5


def test_indicator_equals_one_on_support():
    f = chi(-1.0, 1.0)
    x = np.array([-0.7, 0.0, 0.9])
    np.testing.assert_allclose(maximal_1d_exact(f, x), 1.0, rtol=1e-14)


def test_even_indicator_decay_oracle():
    # M(chi_{[-1,1]})(x) = 2/(x+1) for x > 1
    f = chi(-1.0, 1.0)
    x = np.array([1.5, 3.0, 63.0])
    np.testing.assert_allclose(maximal_1d_exact(f, x), 2.0 / (x + 1.0), rtol=1e-14)


def test_zero_function():
    z = PiecewiseConstant1D.zero()
    np.testing.assert_array_equal(maximal_1d_exact(z, np.array([0.0, 5.0])), [0.0, 0.0])


@settings(deadline=None, max_examples=40)
@given(
    vals=st.lists(st.integers(-4, 4), min_size=1, max_size=4),
    xs=st.lists(st.floats(-10, 10), min_size=1, max_size=4),
)
def test_dominates_absolute_value(vals, xs):
    bps = np.linspace(-2.0, 2.0, len(vals) + 1)
    f = PiecewiseConstant1D(bps, [float(v) for v in vals])
    x = np.asarray(xs, dtype=float)
    m = maximal_1d_exact(f, x)
    assert np.all(m >= np.abs(f(x)) - 1e-12)


def test_shell_block_average_lower_bound():
    # averaging chi_{C_0} over the whole ball B_0 gives |C_0|/|B_0| = 1/2,
    # so the maximal function is >= 1/2 everywhere on the ball
    f = PiecewiseConstant1D((-1.0, -0.5, 0.5, 1.0), (1.0, 0.0, 1.0))
    x = np.linspace(-0.99, 0.99, 21)
    assert np.all(maximal_1d_exact(f, x) >= 0.5 - 1e-12)


# -- lattice route ------------------------------------------------------------


def test_lattice_matches_exact_route():
    f = PiecewiseConstant1D((-1.0, -0.5, 0.5, 1.0), (1.0, 0.0, 1.0))
    h = 2.0 ** -8
    lat = LatticeFunction.from_callable(f, 1, h, 4.0)
    # window widths geometric with ratio 2^(1/8): the best window is missed
    # by at most that factor, costing <= 1 - 2^(-1/8) ~ 8.3% relative
    cells = lat.cells_per_axis
    widths = np.unique(
        np.minimum(np.round(geometric_schedule(1.0, cells, 2.0 ** 0.125)).astype(int), cells)
    )
    m = hl_maximal(lat, widths)
    centers = lat.axis_midpoints()
    keep = np.abs(np.abs(centers) - 0.5) > 0.01
    keep &= np.abs(np.abs(centers) - 1.0) > 0.01
    exact = maximal_1d_exact(f, centers[keep])
    got = m.values[keep]
    rel = np.abs(got - exact) / exact
    assert np.quantile(rel, 0.95) < 0.07
    assert np.max(rel) < 0.09


def test_lattice_dominates_function():
    rng = np.random.default_rng(3)
    lat = LatticeFunction(1, 0.25, 4.0, rng.standard_normal(32))
    m = hl_maximal(lat, [1, 2, 4])
    assert np.all(m.values >= np.abs(lat.values) - 1e-12)


def test_lattice_window_validation():
    lat = LatticeFunction(1, 1.0, 4.0, np.ones(8))
    with pytest.raises(ValueError):
        hl_maximal(lat, [])
    with pytest.raises(ValueError):
        hl_maximal(lat, [0])
    with pytest.raises(ValueError):
        hl_maximal(lat, [100])  # wider than the whole domain


def test_lattice_monotone_in_window_set():
    rng = np.random.default_rng(11)
    lat = LatticeFunction(1, 0.125, 2.0, rng.standard_normal(32))
    m_small = hl_maximal(lat, [1, 2])
    m_big = hl_maximal(lat, [1, 2, 4, 8])
    assert np.all(m_big.values >= m_small.values - 1e-15)
