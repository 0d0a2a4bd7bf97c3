from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import weierstrass_oracle
from spiraldisk.domain import THETA0, X_A, half_width
from spiraldisk.errors import ZeroSliceHeight
from spiraldisk.slices import (
    R0_FLOOR,
    SECTOR_COS,
    SliceCurve,
    angle_spread,
    c_bound,
    endpoint_excursion,
    estimate_R0,
    excursion,
    excursion_lower_bound,
    is_graph_over_line,
    m_bound,
    n_bound,
    sheet_turning,
    slice_curve,
    tangent_angles,
)
from spiraldisk.weierstrass import WeierstrassParams

HALF = WeierstrassParams(0.5)
A_GRID = [2.0 ** -k for k in range(1, 6)]


def test_constants():
    assert SECTOR_COS == pytest.approx(math.cos(THETA0 / 2), abs=1e-16)
    assert SECTOR_COS == pytest.approx(0.2484636, abs=1e-7)
    assert R0_FLOOR == pytest.approx(0.019772, abs=1e-6)
    assert R0_FLOOR >= 0.0197


def test_curve_basics():
    c = slice_curve(HALF, 1.0)
    assert len(c.y) == 201 and c.y[c.center] == 0.0
    assert np.array_equal(c.points[c.center], [0.0, 0.0])
    assert np.linalg.norm(c.tangents[c.center]) == pytest.approx(1.0, abs=1e-15)
    assert np.allclose(c.points, -c.points[::-1], atol=1e-12)
    assert np.allclose(np.linalg.norm(c.tangents, axis=1), np.cosh(c.v), rtol=1e-14)
    assert c.y_max == half_width(0.5, 1.0)


@pytest.mark.parametrize("n", [0, 1, 2, 200])
def test_bad_sample_counts(n):
    with pytest.raises(ValueError):
        slice_curve(HALF, 1.0, n)


def test_angle_examples():
    c = slice_curve(HALF, 1.0)
    assert angle_spread(c) <= 2 * 1.0 / (2 * (1.0 + 0.25)) < THETA0
    ang = tangent_angles(c)
    assert np.allclose(ang, c.u - c.u[c.center], atol=1e-10)
    single = SliceCurve(1.0, 0.5, np.zeros(1), np.zeros((1, 2)), np.array([[0.0, -1.0]]),
                        np.zeros(1), np.zeros(1), 0.0)
    assert angle_spread(single) == 0.0


def test_graph_examples():
    c = slice_curve(HALF, 1.0, 101)
    assert is_graph_over_line(c)
    assert not is_graph_over_line(c.reversed())
    t0 = c.tangents[c.center]
    assert np.all(np.diff(c.reversed().points @ t0) < 0)


def test_excursion_example_against_oracle():
    c = slice_curve(HALF, 1.0)
    st_ = excursion(c)
    assert st_.lower >= SECTOR_COS / 4
    assert st_.lower >= 0.0622
    ends = np.array([weierstrass_oracle(0.5, 1.0, s * c.y_max)[:2] for s in (-1, 1)])
    assert st_.lower == pytest.approx(np.linalg.norm(ends, axis=1).min(), abs=1e-9)
    assert st_.upper == pytest.approx(np.linalg.norm(ends, axis=1).max(), abs=1e-9)
    assert max(st_.inner_products) <= n_bound(1.0)
    # inner product at y = 0 is the empty integral
    assert c.points[c.center] @ c.tangents[c.center] == 0.0
    assert endpoint_excursion(HALF, 1.0) == pytest.approx(st_.lower, abs=1e-12)


def test_bounds_examples():
    assert m_bound(1.0) == pytest.approx(8 / 9)
    assert m_bound(-1.0) == m_bound(1.0)
    assert n_bound(1.0) == pytest.approx(math.cosh(8 / 9) * math.sqrt(1.25) / 2, abs=1e-15)
    assert n_bound(1.0) == pytest.approx(0.794793, abs=1e-6)
    assert c_bound(1.0) == pytest.approx(n_bound(1.0) / SECTOR_COS)
    assert excursion_lower_bound(-2.0) == pytest.approx(SECTOR_COS / 2)
    with pytest.raises(ZeroSliceHeight):
        m_bound(0.0)
    with pytest.raises(ZeroSliceHeight):
        n_bound(0.0)
    assert n_bound(1e-5) == math.inf


def test_n_bound_grows_both_ways():
    small = [n_bound(2.0 ** -k) for k in range(0, 9)]
    large = [n_bound(2.0 ** k) for k in range(1, 11)]
    assert all(b > a for a, b in zip(small, small[1:]))
    assert all(b > a for a, b in zip(large, large[1:]))


def test_turning_examples():
    assert sheet_turning(HALF, 0.0, math.inf) == pytest.approx(math.pi)
    t = sheet_turning(WeierstrassParams(1 / 16), 0.0, math.inf)
    assert t == pytest.approx(8 * math.pi)
    assert t / (2 * math.pi) == pytest.approx(4.0)
    assert sheet_turning(HALF, 0.3, 0.3) == 0.0


def test_richardson_doubling():
    for a in (0.5, 1 / 32):
        p = WeierstrassParams(a)
        for x in (0.4, 1.0, 5.0):
            e1 = excursion(slice_curve(p, x, 201))
            e2 = excursion(slice_curve(p, x, 401))
            assert abs(e1.lower - e2.lower) < 1e-6
            assert abs(e1.upper - e2.upper) < 1e-6


def test_estimate_R0():
    r = estimate_R0(A_GRID, [0.4, 0.5, 1.0, 2.0, 5.0])
    assert r >= R0_FLOOR
    finer = estimate_R0(A_GRID + [2.0 ** -1.5, 2.0 ** -2.5], [0.4, 0.5, 1.0, 2.0, 5.0])
    assert finer <= r
    assert abs(finer - r) <= 0.1 * r
    with pytest.raises(ValueError):
        estimate_R0([], [1.0])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(A_GRID), st.floats(X_A * 1.001, 6.0), st.booleans())
def test_sector_and_duality(a, x, negative):
    x = -x if negative else x
    c = slice_curve(WeierstrassParams(a), x, 101)
    st_ = excursion(c)
    assert angle_spread(c) <= THETA0
    assert is_graph_over_line(c)
    assert np.max(np.abs(c.v)) <= m_bound(x)
    assert st_.upper <= c_bound(x)
    assert max(st_.inner_products) <= n_bound(x) + 1e-9
    assert st_.lower >= R0_FLOOR
