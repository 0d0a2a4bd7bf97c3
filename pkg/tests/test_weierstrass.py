from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import h_oracle
from spiraldisk.domain import half_width
from spiraldisk.errors import SingularityProximity
from spiraldisk.weierstrass import (
    PlanePoint,
    WeierstrassParams,
    dz_h,
    eval_g,
    eval_h,
    gauss_curvature,
    gauss_data,
    partials_uv,
    unit_normal,
)

HALF = WeierstrassParams(0.5)

a_values = st.sampled_from([2.0 ** -k for k in range(1, 6)]) | st.floats(0.01, 0.5)


@st.composite
def domain_points(draw):
    a = draw(a_values)
    x = draw(st.floats(-5.0, 5.0))
    t = draw(st.floats(-0.999, 0.999))
    y = t * half_width(a, x)
    return a, x, y


def test_h_examples():
    assert eval_h(HALF, 0j) == (0.0, 0.0)
    u, v = eval_h(HALF, 0.5)
    assert u == pytest.approx(2 * math.atan(1.0), abs=1e-15)
    assert v == 0.0
    u, v = eval_h(HALF, 0.1j)
    assert u == 0.0
    assert v == pytest.approx(math.log(1.5), abs=1e-15)
    assert v == pytest.approx(0.405465, abs=1e-6)


def test_h_accepts_plane_points():
    assert eval_h(HALF, PlanePoint(0.5, 0.0)) == eval_h(HALF, 0.5 + 0j)


def test_g_examples():
    assert eval_g(HALF, 0j) == 1
    x = np.linspace(-3, 3, 41)
    assert np.allclose(np.abs(eval_g(HALF, x + 0j)), 1.0, atol=1e-15)
    assert abs(eval_g(HALF, 0.1j)) == pytest.approx(2 / 3, abs=1e-12)


def test_dz_h_examples():
    assert dz_h(HALF, 0j) == pytest.approx(4.0)
    assert dz_h(HALF, 0.5) == pytest.approx(2.0)
    z = np.array([0.3 + 0.1j, -1.2 + 0.2j, 0.05 - 0.1j])
    assert np.allclose(dz_h(HALF, z), dz_h(HALF, -z), rtol=0, atol=1e-14)


def test_partials_examples():
    du_dy, dv_dy, du_dx, dv_dx = partials_uv(HALF, 0j)
    assert du_dy == 0.0 and dv_dy == pytest.approx(4.0)
    assert du_dx == pytest.approx(4.0) and dv_dx == 0.0
    x = np.linspace(-2, 2, 17)
    assert np.all(partials_uv(HALF, x + 0j)[0] == 0.0)


def test_curvature_examples():
    for k in range(1, 6):
        a = 2.0 ** -k
        assert gauss_curvature(WeierstrassParams(a), 0j) == pytest.approx(-a ** -4, rel=1e-14)
    assert gauss_curvature(HALF, 0j) == pytest.approx(-16.0)
    x = np.array([1.0, 10.0, 100.0])
    K = gauss_curvature(HALF, x + 0j)
    assert np.all(np.abs(K) <= 1.0 / (x ** 2 + 0.25) ** 2 * (1 + 1e-14))


def test_normal_examples():
    assert unit_normal(HALF, 0j) == pytest.approx((1.0, 0.0, 0.0), abs=1e-15)
    n = unit_normal(HALF, np.linspace(-2, 2, 9) + 0j)
    assert n.shape == (9, 3)
    assert np.all(n[:, 2] == 0.0)


def test_gauss_data_bundle():
    gd = gauss_data(HALF, PlanePoint(0.0, 0.0))
    assert gd.gauss_curvature == pytest.approx(-16.0)
    assert gd.second_fund_sq == pytest.approx(32.0)
    assert gd.g == 1


@pytest.mark.parametrize("z", [0.5j, -0.5j, 0.5j + 1e-12, 0.6j, -1.3j])
def test_singular_points_rejected(z):
    with pytest.raises(SingularityProximity) as info:
        eval_h(HALF, z)
    assert info.value.z == pytest.approx(z)


def test_guard_can_be_skipped():
    u, v = eval_h(HALF, 0.3 + 0.7j, check=False)
    assert np.isfinite(u) and np.isfinite(v)


@pytest.mark.parametrize("a", [0.0, -0.1, 0.51, float("nan")])
def test_params_validation(a):
    with pytest.raises(ValueError):
        WeierstrassParams(a)


@settings(max_examples=300, deadline=None)
@given(domain_points())
def test_h_matches_complex_oracle(p):
    a, x, y = p
    u, v = eval_h(WeierstrassParams(a), complex(x, y))
    h = h_oracle(a, complex(x, y))
    assert u == pytest.approx(h.real, abs=1e-9 / a)
    assert v == pytest.approx(h.imag, abs=1e-9 / a)


@settings(max_examples=300, deadline=None)
@given(domain_points())
def test_dz_h_matches_complex_difference(p):
    a, x, y = p
    z = complex(x, y)
    step = 1e-5 * max(a, abs(z))
    fd = (h_oracle(a, z + step) - h_oracle(a, z - step)) / (2 * step)
    got = dz_h(WeierstrassParams(a), z)
    assert abs(got - fd) <= 1e-5 * abs(got)


@settings(max_examples=300, deadline=None)
@given(domain_points())
def test_symmetries(p):
    a, x, y = p
    params = WeierstrassParams(a)
    u, v = eval_h(params, complex(x, y))
    # h is odd: h(-z) = -h(z); real on the real axis: h(conj z) = conj h(z)
    un, vn = eval_h(params, complex(-x, -y))
    uc, vc = eval_h(params, complex(x, -y))
    assert un == pytest.approx(-u, abs=1e-12) and vn == pytest.approx(-v, abs=1e-12)
    assert uc == pytest.approx(u, abs=1e-12) and vc == pytest.approx(-v, abs=1e-12)
    assert v * y >= 0
    if abs(y) > 1e-300:
        assert np.sign(v) == np.sign(y)


@settings(max_examples=300, deadline=None)
@given(domain_points())
def test_normal_is_unit_and_matches_g(p):
    a, x, y = p
    params = WeierstrassParams(a)
    n = np.array(unit_normal(params, complex(x, y)))
    assert np.linalg.norm(n) == pytest.approx(1.0, abs=1e-14)
    # stereographic form of the Gauss map
    g = np.exp(1j * h_oracle(a, complex(x, y)))
    m = abs(g) ** 2
    ref = np.array([2 * g.real, 2 * g.imag, m - 1]) / (m + 1)
    assert np.allclose(n, ref, atol=1e-9)


@settings(max_examples=300, deadline=None)
@given(domain_points())
def test_curvature_matches_weierstrass_formula(p):
    a, x, y = p
    z = complex(x, y)
    # K = -[4 |g'| |g| / (|f| (1 + |g|^2)^2)]^2 with f = 1/g for phi = dz
    g = np.exp(1j * h_oracle(a, z))
    dg = 1j * g / (z * z + a * a)
    ref = -(4 * abs(dg) * abs(g) / (1 + abs(g) ** 2) ** 2) ** 2
    got = gauss_curvature(WeierstrassParams(a), z)
    assert got == pytest.approx(ref, rel=1e-9)
