"""Closed-form Weierstrass data of the family g_a = exp(i h_a), h_a = arctan(z/a)/a.

Every function accepts a single point (a :class:`PlanePoint`, a Python
complex or a real) or an array of complex points, and broadcasts.  Nothing
here integrates; the immersion itself lives in :mod:`spiraldisk.immersion`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import SingularityProximity

__all__ = [
    "WeierstrassParams",
    "PlanePoint",
    "GaussData",
    "eval_h",
    "eval_g",
    "dz_h",
    "partials_uv",
    "gauss_curvature",
    "unit_normal",
    "gauss_data",
]


@dataclass(frozen=True)
class WeierstrassParams:
    """Family parameter ``a`` in (0, 1/2] and the singularity guard radius."""

    a: float
    eps_singularity: float | None = field(default=None)

    def __post_init__(self):
        a = float(self.a)
        if not (math.isfinite(a) and 0.0 < a <= 0.5):
            raise ValueError(f"a must lie in (0, 1/2], got {self.a!r}")
        object.__setattr__(self, "a", a)
        eps = 1e-9 * a if self.eps_singularity is None else float(self.eps_singularity)
        if not eps > 0.0:
            raise ValueError(f"eps_singularity must be positive, got {eps!r}")
        object.__setattr__(self, "eps_singularity", eps)


@dataclass(frozen=True)
class PlanePoint:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite plane point ({self.x}, {self.y})")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class GaussData:
    u: float
    v: float
    g: complex
    normal: tuple[float, float, float]
    gauss_curvature: float
    second_fund_sq: float


def _split(z: Any) -> tuple[np.ndarray, np.ndarray, bool]:
    """Return (x, y, is_scalar) for any supported point representation."""
    if isinstance(z, PlanePoint):
        return np.float64(z.x), np.float64(z.y), True
    if isinstance(z, (list, tuple)) and z and isinstance(z[0], PlanePoint):
        return (np.array([p.x for p in z], dtype=float),
                np.array([p.y for p in z], dtype=float), False)
    arr = np.asarray(z)
    if arr.dtype.kind != "c":
        arr = arr.astype(float) + 0j
    return arr.real, arr.imag, arr.ndim == 0


def _out(val, scalar: bool):
    return val.item() if scalar else val


def _guard(params: WeierstrassParams, x, y, z) -> None:
    a = params.a
    eps = params.eps_singularity
    near_pole = np.minimum(np.hypot(x, y - a), np.hypot(x, y + a)) < eps
    on_branch = (x == 0.0) & (np.abs(y) >= a)
    bad = near_pole | on_branch
    if np.any(bad):
        if np.ndim(bad):
            idx = int(np.flatnonzero(np.ravel(bad))[0])
            offending = complex(np.ravel(x)[idx], np.ravel(y)[idx])
        else:
            offending = complex(float(x), float(y))
        raise SingularityProximity(offending)


def _uv(a: float, x, y):
    # principal Arg of (a - y + ix) and (a + y - ix); dividing by a > 0 leaves Arg unchanged
    u = (np.arctan2(x, a - y) - np.arctan2(-x, a + y)) / (2.0 * a)
    # (1/4a) log(((a+y)^2+x^2)/((a-y)^2+x^2)) written as an atanh so v is exactly odd in y
    v = np.arctanh(2.0 * a * y / (x * x + y * y + a * a)) / (2.0 * a)
    return u, v


def eval_h(params: WeierstrassParams, z, *, check: bool = True):
    """Return ``(u, v)`` with ``u + iv = arctan(z/a)/a`` on the principal branch."""
    x, y, scalar = _split(z)
    if check:
        _guard(params, x, y, z)
    u, v = _uv(params.a, x, y)
    return _out(u, scalar), _out(v, scalar)


def eval_g(params: WeierstrassParams, z, *, check: bool = True):
    u, v = eval_h(params, z, check=check)
    g = np.exp(-np.asarray(v)) * (np.cos(u) + 1j * np.sin(u))
    return complex(g) if np.ndim(g) == 0 else g


def _denominator(a: float, x, y):
    re = x * x + a * a - y * y
    return re, re * re + 4.0 * x * x * y * y


def dz_h(params: WeierstrassParams, z, *, check: bool = True):
    """Complex derivative ``1/(z^2 + a^2)``."""
    x, y, scalar = _split(z)
    if check:
        _guard(params, x, y, z)
    re, den = _denominator(params.a, x, y)
    val = (re - 2j * x * y) / den
    return _out(val, scalar)


def partials_uv(params: WeierstrassParams, z, *, check: bool = True):
    """Return ``(du_dy, dv_dy, du_dx, dv_dx)`` from the closed forms and Cauchy-Riemann."""
    x, y, scalar = _split(z)
    if check:
        _guard(params, x, y, z)
    re, den = _denominator(params.a, x, y)
    du_dy = 2.0 * x * y / den
    dv_dy = re / den
    return (_out(du_dy, scalar), _out(dv_dy, scalar),
            _out(dv_dy, scalar), _out(-du_dy, scalar))


def gauss_curvature(params: WeierstrassParams, z, *, check: bool = True):
    """Gauss curvature ``-|dh/dz|^2 / cosh^4 v`` of the immersed surface."""
    x, y, scalar = _split(z)
    if check:
        _guard(params, x, y, z)
    _, den = _denominator(params.a, x, y)
    _, v = _uv(params.a, x, y)
    k = -1.0 / (den * np.cosh(v) ** 4)
    return _out(k, scalar)


def unit_normal(params: WeierstrassParams, z, *, check: bool = True):
    """Gauss map ``(2 Re g, 2 Im g, |g|^2 - 1) / (|g|^2 + 1)``; shape ``(..., 3)``."""
    x, y, scalar = _split(z)
    if check:
        _guard(params, x, y, z)
    u, v = _uv(params.a, x, y)
    # with |g| = e^{-v}: 2|g|/(|g|^2+1) = 1/cosh v and (|g|^2-1)/(|g|^2+1) = -tanh v
    sech = 1.0 / np.cosh(v)
    n = np.stack([sech * np.cos(u), sech * np.sin(u), -np.tanh(v)], axis=-1)
    return tuple(float(c) for c in n) if scalar else n


def gauss_data(params: WeierstrassParams, z: PlanePoint | complex) -> GaussData:
    """Bundle every pointwise Gauss-map quantity at a single point."""
    u, v = eval_h(params, z)
    k = gauss_curvature(params, z)
    return GaussData(
        u=u,
        v=v,
        g=eval_g(params, z),
        normal=unit_normal(params, z),
        gauss_curvature=k,
        second_fund_sq=-2.0 * k,
    )
