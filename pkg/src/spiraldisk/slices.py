"""Horizontal slices gamma_{x,a}(y) = F_a(x, y) of Sigma_a and their excursion bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domain import THETA0, X_A, half_width
from .errors import ZeroSliceHeight
from .immersion import DEFAULT_QUAD, QuadratureConfig, immerse_points
from .weierstrass import WeierstrassParams, _uv

__all__ = [
    "SECTOR_COS",
    "SliceCurve",
    "ExcursionStats",
    "slice_curve",
    "angle_spread",
    "tangent_angles",
    "is_graph_over_line",
    "excursion",
    "m_bound",
    "n_bound",
    "c_bound",
    "excursion_lower_bound",
    "R0_FLOOR",
    "estimate_R0",
    "sheet_turning",
]

# Cosine of the sector half-angle theta0/2.  Using the full angle would give
# cos(theta0) < 0 and no positive lower bound at all.
SECTOR_COS = math.cos(THETA0 / 2.0)
R0_FLOOR = SECTOR_COS / (4.0 * math.pi)


@dataclass
class SliceCurve:
    x: float
    a: float
    y: np.ndarray  # (n,)
    points: np.ndarray  # (n, 2) first two coordinates of F_a(x, y)
    tangents: np.ndarray  # (n, 2) first two coordinates of d/dy F_a
    u: np.ndarray
    v: np.ndarray
    y_max: float

    @property
    def center(self) -> int:
        return len(self.y) // 2

    def reversed(self) -> "SliceCurve":
        return SliceCurve(self.x, self.a, self.y[::-1].copy(), self.points[::-1].copy(),
                          self.tangents[::-1].copy(), self.u[::-1].copy(), self.v[::-1].copy(),
                          self.y_max)


@dataclass(frozen=True)
class ExcursionStats:
    lower: float  # min over the two endpoints of |gamma(+-y_max) - gamma(0)|
    upper: float  # max over the two endpoints
    inner_products: tuple[float, float]  # |<gamma(+-y_max) - gamma(0), gamma'(0)>|
    angle_spread: float
    max_radius: float  # max over all samples of |gamma(y) - gamma(0)|


def slice_curve(params: WeierstrassParams, x: float, n_samples: int = 201,
                quad: QuadratureConfig = DEFAULT_QUAD) -> SliceCurve:
    if n_samples < 3 or n_samples % 2 == 0:
        raise ValueError(f"n_samples must be odd and >= 3, got {n_samples}")
    x = float(x)
    y_max = half_width(params.a, x)
    half = n_samples // 2
    upper = y_max * (np.arange(1, half + 1) / half)  # last sample is exactly y_max
    y = np.concatenate([-upper[::-1], [0.0], upper])
    pos, _ = immerse_points(params, np.full_like(y, x), y, quad)
    u, v = _uv(params.a, x, y)
    ch = np.cosh(v)
    tangents = np.stack([ch * np.sin(u), -ch * np.cos(u)], axis=1)
    return SliceCurve(x=x, a=params.a, y=y, points=pos[:, :2], tangents=tangents,
                      u=u, v=v, y_max=float(y_max))


def tangent_angles(curve: SliceCurve) -> np.ndarray:
    """Signed angle from gamma'(0) to gamma'(y) at every sample, from the tangent vectors."""
    t0 = curve.tangents[curve.center]
    t = curve.tangents
    cross = t0[0] * t[:, 1] - t0[1] * t[:, 0]
    dot = t @ t0
    return np.arctan2(cross, dot)


def angle_spread(curve: SliceCurve) -> float:
    """Opening angle of the smallest sector about gamma'(0) holding every tangent.

    Equals twice max |u(x, y) - u(x, 0)| over the samples.
    """
    du = curve.u - curve.u[curve.center]
    return float(2.0 * np.max(np.abs(du)))


def is_graph_over_line(curve: SliceCurve) -> bool:
    """True iff projections onto gamma'(0) increase strictly along the sample order."""
    t0 = curve.tangents[curve.center]
    proj = curve.points @ t0
    return bool(np.all(np.diff(proj) > 0))


def excursion(curve: SliceCurve) -> ExcursionStats:
    c = curve.center
    p0 = curve.points[c]
    t0 = curve.tangents[c]
    ends = curve.points[[0, -1]] - p0
    norms = np.linalg.norm(ends, axis=1)
    inner = np.abs(ends @ t0)
    radii = np.linalg.norm(curve.points - p0, axis=1)
    return ExcursionStats(
        lower=float(norms.min()),
        upper=float(norms.max()),
        inner_products=(float(inner[0]), float(inner[1])),
        angle_spread=angle_spread(curve),
        max_radius=float(radii.max()),
    )


def m_bound(x: float) -> float:
    """Bound 8/(9|x|) on |v_a| over the slice at height x, uniform in a."""
    if x == 0:
        raise ZeroSliceHeight("M_x is undefined on the slice x = 0")
    return 8.0 / (9.0 * abs(x))


def n_bound(x: float) -> float:
    """Bound cosh(M_x) sqrt(x^2 + 1/4)/2 on the endpoint inner products."""
    m = m_bound(x)
    if m > 700.0:
        return math.inf
    return math.cosh(m) * math.sqrt(x * x + 0.25) / 2.0


def c_bound(x: float) -> float:
    """Excursion ceiling C_x = N_x / cos(theta0/2)."""
    return n_bound(x) / SECTOR_COS


def excursion_lower_bound(x: float) -> float:
    """cos(theta0/2) |x| / 4, claimed for every slice with |x| > x_A."""
    return SECTOR_COS * abs(x) / 4.0


def estimate_R0(a_grid, x_grid, n_samples: int = 201,
                quad: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Smallest endpoint excursion over every (a, x) pair of the grids."""
    a_grid, x_grid = list(a_grid), list(x_grid)
    if not a_grid or not x_grid:
        raise ValueError("estimate_R0 needs non-empty grids")
    best = math.inf
    for a in a_grid:
        params = WeierstrassParams(a)
        for x in x_grid:
            best = min(best, endpoint_excursion(params, x, quad))
    return best


def endpoint_excursion(params: WeierstrassParams, x: float,
                       quad: QuadratureConfig = DEFAULT_QUAD) -> float:
    """min |gamma(+-y_max) - gamma(0)| without sampling the interior of the slice."""
    y_max = half_width(params.a, x)
    pos, _ = immerse_points(params, np.array([x, x]), np.array([-y_max, y_max]), quad)
    return float(np.min(np.linalg.norm(pos[:, :2], axis=1)))


def sheet_turning(params: WeierstrassParams, x1: float, x2: float) -> float:
    """Rotation of the axis tangent gamma'_{x,a}(0) between heights x1 and x2.

    ``(arctan(x2/a) - arctan(x1/a)) / a``; either end may be infinite.
    """
    a = params.a
    return float((np.arctan(x2 / a) - np.arctan(x1 / a)) / a)
