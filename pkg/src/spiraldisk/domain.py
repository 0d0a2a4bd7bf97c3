"""The unbounded parameter domains Omega_a and their a -> 0 limit.

Omega_a is bounded by |y| = (x^2+a^2)^{3/4}/2 near the axis (|x| <= x_A),
by |y| = (x^2+a^2)^{1/2}/2 far out (|x| >= x_B) and by straight segments
bridging the two on x_A <= |x| <= x_B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidResolution
from .weierstrass import PlanePoint

__all__ = [
    "X_A",
    "X_B",
    "THETA0",
    "DomainConstants",
    "DomainSpec",
    "LimitDomainSpec",
    "half_width",
    "contains",
    "crossing_points",
    "grid_sample",
    "grid_arrays",
    "limit_half_width",
    "limit_contains",
    "rectangle_inside",
    "d1_half_width",
    "d2_half_width",
]

# first and second third points of [1/pi, 1/2]
X_A = (4.0 + math.pi) / (6.0 * math.pi)
X_B = (1.0 + math.pi) / (3.0 * math.pi)
# opening angle of the sector containing the slices with |x| > x_A
THETA0 = 1.0 / X_A


@dataclass(frozen=True)
class DomainConstants:
    x_A: float = X_A
    x_B: float = X_B
    theta0: float = THETA0


def d1_half_width(a: float, x):
    return (x * x + a * a) ** 0.75 / 2.0


def d2_half_width(a: float, x):
    return np.sqrt(x * x + a * a) / 2.0


@dataclass(frozen=True)
class DomainSpec:
    """Omega_a for one value of the family parameter."""

    a: float

    def __post_init__(self):
        a = float(self.a)
        if not (math.isfinite(a) and 0.0 <= a <= 0.5):
            raise ValueError(f"a must lie in [0, 1/2], got {self.a!r}")
        object.__setattr__(self, "a", a)

    @property
    def y_A(self) -> float:
        return float(d1_half_width(self.a, X_A))

    @property
    def y_B(self) -> float:
        return float(d2_half_width(self.a, X_B))

    @property
    def segment_slope(self) -> float:
        """Slope of xi_1 (xi_2 has the negated slope, xi_3, xi_4 are the reflections)."""
        return (self.y_B - self.y_A) / (X_B - X_A)

    def xi(self, k: int, x):
        """Bridging segments xi_1 ... xi_4 as written for x on their own interval."""
        y_a, y_b = self.y_A, self.y_B
        if k == 1:
            return y_a + (y_b - y_a) * (x - X_A) / (X_B - X_A)
        if k == 2:
            return y_a + (y_b - y_a) * (x + X_A) / (X_A - X_B)
        if k == 3:
            return -self.xi(1, x)
        if k == 4:
            return -self.xi(2, x)
        raise ValueError(f"segment index must be 1..4, got {k}")


@dataclass(frozen=True)
class LimitDomainSpec:
    """Omega_0: the intersection of all Omega_a with the origin removed."""

    def contains(self, z: PlanePoint) -> bool:
        return limit_contains(z)


def _piecewise(a: float, x):
    ax = np.abs(np.asarray(x, dtype=float))
    spec = DomainSpec(a)
    inner = d1_half_width(a, ax)
    outer = d2_half_width(a, ax)
    bridge = spec.xi(1, ax)
    return np.where(ax <= X_A, inner, np.where(ax >= X_B, outer, bridge))


def half_width(spec: DomainSpec | float, x):
    """Upper boundary height y_{x,a} of Omega_a over the vertical line at ``x``."""
    a = spec.a if isinstance(spec, DomainSpec) else float(spec)
    hw = _piecewise(a, x)
    return float(hw) if np.ndim(hw) == 0 else hw


def limit_half_width(x):
    """Pointwise a -> 0 limit of :func:`half_width` (also its infimum over a)."""
    return half_width(0.0, x)


def contains(spec: DomainSpec | float, z) -> bool | np.ndarray:
    """Closed membership test |y| <= y_{x,a}; arrays of complex points are accepted."""
    if isinstance(z, PlanePoint):
        return bool(abs(z.y) <= half_width(spec, z.x))
    zz = np.asarray(z)
    res = np.abs(zz.imag) <= half_width(spec, zz.real)
    return bool(res) if np.ndim(res) == 0 else res


def limit_contains(z) -> bool | np.ndarray:
    if isinstance(z, PlanePoint):
        x, y = z.x, z.y
        return bool((x != 0.0 or y != 0.0) and abs(y) <= limit_half_width(x))
    zz = np.asarray(z)
    res = (zz != 0) & (np.abs(zz.imag) <= limit_half_width(zz.real))
    return bool(res) if np.ndim(res) == 0 else res


def crossing_points(a: float) -> tuple[float, float]:
    """Abscissae where the boundaries of D^1_a and D^2_a cross."""
    if not 0.0 < a <= 0.5:
        raise ValueError(f"a must lie in (0, 1/2], got {a!r}")
    r = math.sqrt(1.0 - a * a)
    return -r, r


def grid_arrays(spec: DomainSpec, x_max: float, nx: int, ny: int):
    """Structured grid as two ``(nx, ny)`` arrays; row ``i`` is the slice at ``x_i``."""
    if nx < 2 or ny < 2:
        raise InvalidResolution(f"nx and ny must be >= 2, got nx={nx}, ny={ny}")
    if not x_max > 0:
        raise InvalidResolution(f"x_max must be positive, got {x_max}")
    xs = np.linspace(-x_max, x_max, nx)
    t = np.linspace(-1.0, 1.0, ny)
    if ny % 2 == 1:
        t[ny // 2] = 0.0
    hw = np.asarray(half_width(spec, xs))
    X = np.repeat(xs[:, None], ny, axis=1)
    Y = hw[:, None] * t[None, :]
    return X, Y


def grid_sample(spec: DomainSpec, x_max: float, nx: int, ny: int) -> list[PlanePoint]:
    X, Y = grid_arrays(spec, x_max, nx, ny)
    return [PlanePoint(float(x), float(y)) for x, y in zip(X.ravel(), Y.ravel())]


def rectangle_inside(spec: DomainSpec | float, corner1: PlanePoint, corner2: PlanePoint) -> bool:
    """True iff the closed axis-parallel rectangle spanned by the corners lies in Omega_a.

    Vertical slices of Omega_a are symmetric intervals whose half-width grows
    with |x|, so only the largest |y| against the abscissa nearest 0 matters.
    """
    x_lo, x_hi = sorted((corner1.x, corner2.x))
    x_near = 0.0 if x_lo <= 0.0 <= x_hi else min(abs(x_lo), abs(x_hi))
    y_far = max(abs(corner1.y), abs(corner2.y))
    return bool(y_far <= half_width(spec, x_near))
