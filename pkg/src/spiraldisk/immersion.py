"""Conformal minimal immersion F_a: Omega_a -> R^3 and triangle meshes of its image.

F_a is normalised by F_a(0) = 0.  Positions are obtained by integrating the
closed-form derivative fields along straight segments: the axis point
F_a(x, 0) = (0, 0, x) is exact, and the vertical segment up to (x, y) stays
inside Omega_a because every vertical slice of the domain is an interval.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad_vec

from .domain import DomainSpec, contains, grid_arrays, half_width, rectangle_inside
from .errors import OutsideDomain, PathLeavesDomain, QuadratureFailure
from .weierstrass import PlanePoint, WeierstrassParams, _split, _uv, gauss_curvature, unit_normal

__all__ = [
    "QuadratureConfig",
    "SurfaceSample",
    "TriangleMesh",
    "dxF",
    "dyF",
    "immerse",
    "immerse_points",
    "integrate_segments",
    "immerse_via_path",
    "build_mesh",
]


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 60

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_QUAD = QuadratureConfig()


@dataclass(frozen=True)
class SurfaceSample:
    param: PlanePoint
    position: tuple[float, float, float]
    normal: tuple[float, float, float]
    gauss_curvature: float
    u: float
    v: float


@dataclass
class TriangleMesh:
    """Structured triangulation of Sigma_a over the truncated grid |x| <= x_max.

    Per-vertex data is stored column-wise in numpy arrays; :meth:`vertex`
    materialises a single :class:`SurfaceSample`.
    """

    params: WeierstrassParams
    x_max: float
    nx: int
    ny: int
    param_xy: np.ndarray  # (N, 2)
    positions: np.ndarray  # (N, 3)
    normals: np.ndarray  # (N, 3)
    curvature: np.ndarray  # (N,)
    u: np.ndarray
    v: np.ndarray
    triangles: np.ndarray  # (M, 3) int

    def __len__(self) -> int:
        return len(self.positions)

    def vertex(self, i: int) -> SurfaceSample:
        return SurfaceSample(
            param=PlanePoint(float(self.param_xy[i, 0]), float(self.param_xy[i, 1])),
            position=tuple(float(c) for c in self.positions[i]),
            normal=tuple(float(c) for c in self.normals[i]),
            gauss_curvature=float(self.curvature[i]),
            u=float(self.u[i]),
            v=float(self.v[i]),
        )

    @property
    def vertices(self) -> list[SurfaceSample]:
        return [self.vertex(i) for i in range(len(self))]

    def triangle_areas(self) -> np.ndarray:
        p = self.positions[self.triangles]
        return 0.5 * np.linalg.norm(np.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]), axis=1)

    def clipped(self, radius: float) -> "TriangleMesh":
        """Keep triangles whose three vertices satisfy x1^2 + x2^2 <= radius^2."""
        r2 = np.sum(self.positions[:, :2] ** 2, axis=1)
        keep = np.all(r2[self.triangles] <= radius * radius, axis=1)
        tris = self.triangles[keep]
        used = np.unique(tris)
        remap = np.full(len(self.positions), -1, dtype=np.int64)
        remap[used] = np.arange(len(used))
        return TriangleMesh(
            params=self.params, x_max=self.x_max, nx=self.nx, ny=self.ny,
            param_xy=self.param_xy[used], positions=self.positions[used],
            normals=self.normals[used], curvature=self.curvature[used],
            u=self.u[used], v=self.v[used], triangles=remap[tris],
        )


def _fields(a: float, x, y):
    u, v = _uv(a, x, y)
    ch, sh = np.cosh(v), np.sinh(v)
    cu, su = np.cos(u), np.sin(u)
    return (sh * cu, sh * su), (ch * su, -ch * cu)


def _check_inside(params: WeierstrassParams, x, y) -> None:
    inside = np.abs(y) <= half_width(params.a, x)
    if not np.all(inside):
        idx = int(np.flatnonzero(~np.atleast_1d(inside))[0])
        xs, ys = np.atleast_1d(x), np.atleast_1d(y)
        raise OutsideDomain(complex(xs[idx], ys[idx]), params.a)


def dxF(params: WeierstrassParams, z):
    """d/dx F_a = (sinh v cos u, sinh v sin u, 1); shape ``(..., 3)``."""
    x, y, scalar = _split(z)
    _check_inside(params, x, y)
    (c1, c2), _ = _fields(params.a, x, y)
    out = np.stack([c1, c2, np.ones_like(c1)], axis=-1)
    return tuple(float(c) for c in out) if scalar else out


def dyF(params: WeierstrassParams, z):
    """d/dy F_a = (cosh v sin u, -cosh v cos u, 0); shape ``(..., 3)``."""
    x, y, scalar = _split(z)
    _check_inside(params, x, y)
    _, (c1, c2) = _fields(params.a, x, y)
    out = np.stack([c1, c2, np.zeros_like(c1)], axis=-1)
    return tuple(float(c) for c in out) if scalar else out


def integrate_segments(params: WeierstrassParams, z0, z1, quad: QuadratureConfig = DEFAULT_QUAD):
    """Displacements F_a(z1) - F_a(z0) along the straight segments [z0, z1].

    Segments are integrated together: one adaptive Gauss-Kronrod run over the
    common parameter s in [0, 1] with the error measured in the max norm over
    all segments and components.  Returns ``(disp, err)`` with ``disp`` of
    shape ``(n, 3)``.  Segments are assumed to lie in the domain.
    """
    z0 = np.atleast_1d(np.asarray(z0, dtype=complex)).ravel()
    z1 = np.atleast_1d(np.asarray(z1, dtype=complex)).ravel()
    z0, z1 = np.broadcast_arrays(z0, z1)
    dz = z1 - z0
    dx, dy = dz.real, dz.imag
    a = params.a
    n = z0.size
    disp = np.zeros((n, 3))
    disp[:, 2] = dx
    active = dz != 0
    if not np.any(active):
        return disp, 0.0
    x0, y0, ddx, ddy = z0.real[active], z0.imag[active], dx[active], dy[active]

    def integrand(s):
        (hx1, hx2), (hy1, hy2) = _fields(a, x0 + s * ddx, y0 + s * ddy)
        return np.concatenate([hx1 * ddx + hy1 * ddy, hx2 * ddx + hy2 * ddy])

    res, err, info = quad_vec(
        integrand, 0.0, 1.0,
        epsabs=quad.abs_tol, epsrel=quad.rel_tol, norm="max",
        limit=quad.max_subdivisions, full_output=True,
    )
    tol = max(quad.abs_tol, quad.rel_tol * float(np.max(np.abs(res))))
    if not info.success or err > tol:
        raise QuadratureFailure(
            f"segment quadrature did not reach tolerance {tol:g} "
            f"(estimate {err:g}, {info.intervals.shape[0]} subintervals)", err)
    m = int(active.sum())
    disp[active, 0] = res[:m]
    disp[active, 1] = res[m:]
    return disp, float(err)


def immerse_points(params: WeierstrassParams, x, y, quad: QuadratureConfig = DEFAULT_QUAD):
    """Vectorised F_a at arrays of points; returns ``(positions, err)``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x, y = np.broadcast_arrays(x, y)
    _check_inside(params, x, y)
    flat_x, flat_y = x.ravel(), y.ravel()
    disp, err = integrate_segments(params, flat_x + 0j, flat_x + 1j * flat_y, quad)
    disp[:, 2] = flat_x  # x3(F_a(x, y)) = x exactly; vertical segments carry no x3 increment
    return disp.reshape(x.shape + (3,)), err


def immerse(params: WeierstrassParams, z, quad: QuadratureConfig = DEFAULT_QUAD) -> SurfaceSample:
    """Evaluate the immersion at one point of Omega_a, with Gauss-map data attached."""
    x, y, _ = _split(z)
    x, y = float(x), float(y)
    if not contains(params.a, complex(x, y)):
        raise OutsideDomain(complex(x, y), params.a)
    pos, _ = immerse_points(params, x, y, quad)
    u, v = _uv(params.a, x, y)
    return SurfaceSample(
        param=PlanePoint(x, y),
        position=tuple(float(c) for c in pos),
        normal=unit_normal(params, complex(x, y)),
        gauss_curvature=gauss_curvature(params, complex(x, y)),
        u=float(u),
        v=float(v),
    )


def _segment_inside(a: float, z0: complex, z1: complex, n_check: int = 257) -> bool:
    if z0.real == z1.real or z0.imag == z1.imag:
        # axis-parallel: the closed rectangle spanned by the endpoints is the segment
        return rectangle_inside(a, PlanePoint(z0.real, z0.imag), PlanePoint(z1.real, z1.imag))
    s = np.linspace(0.0, 1.0, n_check)
    return bool(np.all(contains(a, z0 + s * (z1 - z0))))


def immerse_via_path(params: WeierstrassParams, waypoints, quad: QuadratureConfig = DEFAULT_QUAD):
    """Displacement of F_a along a polyline through ``waypoints`` (from first to last).

    Axis-parallel legs are checked exactly; oblique legs by dense sampling.
    """
    pts = [p.z if isinstance(p, PlanePoint) else complex(p) for p in waypoints]
    if len(pts) < 2:
        return np.zeros(3)
    for z0, z1 in zip(pts[:-1], pts[1:]):
        if not _segment_inside(params.a, z0, z1):
            raise PathLeavesDomain(f"segment {z0} -> {z1} leaves Omega_a for a={params.a}")
    disp, _ = integrate_segments(params, np.array(pts[:-1]), np.array(pts[1:]), quad)
    return disp.sum(axis=0)


def _grid_triangles(nx: int, ny: int) -> np.ndarray:
    i, j = np.meshgrid(np.arange(nx - 1), np.arange(ny - 1), indexing="ij")
    v00 = (i * ny + j).ravel()
    v01 = v00 + 1
    v10 = v00 + ny
    v11 = v10 + 1
    lower = np.stack([v00, v10, v11], axis=1)
    upper = np.stack([v00, v11, v01], axis=1)
    return np.stack([lower, upper], axis=1).reshape(-1, 3)


def build_mesh(params: WeierstrassParams, x_max: float = 2.0, nx: int = 201, ny: int = 41,
               quad: QuadratureConfig = DEFAULT_QUAD) -> TriangleMesh:
    """Triangulate Sigma_a over the grid of :func:`spiraldisk.domain.grid_arrays`.

    Vertex ``i * ny + j`` is the ``j``-th point of the ``i``-th slice; every
    grid cell is split along its (00)-(11) diagonal.
    """
    X, Y = grid_arrays(DomainSpec(params.a), x_max, nx, ny)
    x, y = X.ravel(), Y.ravel()
    pos, _ = immerse_points(params, x, y, quad)
    u, v = _uv(params.a, x, y)
    mesh = TriangleMesh(
        params=params, x_max=float(x_max), nx=nx, ny=ny,
        param_xy=np.stack([x, y], axis=1),
        positions=pos,
        normals=unit_normal(params, x + 1j * y, check=False),
        curvature=gauss_curvature(params, x + 1j * y, check=False),
        u=u, v=v,
        triangles=_grid_triangles(nx, ny),
    )
    mesh.triangles = mesh.triangles[mesh.triangle_areas() > 1e-14]
    return mesh
