"""Numerical certification suites.

Each ``check_*`` function re-derives one family of inequalities or limit
statements about Sigma_a and returns a :class:`VerificationReport`.  Reports
hold only deterministic data (grids, seeds, tolerances, measured values), so
re-running a suite with the same arguments reproduces it bit for bit.
"""

from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from .domain import THETA0, X_A, half_width, rectangle_inside
from .errors import RectNotInDomain
from .immersion import DEFAULT_QUAD, QuadratureConfig, TriangleMesh, immerse_points, integrate_segments
from .intersect import find_self_intersections
from .slices import (
    R0_FLOOR,
    SECTOR_COS,
    c_bound,
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
from .weierstrass import PlanePoint, WeierstrassParams, _uv, gauss_curvature, partials_uv

__all__ = [
    "SEED_ENV",
    "A_GRID",
    "X_GRID",
    "default_seed",
    "CheckRecord",
    "VerificationReport",
    "sample_domain",
    "check_easybounds",
    "check_blowup",
    "check_away_from_origin",
    "check_minimality",
    "check_convergence",
    "check_spiral",
    "check_embeddedness",
    "check_slices",
    "check_non_properness",
    "check_R0",
    "merge_reports",
]

SEED_ENV = "SPIRALDISK_SEED"
_FALLBACK_SEED = 20240611

A_GRID = tuple(2.0 ** -k for k in range(1, 6))
X_GRID = (0.4, 0.5, 1.0, 2.0, 5.0)
C2_TAIL_A = 0.125


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw not in (None, "") else _FALLBACK_SEED


def _f(v) -> float:
    return float(v)


@dataclass
class CheckRecord:
    name: str
    claim: str
    measured: float
    bound: float
    margin: float
    passed: bool
    witness: dict[str, float] | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "claim": self.claim,
            "measured": _f(self.measured),
            "bound": _f(self.bound),
            "margin": _f(self.margin),
            "passed": bool(self.passed),
            "witness": None if self.witness is None else {k: _f(v) for k, v in self.witness.items()},
        }


@dataclass
class VerificationReport:
    suite: str
    checks: list[CheckRecord] = field(default_factory=list)
    env: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> CheckRecord:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {"suite": self.suite, "checks": [c.to_dict() for c in self.checks], "env": _plain(self.env)}

    def upper(self, name, claim, measured, bound, tol=0.0, witness=None) -> CheckRecord:
        """Record ``measured <= bound + tol``."""
        rec = CheckRecord(name, claim, _f(measured), _f(bound), _f(bound - measured),
                          bool(measured <= bound + tol), witness)
        self.checks.append(rec)
        return rec

    def lower(self, name, claim, measured, bound, strict=False, witness=None) -> CheckRecord:
        """Record ``measured >= bound`` (``>`` when ``strict``)."""
        ok = measured > bound if strict else measured >= bound
        rec = CheckRecord(name, claim, _f(measured), _f(bound), _f(measured - bound), bool(ok), witness)
        self.checks.append(rec)
        return rec

    def flag(self, name, claim, ok, measured=0.0, bound=0.0, witness=None) -> CheckRecord:
        rec = CheckRecord(name, claim, _f(measured), _f(bound), _f(bound - measured), bool(ok), witness)
        self.checks.append(rec)
        return rec


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, QuadratureConfig):
        return asdict(obj)
    return obj


def _witness(a, x, y, **extra) -> dict[str, float]:
    w = {"a": float(a), "x": float(x), "y": float(y)}
    w.update({k: float(v) for k, v in extra.items()})
    return w


def sample_domain(a: float, n: int, rng: np.random.Generator, x_span: float = 2.0,
                  x_log_range: tuple[float, float] = (1e-4, 1e2)):
    """Pseudo-random points of Omega_a.

    Half the abscissae are uniform on [-x_span, x_span], half log-uniform in
    |x| with random sign; ordinates are uniform fractions of the slice
    half-width, with 1% pinned to the boundary and 1% to the axis.
    """
    n_uni = n // 2
    n_log = n - n_uni
    x_uni = rng.uniform(-x_span, x_span, n_uni)
    lo, hi = np.log(x_log_range[0]), np.log(x_log_range[1])
    x_log = np.exp(rng.uniform(lo, hi, n_log)) * rng.choice([-1.0, 1.0], n_log)
    x = np.concatenate([x_uni, x_log])
    t = rng.uniform(-1.0, 1.0, n)
    k = max(1, n // 100)
    t[:k] = rng.choice([-1.0, 1.0], k)
    t[k:2 * k] = 0.0
    y = t * half_width(a, x)
    return x, y, t


# ---------------------------------------------------------------------------
# pointwise inequalities


def check_easybounds(params: WeierstrassParams, sample_count: int = 100_000,
                     seed: int | None = None) -> VerificationReport:
    """Derivative bounds for u_a, v_a and the sign of v_a at random domain points."""
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    seed = default_seed() if seed is None else int(seed)
    a = params.a
    rng = np.random.default_rng(seed)
    x, y, t = sample_domain(a, sample_count, rng)
    z = x + 1j * y
    du_dy, dv_dy, _, _ = partials_uv(params, z)
    _, v = _uv(a, x, y)
    s = x * x + a * a
    rep = VerificationReport("easybounds", env={
        "a": a, "sample_count": sample_count, "seed": seed,
        "sampling": "x: half uniform on [-2, 2], half log-uniform |x| in [1e-4, 1e2]; y = t * y_{x,a}",
    })

    # |du/dy| <= 4|xy|/(x^2+a^2)^2, compared as a ratio; points with xy = 0 have du/dy = 0 exactly
    bound5 = 4.0 * np.abs(x * y) / (s * s)
    zero = bound5 == 0.0
    ratio5 = np.where(zero, 0.0, np.abs(du_dy) / np.where(zero, 1.0, bound5))
    zero_ok = bool(np.all(du_dy[zero] == 0.0))
    i5 = int(np.argmax(ratio5))
    rep.upper("du_dy_bound", "|d_y u_a| <= 4|xy|/(x^2+a^2)^2 (ratio to bound)",
              ratio5[i5] if zero_ok else math.inf, 1.0, tol=1e-12,
              witness=_witness(a, x[i5], y[i5], t=t[i5]))

    # d v/dy > 3/(8(x^2+a^2))
    ratio6 = dv_dy * 8.0 * s / 3.0
    i6 = int(np.argmin(ratio6))
    rep.lower("dv_dy_bound", "d_y v_a > 3/(8(x^2+a^2)) (ratio to bound)", ratio6[i6], 1.0,
              strict=True, witness=_witness(a, x[i6], y[i6], t=t[i6]))

    # sign of v
    bad = ((y >= 0) & (v < 0)) | ((y < 0) & (v >= 0))
    wit = None
    if bad.any():
        j = int(np.flatnonzero(bad)[0])
        wit = _witness(a, x[j], y[j], v=v[j])
    rep.upper("v_sign", "v_a >= 0 for y >= 0 and v_a < 0 for y < 0 (violation count)",
              int(bad.sum()), 0, witness=wit)
    axis = y == 0.0
    rep.upper("v_axis_zero", "v_a(x, 0) = 0 (max |v| on the axis)",
              float(np.max(np.abs(v[axis]))) if axis.any() else 0.0, 0.0)
    return rep


def check_blowup(a_list) -> VerificationReport:
    """|K_a(0)| = a^-4 and |A|^2(0) = 2 a^-4, with the log-log slope in a."""
    a_arr = np.asarray(list(a_list), dtype=float)
    if a_arr.size == 0:
        raise ValueError("a_list must be non-empty")
    if np.any(np.diff(a_arr) >= 0):
        raise ValueError("a_list must be strictly decreasing")
    k0 = np.array([-gauss_curvature(WeierstrassParams(a), 0j) for a in a_arr])
    exact = a_arr ** -4.0
    rel = np.abs(k0 - exact) / exact
    i = int(np.argmax(rel))
    rep = VerificationReport("blowup", env={"a_list": a_arr.tolist(), "K0": k0.tolist()})
    rep.upper("curvature_at_origin", "|K_a(0)| = a^-4 (max relative error)", rel[i], 1e-10,
              witness={"a": a_arr[i], "K0": k0[i]})
    a2 = 2.0 * k0
    rel2 = np.max(np.abs(a2 - 2.0 * exact) / (2.0 * exact))
    rep.upper("second_fundamental_form_at_origin", "|A|^2(0) = -2K_a(0) = 2a^-4 (max relative error)",
              rel2, 1e-10)
    if a_arr.size >= 2:
        slope = float(np.polyfit(np.log(a_arr), np.log(k0), 1)[0])
        rep.upper("loglog_slope", "d log|K_a(0)| / d log a = -4 (|slope + 4|)", abs(slope + 4.0), 1e-6,
                  witness={"slope": slope})
    rep.flag("unbounded", "|K_a(0)| strictly increases as a decreases", bool(np.all(np.diff(k0) > 0)))
    return rep


def check_away_from_origin(delta: float, a_list=A_GRID, sample_count: int = 20_000,
                           seed: int | None = None, x_extent: float = 2.0) -> VerificationReport:
    """Uniform curvature bound 16/(9 delta^4) on Omega_a minus the strip |x| < delta.

    On Omega_a, y^2 <= (x^2+a^2)/4 gives |z^2+a^2|^2 >= (9/16)(x^2+a^2)^2,
    and cosh v >= 1, so |K_a| <= 16/(9 (x^2+a^2)^2) <= 16/(9 delta^4).
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    seed = default_seed() if seed is None else int(seed)
    bound = 16.0 / (9.0 * delta ** 4)
    rng = np.random.default_rng(seed)
    rep = VerificationReport("away_from_origin", env={
        "delta": delta, "a_list": list(a_list), "sample_count": sample_count, "seed": seed,
        "x_extent": x_extent,
        "bound_derivation": "|K| <= 1/|z^2+a^2|^2 <= 16/(9(x^2+a^2)^2) <= 16/(9 delta^4)",
    })
    overall = (-1.0, None)
    for a in a_list:
        params = WeierstrassParams(a)
        n_rand = max(sample_count - 2 * 101, 1)
        ax = delta + rng.uniform(0.0, x_extent, n_rand)
        x = np.concatenate([ax * rng.choice([-1.0, 1.0], n_rand), np.full(101, delta), np.full(101, -delta)])
        t = np.concatenate([rng.uniform(-1.0, 1.0, n_rand), np.linspace(-1, 1, 101), np.linspace(-1, 1, 101)])
        y = t * half_width(a, x)
        k = np.abs(gauss_curvature(params, x + 1j * y))
        i = int(np.argmax(k))
        rep.upper(f"max_abs_K[a={a:g}]", "sup over {|x| >= delta} of |K_a| <= 16/(9 delta^4)", k[i], bound,
                  witness=_witness(a, x[i], y[i]))
        if k[i] > overall[0]:
            overall = (float(k[i]), _witness(a, x[i], y[i]))
    rep.upper("max_abs_K_uniform", "sup over a and {|x| >= delta} of |K_a| <= 16/(9 delta^4)",
              overall[0], bound, witness=overall[1])
    return rep


# ---------------------------------------------------------------------------
# minimality


def _laplacian_norm(params: WeierstrassParams, z: np.ndarray, h: float) -> float:
    quad = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-12, max_subdivisions=200)
    steps = np.array([h, -h, 1j * h, -1j * h])
    z0 = np.repeat(z, 4)
    z1 = z0 + np.tile(steps, len(z))
    disp, _ = integrate_segments(params, z0, z1, quad)
    lap = disp.reshape(len(z), 4, 3).sum(axis=1) / (h * h)
    return float(np.max(np.abs(lap)))


def check_minimality(params: WeierstrassParams, grid=None, h_step: float = 0.02,
                     levels: int = 3) -> VerificationReport:
    """Conformality of dF and O(h^2) decay of the 5-point Laplacian of F.

    ``grid`` is an array of complex interior points; each must keep its
    ``h_step`` cross inside Omega_a.  Neighbour differences F(z + h e) - F(z)
    are integrated along the short connecting segment, so the Laplacian is
    not swamped by the absolute error of the long vertical quadratures.
    """
    a = params.a
    if grid is None:
        xs = np.linspace(0.5, 1.5, 11)
        xs = np.concatenate([-xs, xs])
        fr = np.linspace(-0.6, 0.6, 7)
        grid = (xs[:, None] + 1j * fr[None, :] * np.asarray(half_width(a, xs))[:, None]).ravel()
    z = np.asarray(grid, dtype=complex).ravel()
    for p in z:
        if not rectangle_inside(a, PlanePoint(p.real - h_step, p.imag - h_step),
                                PlanePoint(p.real + h_step, p.imag + h_step)):
            raise ValueError(f"h-neighbourhood of {p} leaves Omega_a")
    u, v = _uv(a, z.real, z.imag)
    ch, sh = np.cosh(v), np.sinh(v)
    dx = np.stack([sh * np.cos(u), sh * np.sin(u), np.ones_like(u)], axis=-1)
    dy = np.stack([ch * np.sin(u), -ch * np.cos(u), np.zeros_like(u)], axis=-1)
    norm_diff = np.abs(np.sum(dx * dx, axis=1) - np.sum(dy * dy, axis=1))
    inner = np.abs(np.sum(dx * dy, axis=1))
    rep = VerificationReport("minimality", env={"a": a, "n_points": int(z.size), "h_step": h_step,
                                                "levels": levels})
    i = int(np.argmax(norm_diff))
    rep.upper("conformal_norms", "| |F_x|^2 - |F_y|^2 | = 0", norm_diff[i], 1e-12,
              witness=_witness(a, z[i].real, z[i].imag))
    j = int(np.argmax(inner))
    rep.upper("conformal_orthogonality", "|<F_x, F_y>| = 0", inner[j], 1e-12,
              witness=_witness(a, z[j].real, z[j].imag))
    hs = [h_step / 2 ** k for k in range(levels)]
    laps = [_laplacian_norm(params, z, h) for h in hs]
    rep.env["laplacian_residuals"] = laps
    for k in range(levels - 1):
        ratio = laps[k] / laps[k + 1]
        rec = rep.upper(f"laplacian_ratio[h={hs[k]:g}]",
                        "discrete Laplacian of F is O(h^2): residual(h)/residual(h/2) in [3.5, 4.5]",
                        ratio, 4.5)
        rec.passed = bool(3.5 <= ratio <= 4.5)
        rec.margin = float(min(ratio - 3.5, 4.5 - ratio))
    return rep


# ---------------------------------------------------------------------------
# convergence as a -> 0


def _decreasing(seq) -> bool:
    seq = list(seq)
    return all(b < c or (b == 0.0 and c == 0.0) for c, b in zip(seq[:-1], seq[1:]))


def check_convergence(a_seq, compact_rect=(0.3, 1.0, -0.05, 0.05),
                      quad: QuadratureConfig = DEFAULT_QUAD, n_grid: int = 101) -> VerificationReport:
    """Cauchy behaviour of F_{a_i} on a compact rectangle of Omega_0.

    Sup-norm differences of consecutive maps, of their first and of their
    second finite differences (step = rectangle size / (n_grid - 1)).
    """
    x0, x1, y0, y1 = map(float, compact_rect)
    a_seq = [float(a) for a in a_seq]
    c1, c2 = PlanePoint(x0, y0), PlanePoint(x1, y1)
    if x0 <= 0.0 <= x1 and y0 <= 0.0 <= y1:
        raise RectNotInDomain("rectangle contains the origin, which is not in Omega_0")
    if not rectangle_inside(0.0, c1, c2):
        raise RectNotInDomain(f"rectangle {compact_rect} is not inside Omega_0")
    for a in a_seq:
        if not rectangle_inside(a, c1, c2):
            raise RectNotInDomain(f"rectangle {compact_rect} is not inside Omega_a for a={a}")
    X, Y = np.meshgrid(np.linspace(x0, x1, n_grid), np.linspace(y0, y1, n_grid), indexing="ij")
    hx, hy = (x1 - x0) / (n_grid - 1), (y1 - y0) / (n_grid - 1)
    maps = [immerse_points(WeierstrassParams(a), X, Y, quad)[0] for a in a_seq]

    def d1(F):
        return np.concatenate([np.diff(F, axis=0).ravel() / hx, np.diff(F, axis=1).ravel() / hy])

    def d2(F):
        return np.concatenate([np.diff(F, 2, axis=0).ravel() / hx ** 2,
                               np.diff(F, 2, axis=1).ravel() / hy ** 2])

    c0 = [float(np.max(np.abs(A - B))) for A, B in zip(maps[:-1], maps[1:])]
    cx3 = [float(np.max(np.abs(A[..., 2] - B[..., 2]))) for A, B in zip(maps[:-1], maps[1:])]
    c1s = [float(np.max(np.abs(d1(A) - d1(B)))) for A, B in zip(maps[:-1], maps[1:])]
    c2s = [float(np.max(np.abs(d2(A) - d2(B)))) for A, B in zip(maps[:-1], maps[1:])]
    rep = VerificationReport("convergence", env={
        "a_seq": a_seq, "rect": [x0, x1, y0, y1], "n_grid": n_grid, "quad": quad,
        "sup_F": c0, "sup_dF": c1s, "sup_d2F": c2s,
    })
    rep.flag("cauchy_C0", "sup |F_{a_i} - F_{a_(i+1)}| strictly decreasing", _decreasing(c0),
             measured=c0[-1] if c0 else 0.0)
    rep.flag("cauchy_C1", "sup of first-difference gaps strictly decreasing", _decreasing(c1s),
             measured=c1s[-1] if c1s else 0.0)
    # second differences are pre-asymptotic while a > 1/8 (for a = 2^-i, pi/(2a) is a
    # multiple of 2pi only from i = 3 on); only gaps between pairs with a <= 1/8 must decay
    tail = [g for g, a in zip(c2s, a_seq[:-1]) if a <= C2_TAIL_A]
    rep.env["C2_tail_from_a"] = C2_TAIL_A
    rep.flag("cauchy_C2_tail", "sup of second-difference gaps strictly decreasing once a <= 1/8",
             _decreasing(tail), measured=c2s[-1] if c2s else 0.0)
    rep.upper("x3_independent_of_a", "x3(F_a(x, y)) = x for every a", max(cx3, default=0.0), 0.0)
    return rep


def check_spiral(a_list, x_window=(0.01, 1.0), n_axis: int = 40_001) -> VerificationReport:
    """Turns of the axis tangent over a height window grow without bound as a -> 0."""
    x1, x2 = map(float, x_window)
    if not (0.0 <= x1 <= x2):
        raise ValueError("x_window must satisfy 0 <= x1 <= x2")
    a_arr = sorted((float(a) for a in a_list), reverse=True)
    turns, closed, geometric = [], [], []
    for a in a_arr:
        params = WeierstrassParams(a)
        turns.append(sheet_turning(params, x1, x2) / (2.0 * math.pi))
        closed.append((math.atan(x2 / a) - math.atan(x1 / a)) / (2.0 * math.pi * a))
        if math.isfinite(x2):
            xs = np.linspace(x1, x2, n_axis)
            u, v = _uv(a, xs, np.zeros_like(xs))
            tangent_angle = np.unwrap(np.arctan2(-np.cos(u) * np.cosh(v), np.sin(u) * np.cosh(v)))
            geometric.append(float(tangent_angle[-1] - tangent_angle[0]) / (2.0 * math.pi))
    rep = VerificationReport("spiral", env={"a_list": a_arr, "x_window": [x1, x2], "turns": turns,
                                            "closed_form": closed, "geometric": geometric})
    err = max((abs(t - c) for t, c in zip(turns, closed)), default=0.0)
    rep.upper("turns_closed_form", "turns = (arctan(x2/a) - arctan(x1/a))/(2 pi a)", err, 1e-9)
    if geometric:
        gerr = max(abs(g - c) for g, c in zip(geometric, closed))
        rep.upper("turns_from_tangents", "unwrapped rotation of gamma'_{x,a}(0) matches the closed form",
                  gerr, 1e-9)
    inc = all(b > c for c, b in zip(turns[:-1], turns[1:]))
    rep.flag("turns_increase", "turn count strictly increases as a decreases", inc or x1 == x2,
             measured=turns[-1] if turns else 0.0)
    return rep


def check_embeddedness(mesh: TriangleMesh, radius: float | None = None,
                       tol: float = 1e-10) -> VerificationReport:
    """No two non-adjacent triangles of the (optionally clipped) mesh intersect."""
    m = mesh.clipped(radius) if radius is not None else mesh
    hits = find_self_intersections(m.positions, m.triangles, tol=tol)
    wit = None
    if len(hits):
        wit = {"triangle_i": int(hits[0, 0]), "triangle_j": int(hits[0, 1])}
    rep = VerificationReport("embeddedness", env={
        "a": mesh.params.a, "x_max": mesh.x_max, "nx": mesh.nx, "ny": mesh.ny,
        "clip_radius": radius, "n_triangles": int(len(m.triangles)), "tol": tol,
    })
    rep.upper("self_intersections", "non-adjacent triangle pairs that intersect", len(hits), 0, witness=wit)
    return rep


# ---------------------------------------------------------------------------
# slices


def check_slices(a_list=A_GRID, x_grid=X_GRID, n_samples: int = 201,
                 quad: QuadratureConfig = DEFAULT_QUAD) -> VerificationReport:
    """Sector/graph property, tangent identities and both excursion bounds on a slice sweep."""
    rep = VerificationReport("slices", env={
        "a_list": list(a_list), "x_grid": list(x_grid), "n_samples": n_samples, "quad": quad,
        "theta0": THETA0, "sector_cos": SECTOR_COS,
        "notes": [
            "lower-bound constants use cos(theta0/2) ~ 0.2487; the literal cos(theta0) ~ -0.876 "
            "would make the lower bound vacuous",
            "C_x = N_x / cos(theta0/2)",
        ],
    })
    worst = {
        "spread": (-math.inf, None), "angle_id": (0.0, None), "tnorm": (0.0, None), "vmax": (-math.inf, None),
        "inner": (-math.inf, None), "upper": (-math.inf, None), "lower_ratio": (math.inf, None),
        "min_lower": (math.inf, None),
    }
    graphs = True
    for a in a_list:
        params = WeierstrassParams(a)
        for x in x_grid:
            c = slice_curve(params, x, n_samples, quad)
            st = excursion(c)
            w = _witness(a, x, c.y_max)
            ang = tangent_angles(c)
            du = c.u - c.u[c.center]
            aerr = float(np.max(np.abs(ang - du)))
            terr = float(np.max(np.abs(np.linalg.norm(c.tangents, axis=1) - np.cosh(c.v))))
            if aerr > worst["angle_id"][0]:
                worst["angle_id"] = (aerr, w)
            if terr > worst["tnorm"][0]:
                worst["tnorm"] = (terr, w)
            if x != 0:
                vr = float(np.max(np.abs(c.v))) / m_bound(x)
                if vr > worst["vmax"][0]:
                    worst["vmax"] = (vr, w)
                ir = max(st.inner_products) - n_bound(x)
                if ir > worst["inner"][0]:
                    worst["inner"] = (ir, w)
                ur = st.max_radius - c_bound(x)
                if ur > worst["upper"][0]:
                    worst["upper"] = (ur, w)
            if abs(x) > X_A:
                if st.angle_spread > worst["spread"][0]:
                    worst["spread"] = (st.angle_spread, w)
                graphs = graphs and is_graph_over_line(c)
                lr = st.lower / excursion_lower_bound(x)
                if lr < worst["lower_ratio"][0]:
                    worst["lower_ratio"] = (lr, w)
                if st.lower < worst["min_lower"][0]:
                    worst["min_lower"] = (st.lower, w)
    rep.upper("tangent_norm_law", "|gamma'(y)| = cosh v(x, y)", worst["tnorm"][0], 1e-10,
              witness=worst["tnorm"][1])
    rep.upper("tangent_angle_identity", "angle(gamma'(y), gamma'(0)) = u(x, y) - u(x, 0)",
              worst["angle_id"][0], 1e-10, witness=worst["angle_id"][1])
    if worst["spread"][1] is not None:
        rep.upper("sector_angle", "for |x| > x_A the tangents fill a sector of angle <= theta0",
                  worst["spread"][0], THETA0, witness=worst["spread"][1])
        rep.flag("graph_over_line", "for |x| > x_A each slice is a graph over gamma'(0)", graphs)
        rep.lower("excursion_lower_per_slice",
                  "|gamma(+-y_{x,a}) - gamma(0)| >= cos(theta0/2)|x|/4 (min ratio)",
                  worst["lower_ratio"][0], 1.0, witness=worst["lower_ratio"][1])
        rep.lower("excursion_lower_uniform", "min excursion over |x| > x_A >= cos(theta0/2)/(4 pi)",
                  worst["min_lower"][0], R0_FLOOR, witness=worst["min_lower"][1])
    if worst["vmax"][1] is not None:
        rep.upper("v_bound", "max |v_a| on the slice <= 8/(9|x|) (ratio)", worst["vmax"][0], 1.0, tol=1e-12,
                  witness=worst["vmax"][1])
        rep.upper("inner_product_bound", "|<gamma(y_{x,a}) - gamma(0), gamma'(0)>| <= N_x (excess)",
                  worst["inner"][0], 0.0, tol=1e-9, witness=worst["inner"][1])
        rep.upper("excursion_upper", "max |gamma(y) - gamma(0)| <= C_x (excess)", worst["upper"][0], 0.0,
                  tol=1e-9, witness=worst["upper"][1])
    return rep


def check_non_properness(a_list=A_GRID, x: float = 1.0, n_samples: int = 201,
                         quad: QuadratureConfig = DEFAULT_QUAD,
                         log_grid=tuple(2.0 ** -k for k in range(0, 9)),
                         large_grid=tuple(2.0 ** k for k in range(1, 11))) -> VerificationReport:
    """Excursion at a fixed height is bounded uniformly in a; the bound N_x blows up at 0 and infinity."""
    M, N, C = m_bound(x), n_bound(x), c_bound(x)
    rep = VerificationReport("non_properness", env={
        "a_list": list(a_list), "x": x, "M_x": M, "N_x": N, "C_x": C, "n_samples": n_samples, "quad": quad,
    })
    vmax, inner, exc = [], [], []
    for a in a_list:
        c = slice_curve(WeierstrassParams(a), x, n_samples, quad)
        st = excursion(c)
        vmax.append(float(np.max(np.abs(c.v))))
        inner.append(max(st.inner_products))
        exc.append(st.upper)
    rep.env.update({"max_abs_v": vmax, "inner_products": inner, "excursions": exc})
    i = int(np.argmax(vmax))
    rep.upper("v_bound", "max |v_a| on the slice <= M_x = 8/(9|x|)", vmax[i], M, tol=1e-9,
              witness={"a": a_list[i], "x": x})
    i = int(np.argmax(inner))
    rep.upper("inner_product_bound", "|<gamma(y_{x,a}) - gamma(0), gamma'(0)>| <= N_x", inner[i], N, tol=1e-9,
              witness={"a": a_list[i], "x": x})
    i = int(np.argmax(exc))
    rep.upper("excursion_bound", "|gamma(+-y_{x,a}) - gamma(0)| <= C_x uniformly in a", exc[i], C, tol=1e-9,
              witness={"a": a_list[i], "x": x})
    small = [n_bound(t) for t in log_grid]
    big = [n_bound(t) for t in large_grid]
    rep.env.update({"N_small_x": small, "N_large_x": big, "log_grid": list(log_grid),
                    "large_grid": list(large_grid)})
    rep.flag("N_grows_as_x_to_0", "N_x strictly increases as |x| decreases on a log grid",
             all(b > c for c, b in zip(small[:-1], small[1:])), measured=small[-1])
    rep.flag("N_grows_as_x_to_inf", "N_x strictly increases as |x| grows on a log grid",
             all(b > c for c, b in zip(big[:-1], big[1:])), measured=big[-1])
    return rep


def check_R0(x_grid=X_GRID, coarse=A_GRID, fine=tuple(2.0 ** (-1 - k / 2) for k in range(9)),
             n_samples: int = 201, quad: QuadratureConfig = DEFAULT_QUAD) -> VerificationReport:
    """Empirical R0 (min endpoint excursion) on |x| > x_A and its stability under a-refinement."""
    xs = [x for x in x_grid if abs(x) > X_A]
    r_coarse = estimate_R0(coarse, xs, n_samples, quad)
    r_fine = estimate_R0(fine, xs, n_samples, quad)
    rel = abs(r_fine - r_coarse) / r_coarse
    rep = VerificationReport("R0", env={"x_grid": xs, "coarse": list(coarse), "fine": list(fine),
                                        "R0_coarse": r_coarse, "R0_fine": r_fine})
    rep.lower("R0_positive", "estimated R0 >= cos(theta0/2)/(4 pi)", r_coarse, R0_FLOOR)
    rep.upper("R0_stable", "relative change of R0 under a-grid refinement <= 10%", rel, 0.10)
    rep.flag("R0_nonincreasing", "refining the grid cannot raise the minimum",
             r_fine <= r_coarse if set(coarse) <= set(fine) else True)
    return rep


def merge_reports(suite: str, reports, env: dict[str, Any] | None = None) -> VerificationReport:
    """Concatenate several reports, prefixing each check with its source suite."""
    out = VerificationReport(suite, env=dict(env or {}))
    out.env["suites"] = {}
    for r in reports:
        for c in r.checks:
            out.checks.append(CheckRecord(f"{r.suite}.{c.name}", c.claim, c.measured, c.bound,
                                          c.margin, c.passed, c.witness))
        out.env["suites"][r.suite] = r.env
    return out
