"""Acceptance criteria, one test each, at the stated tolerances.

Each test records a PASS/FAIL line; the lines are repeated in the terminal
summary under "acceptance criteria".
"""

from __future__ import annotations

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from spiraldisk.domain import X_A, half_width, rectangle_inside
from spiraldisk.immersion import build_mesh, dxF, dyF, immerse_via_path
from spiraldisk.slices import R0_FLOOR, estimate_R0, excursion, slice_curve
from spiraldisk.verification import (
    A_GRID,
    X_GRID,
    check_blowup,
    check_convergence,
    check_easybounds,
    check_embeddedness,
    check_minimality,
    check_non_properness,
    check_R0,
    check_slices,
    check_spiral,
    sample_domain,
)
from spiraldisk.weierstrass import PlanePoint, WeierstrassParams, eval_h, partials_uv

SEED = 20240611


def test_c01_blowup(criterion):
    t0 = time.perf_counter()
    rep = check_blowup(A_GRID)
    dt = time.perf_counter() - t0
    rel = rep["curvature_at_origin"].measured
    slope = rep["loglog_slope"].witness["slope"]
    ok = rel <= 1e-10 and abs(slope + 4) <= 1e-6 and dt < 1.0
    criterion(1, ok, f"max rel err {rel:.1e}, slope {slope:.12f}, {dt:.3f} s")
    assert ok


def test_c02_easybounds(criterion):
    t0 = time.perf_counter()
    reps = [check_easybounds(WeierstrassParams(a), 100_000, seed=SEED) for a in A_GRID]
    dt = time.perf_counter() - t0
    ok = all(r.passed for r in reps) and dt < 10.0
    worst_du = max(r["du_dy_bound"].measured for r in reps)
    worst_dv = min(r["dv_dy_bound"].measured for r in reps)
    signs = sum(r["v_sign"].measured for r in reps)
    criterion(2, ok, f"5 x 1e5 points, du ratio max {worst_du:.4f}, dv ratio min {worst_dv:.4f}, "
                     f"sign violations {signs:.0f}, {dt:.2f} s")
    assert ok


def test_c03_derivative_cross_check(criterion):
    step = 1e-6
    rng = np.random.default_rng(SEED)
    worst = 0.0
    n_total = 0
    for a in A_GRID:
        params = WeierstrassParams(a)
        x, y, _ = sample_domain(a, 2000, rng)
        z = x + 1j * y
        du_dy, dv_dy, du_dx, dv_dx = partials_uv(params, z)
        up, vp = eval_h(params, z + 1j * step, check=False)
        um, vm = eval_h(params, z - 1j * step, check=False)
        fd_u, fd_v = (up - um) / (2 * step), (vp - vm) / (2 * step)
        worst = max(worst, np.max(np.abs(du_dy - fd_u)), np.max(np.abs(dv_dy - fd_v)))
        n_total += z.size
    ok = worst <= 1e-6 and n_total == 10_000
    criterion(3, ok, f"{n_total} points, max |closed form - central difference| = {worst:.2e}")
    assert ok


def test_c04_conformal_harmonic(criterion):
    rng = np.random.default_rng(SEED)
    worst_conf = 0.0
    ratios = []
    for a in A_GRID:
        x, y, _ = sample_domain(a, 2000, rng)
        z = x + 1j * y
        fx, fy = dxF(WeierstrassParams(a), z), dyF(WeierstrassParams(a), z)
        worst_conf = max(worst_conf, np.max(np.abs(np.sum(fx * fx, 1) - np.sum(fy * fy, 1))),
                         np.max(np.abs(np.sum(fx * fy, 1))))
        rep = check_minimality(WeierstrassParams(a))
        worst_conf = max(worst_conf, rep["conformal_norms"].measured, rep["conformal_orthogonality"].measured)
        ratios += [c.measured for c in rep.checks if c.name.startswith("laplacian_ratio")]
    ok = worst_conf <= 1e-12 and all(3.5 <= r <= 4.5 for r in ratios)
    criterion(4, ok, f"conformality residual {worst_conf:.1e}, Laplacian ratios "
                     f"[{min(ratios):.4f}, {max(ratios):.4f}]")
    assert ok


def _random_rectangles(n, rng):
    out = []
    while len(out) < n:
        a = float(rng.choice(A_GRID))
        x1, x2 = rng.uniform(-2, 2, 2)
        hw = half_width(a, min(abs(x1), abs(x2)) if x1 * x2 > 0 else 0.0)
        y1, y2 = rng.uniform(-hw, hw, 2)
        if abs(x1 - x2) < 1e-3 or abs(y1 - y2) < 1e-6:
            continue
        if rectangle_inside(a, PlanePoint(x1, y1), PlanePoint(x2, y2)):
            out.append((a, complex(x1, y1), complex(x2, y2)))
    return out


def test_c05_path_independence(criterion):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    rects = _random_rectangles(1000, rng)
    for a, z1, z2 in rects:
        p = WeierstrassParams(a)
        route_a = immerse_via_path(p, [z1, complex(z2.real, z1.imag), z2])
        route_b = immerse_via_path(p, [z1, complex(z1.real, z2.imag), z2])
        worst = max(worst, float(np.max(np.abs(route_a - route_b))))
    ok = worst <= 1e-8 and len(rects) == 1000
    criterion(5, ok, f"{len(rects)} rectangles, max route difference {worst:.2e}")
    assert ok


def test_c06_sector_graph(criterion):
    rep = check_slices(A_GRID, X_GRID)
    spread = rep["sector_angle"].measured
    graphs = rep["graph_over_line"].passed
    # direct sweep, independent of the report aggregation
    direct = True
    for a in A_GRID:
        for x in X_GRID:
            assert abs(x) > X_A
            for sx in (x, -x):
                c = slice_curve(WeierstrassParams(a), sx)
                direct &= excursion(c).angle_spread <= rep["sector_angle"].bound
    ok = rep["sector_angle"].passed and graphs and direct
    criterion(6, ok, f"max spread {spread:.4f} <= theta0 {rep['sector_angle'].bound:.4f}, "
                     f"all slices graphs: {graphs}")
    assert ok


def test_c07_embedded_cylinder(criterion):
    rep = check_slices(A_GRID, X_GRID)
    min_exc = rep["excursion_lower_uniform"].measured
    r0 = estimate_R0(A_GRID, X_GRID)
    stab = check_R0(X_GRID)
    ok = min_exc >= 0.0197 and R0_FLOOR >= 0.0197 and r0 > 0 and stab.passed
    criterion(7, ok, f"min excursion {min_exc:.5f} >= 0.0197, R0 {r0:.5f}, "
                     f"refinement change {stab['R0_stable'].measured:.1e}")
    assert ok


def test_c08_non_properness(criterion):
    rep = check_non_properness(A_GRID, x=1.0)
    ok = rep.passed
    criterion(8, ok, f"max|v| {rep['v_bound'].measured:.5f} <= 8/9, inner {rep['inner_product_bound'].measured:.5f}"
                     f" <= N1 {rep['inner_product_bound'].bound:.5f}, excursion "
                     f"{rep['excursion_bound'].measured:.5f} <= C1 {rep['excursion_bound'].bound:.5f}, "
                     f"N_x monotone on log grids: {rep['N_grows_as_x_to_0'].passed and rep['N_grows_as_x_to_inf'].passed}")
    assert ok


def test_c09_convergence(criterion):
    rep = check_convergence([2.0 ** -i for i in range(1, 7)], (0.3, 1.0, -0.05, 0.05))
    gaps = rep.env["sup_F"]
    ok = rep["cauchy_C0"].passed and rep["x3_independent_of_a"].measured == 0.0
    criterion(9, ok, "C0 gaps " + ", ".join(f"{g:.3e}" for g in gaps)
              + f"; x3 gap {rep['x3_independent_of_a'].measured:g}")
    assert ok


def test_c10_spiral(criterion):
    rep = check_spiral(A_GRID, (0.01, 1.0))
    closed = [(math.atan(1 / a) - math.atan(0.01 / a)) / (2 * math.pi * a) for a in A_GRID]
    err = max(abs(t - c) for t, c in zip(rep.env["turns"], closed))
    ok = rep.passed and err <= 1e-9
    criterion(10, ok, "turns " + ", ".join(f"{t:.4f}" for t in rep.env["turns"])
              + f"; closed-form err {err:.1e}, tangent err {rep['turns_from_tangents'].measured:.1e}")
    assert ok


def _run_cli(args, cwd):
    proc = subprocess.run([sys.executable, "-m", "spiraldisk", *args], cwd=cwd, capture_output=True)
    assert proc.returncode == 0, proc.stderr
    return proc


def test_c11_mesh_integrity(criterion, tmp_path):
    mesh = build_mesh(WeierstrassParams(0.5), x_max=1.0, nx=41, ny=21)
    r0 = estimate_R0(A_GRID, X_GRID)
    rep = check_embeddedness(mesh, radius=r0)
    hits = rep["self_intersections"].measured
    stable = True
    for k in (1, 2):
        d = tmp_path / f"run{k}"
        d.mkdir()
        _run_cli(["mesh", "--a", "0.5", "--xmax", "1", "--nx", "41", "--ny", "21", "-o", "m.obj"], d)
        _run_cli(["slice", "--a", "0.5", "--x", "1", "-o", "s.csv"], d)
        _run_cli(["blowup", "-o", "r.json"], d)
    for name in ("m.obj", "s.csv", "r.json"):
        stable &= (tmp_path / "run1" / name).read_bytes() == (tmp_path / "run2" / name).read_bytes()
    ok = hits == 0 and stable
    criterion(11, ok, f"{rep.env['n_triangles']} clipped triangles, {hits:.0f} hits; "
                      f"OBJ/CSV/JSON byte-stable: {stable}")
    assert ok
