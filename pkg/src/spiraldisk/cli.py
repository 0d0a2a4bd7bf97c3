"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage or
configuration error (argparse's own convention for bad flags).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import export
from .immersion import QuadratureConfig, build_mesh
from .slices import estimate_R0, excursion, is_graph_over_line, slice_curve
from .verification import (
    A_GRID,
    SEED_ENV,
    X_GRID,
    VerificationReport,
    check_away_from_origin,
    check_blowup,
    check_convergence,
    check_easybounds,
    check_embeddedness,
    check_minimality,
    check_non_properness,
    check_R0,
    check_slices,
    check_spiral,
    default_seed,
    merge_reports,
)
from .weierstrass import WeierstrassParams


def _a_value(text: str) -> float:
    try:
        a = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 < a <= 0.5:
        raise argparse.ArgumentTypeError(f"a must lie in (0, 1/2], got {a}")
    return a


def _a_list(text: str) -> list[float]:
    return [_a_value(t) for t in text.split(",") if t.strip()]


def _floats(n: int | None = None):
    def parse(text: str) -> list[float]:
        try:
            vals = [float(t) for t in text.split(",") if t.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
        if n is not None and len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {len(vals)}")
        return vals
    return parse


def _positive(kind=float, minimum=None):
    def parse(text: str):
        try:
            val = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid {kind.__name__}: {text!r}")
        lo = minimum if minimum is not None else 0
        if val <= 0 or val < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo} and positive, got {val}")
        return val
    return parse


def _odd_samples(text: str) -> int:
    n = _positive(int, 3)(text)
    if n % 2 == 0:
        raise argparse.ArgumentTypeError(f"must be odd so that y = 0 is sampled, got {n}")
    return n


def _add_quad(p: argparse.ArgumentParser) -> None:
    p.add_argument("--abs-tol", type=_positive(), default=1e-10, help="quadrature absolute tolerance")
    p.add_argument("--rel-tol", type=_positive(), default=1e-10, help="quadrature relative tolerance")
    p.add_argument("--max-subdivisions", type=_positive(int, 1), default=60)


def _quad(args) -> QuadratureConfig:
    return QuadratureConfig(args.abs_tol, args.rel_tol, args.max_subdivisions)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spiraldisk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mesh", help="triangulate Sigma_a and write an OBJ file")
    p.add_argument("--a", type=_a_value, required=True)
    p.add_argument("--xmax", type=_positive(), default=2.0)
    p.add_argument("--nx", type=_positive(int, 2), default=201)
    p.add_argument("--ny", type=_positive(int, 2), default=41)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--check", action="store_true",
                   help="run the self-intersection check on the mesh clipped to the R0 cylinder")
    p.add_argument("--report", help="where to write the embeddedness report (default: stdout)")
    _add_quad(p)

    p = sub.add_parser("slice", help="sample one slice curve and write a CSV table")
    p.add_argument("--a", type=_a_value, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--samples", type=_odd_samples, default=201)
    p.add_argument("-o", "--output", required=True)
    _add_quad(p)

    p = sub.add_parser("verify", help="pointwise bounds, minimality and slice bounds for given a")
    p.add_argument("--a", type=_a_list, default=list(A_GRID), help="one value or a comma-separated list")
    p.add_argument("--samples", type=_positive(int, 1), default=100_000)
    p.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or a fixed constant")
    p.add_argument("--delta", type=_positive(), default=0.5)
    p.add_argument("-o", "--output")

    p = sub.add_parser("blowup", help="curvature at the origin against a^-4")
    p.add_argument("--a-list", type=_a_list, default=list(A_GRID))
    p.add_argument("-o", "--output")

    p = sub.add_parser("converge", help="Cauchy behaviour of F_a on a rectangle as a -> 0")
    p.add_argument("--a-list", type=_a_list, default=[2.0 ** -i for i in range(1, 7)])
    p.add_argument("--rect", type=_floats(4), default=[0.3, 1.0, -0.05, 0.05], help="x0,x1,y0,y1")
    p.add_argument("-o", "--output")
    _add_quad(p)

    p = sub.add_parser("spiral", help="turns of the axis tangent over a height window")
    p.add_argument("--a-list", type=_a_list, default=list(A_GRID))
    p.add_argument("--window", type=_floats(2), default=[0.01, 1.0], help="x1,x2")
    p.add_argument("-o", "--output")

    p = sub.add_parser("r0", help="empirical radius of the embedded cylinder")
    p.add_argument("--a-list", type=_a_list, default=list(A_GRID))
    p.add_argument("--x-grid", type=_floats(), default=list(X_GRID))
    p.add_argument("--samples", type=_odd_samples, default=201)
    p.add_argument("-o", "--output")
    return parser


def _emit(report: VerificationReport, output: str | None) -> int:
    if output:
        export.write_report_json(report, output)
    else:
        sys.stdout.write(export.report_json(report))
    for c in report.checks:
        print(f"[{'PASS' if c.passed else 'FAIL'}] {report.suite}.{c.name}: measured={c.measured:.6g} "
              f"bound={c.bound:.6g}", file=sys.stderr)
    return 0 if report.passed else 1


def _run(args) -> int:
    cmd = args.command
    if cmd == "mesh":
        params = WeierstrassParams(args.a)
        mesh = build_mesh(params, args.xmax, args.nx, args.ny, _quad(args))
        export.write_obj(mesh, args.output)
        print(f"wrote {args.output}: {len(mesh)} vertices, {len(mesh.triangles)} triangles", file=sys.stderr)
        if args.check:
            r0 = estimate_R0(A_GRID, X_GRID, quad=_quad(args))
            rep = check_embeddedness(mesh, radius=r0)
            rep.env["R0"] = r0
            return _emit(rep, args.report)
        return 0
    if cmd == "slice":
        params = WeierstrassParams(args.a)
        curve = slice_curve(params, args.x, args.samples, _quad(args))
        export.write_slice_csv(curve, args.output)
        st = excursion(curve)
        summary = {"x": args.x, "a": args.a, "y_max": curve.y_max, "lower": st.lower, "upper": st.upper,
                   "inner_products": list(st.inner_products), "angle_spread": st.angle_spread,
                   "graph_over_line": is_graph_over_line(curve)}
        print(json.dumps(summary, indent=2))
        return 0
    if cmd == "verify":
        seed = default_seed() if args.seed is None else args.seed
        reports = [check_easybounds(WeierstrassParams(a), args.samples, seed) for a in args.a]
        for a, r in zip(args.a, reports):
            r.suite = f"easybounds[a={a:g}]"
        reports.append(check_away_from_origin(args.delta, args.a, seed=seed))
        for a in args.a:
            r = check_minimality(WeierstrassParams(a))
            r.suite = f"minimality[a={a:g}]"
            reports.append(r)
        reports.append(check_slices(args.a))
        reports.append(check_non_properness(args.a))
        rep = merge_reports("verify", reports, env={"a": args.a, "samples": args.samples, "seed": seed})
        return _emit(rep, args.output)
    if cmd == "blowup":
        return _emit(check_blowup(sorted(args.a_list, reverse=True)), args.output)
    if cmd == "converge":
        return _emit(check_convergence(sorted(args.a_list, reverse=True), tuple(args.rect), _quad(args)),
                     args.output)
    if cmd == "spiral":
        x1, x2 = args.window
        if not 0.0 <= x1 <= x2:
            raise _UsageError("--window", "need 0 <= x1 <= x2")
        return _emit(check_spiral(args.a_list, (x1, x2)), args.output)
    if cmd == "r0":
        r0 = estimate_R0(args.a_list, args.x_grid, args.samples)
        rep = check_R0(args.x_grid, coarse=sorted(args.a_list, reverse=True), n_samples=args.samples)
        rep.env["R0_requested_grid"] = r0
        return _emit(rep, args.output)
    raise AssertionError(cmd)


class _UsageError(Exception):
    def __init__(self, flag: str, message: str):
        self.flag = flag
        super().__init__(f"{flag}: {message}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors itself
        return int(exc.code or 0)
    try:
        return _run(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"spiraldisk: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"spiraldisk: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
