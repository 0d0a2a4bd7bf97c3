"""Deterministic text emitters: OBJ meshes, slice CSV tables, JSON reports."""

from __future__ import annotations

import json
import math
import os
from typing import Any

from .immersion import TriangleMesh
from .slices import SliceCurve
from .verification import VerificationReport

__all__ = ["write_obj", "obj_text", "write_slice_csv", "slice_csv_text",
           "report_json", "write_report_json", "read_report_json"]

CSV_COLUMNS = ("y", "p1", "p2", "t1", "t2", "u", "v")


def _f6(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _num(v: float) -> str:
    return repr(float(v) + 0.0)  # + 0.0 folds -0.0 into 0.0


def obj_text(mesh: TriangleMesh) -> str:
    lines = [f"# spiraldisk a={mesh.params.a!r} x_max={mesh.x_max!r} nx={mesh.nx} ny={mesh.ny}"]
    lines += [f"v {_f6(p[0])} {_f6(p[1])} {_f6(p[2])}" for p in mesh.positions]
    lines += [f"vn {_f6(n[0])} {_f6(n[1])} {_f6(n[2])}" for n in mesh.normals]
    lines += [f"f {i + 1}//{i + 1} {j + 1}//{j + 1} {k + 1}//{k + 1}" for i, j, k in mesh.triangles]
    return "\n".join(lines) + "\n"


def write_obj(mesh: TriangleMesh, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(obj_text(mesh))


def slice_csv_text(curve: SliceCurve) -> str:
    rows = [",".join(CSV_COLUMNS)]
    for k in range(len(curve.y)):
        vals = (curve.y[k], curve.points[k, 0], curve.points[k, 1],
                curve.tangents[k, 0], curve.tangents[k, 1], curve.u[k], curve.v[k])
        rows.append(",".join(_num(v) for v in vals))
    return "\n".join(rows) + "\n"


def write_slice_csv(curve: SliceCurve, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(slice_csv_text(curve))


def _finite(obj):
    # JSON has no inf/nan; spell them as strings
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_finite(v) for v in obj]
    return obj


def report_json(report: VerificationReport | dict[str, Any]) -> str:
    data = report.to_dict() if isinstance(report, VerificationReport) else report
    return json.dumps(_finite(data), indent=2, allow_nan=False) + "\n"


def write_report_json(report: VerificationReport | dict[str, Any], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(report_json(report))


def read_report_json(path: str | os.PathLike) -> dict[str, Any]:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
