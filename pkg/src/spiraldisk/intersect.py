"""Self-intersection test for triangle meshes: uniform spatial hash + exact tri/tri test."""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations

import numpy as np

__all__ = ["candidate_pairs", "triangles_intersect", "find_self_intersections"]


def candidate_pairs(vertices: np.ndarray, triangles: np.ndarray, cell: float | None = None) -> np.ndarray:
    """Pairs (i < j) of triangles whose bounding boxes share a hash cell and no vertex."""
    tri = vertices[triangles]
    lo = tri.min(axis=1)
    hi = tri.max(axis=1)
    if cell is None:
        ext = (hi - lo).max(axis=1)
        cell = float(np.median(ext)) * 2.0 or 1.0
    lo_c = np.floor(lo / cell).astype(np.int64)
    hi_c = np.floor(hi / cell).astype(np.int64)
    buckets: dict[tuple[int, int, int], list[int]] = defaultdict(list)
    for t in range(len(triangles)):
        for i in range(lo_c[t, 0], hi_c[t, 0] + 1):
            for j in range(lo_c[t, 1], hi_c[t, 1] + 1):
                for k in range(lo_c[t, 2], hi_c[t, 2] + 1):
                    buckets[(i, j, k)].append(t)
    pairs = set()
    for members in buckets.values():
        if len(members) > 1:
            pairs.update(combinations(members, 2))
    if not pairs:
        return np.empty((0, 2), dtype=np.int64)
    pairs = np.array(sorted(pairs), dtype=np.int64)
    # drop pairs that share a vertex (adjacent in the mesh)
    ta, tb = triangles[pairs[:, 0]], triangles[pairs[:, 1]]
    shared = (ta[:, :, None] == tb[:, None, :]).any(axis=(1, 2))
    pairs = pairs[~shared]
    # exact AABB overlap
    overlap = np.all((lo[pairs[:, 0]] <= hi[pairs[:, 1]]) & (lo[pairs[:, 1]] <= hi[pairs[:, 0]]), axis=1)
    return pairs[overlap]


def _edges_hit(p, q, a, b, c, tol):
    """Vectorised segment [p, q] versus triangle (a, b, c); non-parallel cases only."""
    d = q - p
    e1 = b - a
    e2 = c - a
    h = np.cross(d, e2)
    det = np.einsum("ij,ij->i", e1, h)
    scale = np.linalg.norm(d, axis=1) * np.linalg.norm(e1, axis=1) * np.linalg.norm(e2, axis=1)
    ok = np.abs(det) > 1e-12 * np.maximum(scale, 1e-300)
    inv = np.where(ok, 1.0 / np.where(ok, det, 1.0), 0.0)
    s = p - a
    bu = inv * np.einsum("ij,ij->i", s, h)
    qv = np.cross(s, e1)
    bv = inv * np.einsum("ij,ij->i", d, qv)
    t = inv * np.einsum("ij,ij->i", e2, qv)
    hit = ok & (bu >= -tol) & (bv >= -tol) & (bu + bv <= 1.0 + tol) & (t >= -tol) & (t <= 1.0 + tol)
    return hit, ~ok


def _coplanar_overlap(t1: np.ndarray, t2: np.ndarray, tol: float) -> bool:
    n = np.cross(t1[1] - t1[0], t1[2] - t1[0])
    nn = np.linalg.norm(n)
    if nn == 0:
        return False
    if np.max(np.abs((t2 - t1[0]) @ (n / nn))) > tol:
        return False
    drop = int(np.argmax(np.abs(n)))
    keep = [i for i in range(3) if i != drop]
    A, B = t1[:, keep], t2[:, keep]

    def axes(T):
        e = np.roll(T, -1, axis=0) - T
        return np.stack([-e[:, 1], e[:, 0]], axis=1)

    for ax in np.concatenate([axes(A), axes(B)]):
        pa, pb = A @ ax, B @ ax
        if pa.max() < pb.min() - tol or pb.max() < pa.min() - tol:
            return False
    return True


def triangles_intersect(t1: np.ndarray, t2: np.ndarray, tol: float = 1e-10) -> bool:
    """Exact (up to ``tol``) intersection test for two triangles given as (3, 3) arrays."""
    return bool(_intersect_batch(t1[None], t2[None], tol)[0])


def _intersect_batch(T1: np.ndarray, T2: np.ndarray, tol: float) -> np.ndarray:
    hit = np.zeros(len(T1), dtype=bool)
    parallel_any = np.zeros(len(T1), dtype=bool)
    for src, dst in ((T1, T2), (T2, T1)):
        for i in range(3):
            p, q = src[:, i], src[:, (i + 1) % 3]
            h, par = _edges_hit(p, q, dst[:, 0], dst[:, 1], dst[:, 2], tol)
            hit |= h
            parallel_any |= par
    for k in np.flatnonzero(parallel_any & ~hit):
        hit[k] = _coplanar_overlap(T1[k], T2[k], tol)
    return hit


def find_self_intersections(vertices: np.ndarray, triangles: np.ndarray, tol: float = 1e-10,
                            chunk: int = 200_000) -> np.ndarray:
    """Return the (i, j) index pairs of non-adjacent triangles that intersect."""
    vertices = np.asarray(vertices, dtype=float)
    triangles = np.asarray(triangles, dtype=np.int64)
    pairs = candidate_pairs(vertices, triangles)
    hits = []
    for s in range(0, len(pairs), chunk):
        blk = pairs[s:s + chunk]
        mask = _intersect_batch(vertices[triangles[blk[:, 0]]], vertices[triangles[blk[:, 1]]], tol)
        hits.append(blk[mask])
    return np.concatenate(hits) if hits else np.empty((0, 2), dtype=np.int64)
