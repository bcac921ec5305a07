"""Linking numbers of closed PL curves by signed crossing counting.

Curves are (N, 3) float arrays of vertices; a curve is closed by joining
the last vertex back to the first.  The diagram projection drops the
y-coordinate (the viewer sits at y = +infinity, so larger y means the
strand passes over), optionally sheared by a small multiple of y in both
remaining coordinates.  If the projection is not generic - a crossing too
close to a vertex, near-parallel overlapping segments, or two strands at
nearly equal depth - the projection is perturbed by the next shear from a
fixed table and the count is retried.

The sign convention is calibrated so that a positive full twist of two
parallel strands has linking number +1, matching the Gauss integral with
the right-handed orientation of (x, y, z).
"""

from __future__ import annotations

import numpy as np

PARAM_GUARD = 1e-9          # crossings this close to a vertex are degenerate
PARALLEL_GUARD = 1e-12      # relative determinant floor after shear
DEPTH_GUARD = 1e-9          # strands closer than this in depth are suspect

# deterministic fallback shears (sx, sz); the identity comes first
FALLBACK_SHEARS = (
    (0.0, 0.0),
    (1 / 97, 1 / 89), (-1 / 83, 1 / 101), (1 / 61, -1 / 59),
    (-1 / 53, -1 / 47), (1 / 43, 1 / 41), (-1 / 37, 1 / 31),
    (1 / 29, -1 / 23), (-1 / 19, -1 / 17), (1 / 13, 1 / 11),
    (2 / 97, -1 / 93), (-2 / 91, 1 / 87), (3 / 101, 2 / 99),
    (-3 / 95, -2 / 89), (1 / 7, 1 / 9), (-1 / 9, 1 / 7),
)


class LinkingError(ValueError):
    """No generic projection found, or the curves are not disjoint."""


class _NonGeneric(Exception):
    """Internal: retry with the next shear."""


def _as_closed(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] < 3:
        raise LinkingError("a closed curve needs an (N, 3) array, N >= 3")
    if not np.array_equal(pts[0], pts[-1]):
        pts = np.vstack([pts, pts[:1]])
    return pts


def _cross2(u, v):
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def _signed_crossings(a: np.ndarray, b: np.ndarray, shear) -> int:
    """Sum of crossing signs of the diagram, or raise _NonGeneric."""
    sx, sz = shear
    pa = np.stack([a[:, 0] + sx * a[:, 1], a[:, 2] + sz * a[:, 1]], axis=1)
    pb = np.stack([b[:, 0] + sx * b[:, 1], b[:, 2] + sz * b[:, 1]], axis=1)
    da, db = a[:, 1], b[:, 1]

    P, Q = pa[:-1], pa[1:]
    R, S = pb[:-1], pb[1:]
    dep_a0, dep_a1 = da[:-1], da[1:]
    dep_b0, dep_b1 = db[:-1], db[1:]

    # bounding-box prefilter
    alo = np.minimum(P, Q) - PARAM_GUARD
    ahi = np.maximum(P, Q) + PARAM_GUARD
    blo = np.minimum(R, S) - PARAM_GUARD
    bhi = np.maximum(R, S) + PARAM_GUARD
    overlap = ((alo[:, None, 0] <= bhi[None, :, 0]) & (blo[None, :, 0] <= ahi[:, None, 0]) &
               (alo[:, None, 1] <= bhi[None, :, 1]) & (blo[None, :, 1] <= ahi[:, None, 1]))
    ia, ib = np.nonzero(overlap)
    if ia.size == 0:
        return 0

    d1 = (Q - P)[ia]
    d2 = (S - R)[ib]
    w = R[ib] - P[ia]
    denom = _cross2(d1, d2)
    scale = np.linalg.norm(d1, axis=1) * np.linalg.norm(d2, axis=1)
    parallel = np.abs(denom) <= PARALLEL_GUARD * np.maximum(scale, 1e-300)
    if np.any(parallel):
        # parallel segments in overlapping boxes: degenerate unless their
        # supporting lines are clearly apart
        off = np.abs(_cross2(w[parallel], d1[parallel]))
        span = np.maximum(np.linalg.norm(d1[parallel], axis=1), 1e-300)
        if np.any(off / span <= 10 * PARAM_GUARD):
            raise _NonGeneric
    good = ~parallel
    ia, ib, d1, d2, w, denom = ia[good], ib[good], d1[good], d2[good], w[good], denom[good]
    if ia.size == 0:
        return 0

    t = _cross2(w, d2) / denom
    u = _cross2(w, d1) / denom
    inside = (t > PARAM_GUARD) & (t < 1 - PARAM_GUARD) & \
             (u > PARAM_GUARD) & (u < 1 - PARAM_GUARD)
    grazing = (t > -PARAM_GUARD) & (t < 1 + PARAM_GUARD) & \
              (u > -PARAM_GUARD) & (u < 1 + PARAM_GUARD) & ~inside
    if np.any(grazing):
        raise _NonGeneric
    if not np.any(inside):
        return 0

    t, u = t[inside], u[inside]
    ia, ib, denom = ia[inside], ib[inside], denom[inside]
    depth_a = dep_a0[ia] * (1 - t) + dep_a1[ia] * t
    depth_b = dep_b0[ib] * (1 - u) + dep_b1[ib] * u
    gap = depth_a - depth_b
    if np.any(np.abs(gap) < DEPTH_GUARD):
        raise _NonGeneric
    # over-strand direction crossed with under-strand direction, oriented
    # so that the result matches the Gauss integral (right-handed x, y, z)
    signs = np.where(gap > 0, -np.sign(denom), np.sign(denom))
    total = int(np.sum(signs))
    if total % 2 != 0:
        raise _NonGeneric
    return total


def linking_number(a, b, extra_shear=None) -> int:
    """Half the signed crossing count of a generic diagram of two closed
    disjoint curves.

    `extra_shear` is applied on top of every fallback shear; it lets
    callers probe stability of the answer under a change of projection.
    """
    a = _as_closed(a)
    b = _as_closed(b)
    last_error = None
    for base in FALLBACK_SHEARS:
        shear = base if extra_shear is None else (base[0] + extra_shear[0],
                                                  base[1] + extra_shear[1])
        try:
            total = _signed_crossings(a, b, shear)
        except _NonGeneric:
            last_error = shear
            continue
        return total // 2
    raise LinkingError(
        f"no generic projection after {len(FALLBACK_SHEARS)} shears "
        f"(last tried {last_error}); the curves may touch")


def close_pair(open_a, open_b, pad_a=0.25, pad_b=0.5):
    """Close two open curves around infinity without adding crossings.

    Both curves must start and end on the y = 0 plane with matching z at
    their two ends.  The curve whose endpoints sit higher is closed above
    the diagram (through z = +2...), the other below, with different
    x-overhangs, so the closure arcs can cross neither each other nor the
    open parts.  Returns the two closed (N, 3) arrays.
    """
    a = np.asarray(open_a, dtype=float)
    b = np.asarray(open_b, dtype=float)
    za = 0.5 * (a[0, 2] + a[-1, 2])
    zb = 0.5 * (b[0, 2] + b[-1, 2])
    a_above = za >= zb
    closed_a = _close_curve(a, above=a_above, pad=pad_a)
    closed_b = _close_curve(b, above=not a_above, pad=pad_b)
    return closed_a, closed_b


def _close_curve(points: np.ndarray, above: bool, pad: float) -> np.ndarray:
    start, end = points[0], points[-1]
    for p in (start, end):
        if abs(p[1]) > 1e-9:
            raise LinkingError("curve endpoints must lie in the y = 0 plane")
    level = (2.0 + pad) if above else -(2.0 + pad)
    xr = end[0] + pad
    xl = start[0] - pad
    arc = np.array([
        [xr, 0.0, end[2]],
        [xr, 0.0, level],
        [xl, 0.0, level],
        [xl, 0.0, start[2]],
        start,
    ])
    return np.vstack([points, arc])


def linking_of_open_pair(open_a, open_b, extra_shear=None) -> int:
    closed_a, closed_b = close_pair(open_a, open_b)
    return linking_number(closed_a, closed_b, extra_shear=extra_shear)


# ---------------------------------------------------------------------------
# segment separation, used by the embedding diagnostics

def segment_distance_matrix(a_pts, b_pts) -> np.ndarray:
    """Pairwise distances between the segments of two polylines."""
    a = np.asarray(a_pts, dtype=float)
    b = np.asarray(b_pts, dtype=float)
    P, U = a[:-1], a[1:] - a[:-1]
    R, V = b[:-1], b[1:] - b[:-1]
    na, nb = len(P), len(R)
    if na == 0 or nb == 0:
        return np.full((max(na, 0), max(nb, 0)), np.inf)
    # closest points of segment pairs, clamped Gauss-Seidel style: solve the
    # unconstrained problem, clamp, then re-project each parameter once
    Pb = P[:, None, :]
    Ub = U[:, None, :]
    Rb = R[None, :, :]
    Vb = V[None, :, :]
    W = Pb - Rb
    aa = np.sum(Ub * Ub, axis=2)
    bb = np.sum(Ub * Vb, axis=2)
    cc = np.sum(Vb * Vb, axis=2)
    dd = np.sum(Ub * W, axis=2)
    ee = np.sum(Vb * W, axis=2)
    den = aa * cc - bb * bb
    s = np.where(den > 1e-300, (bb * ee - cc * dd) / np.where(den > 1e-300, den, 1.0), 0.0)
    s = np.clip(s, 0.0, 1.0)
    t = np.where(cc > 1e-300, (bb * s + ee) / np.where(cc > 1e-300, cc, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    s = np.where(aa > 1e-300, (bb * t - dd) / np.where(aa > 1e-300, aa, 1.0), 0.0)
    s = np.clip(s, 0.0, 1.0)
    diff = (Pb + s[..., None] * Ub) - (Rb + t[..., None] * Vb)
    return np.sqrt(np.sum(diff * diff, axis=2))


def min_segment_distance(a_pts, b_pts, skip_adjacent: bool = False) -> float:
    """Minimum distance between the segments of two polylines.

    With `skip_adjacent` (for self-distance of one polyline passed twice)
    pairs of identical or consecutive segments are ignored.
    """
    dist = segment_distance_matrix(a_pts, b_pts)
    if dist.size == 0:
        return float("inf")
    if skip_adjacent:
        na, nb = dist.shape
        idx = np.arange(na)
        jdx = np.arange(nb)
        near = np.abs(idx[:, None] - jdx[None, :]) <= 1
        dist = np.where(near, np.inf, dist)
    return float(np.min(dist))
