"""PL tube models of fat long knots and fat string 2-links.

A fat knot is a self-embedding of R x D^2 supported in J x D^2; we store
it as a pair of polylines, the image of the axis (core) and the image of
the line through the disc point (0, 1) (pushoff), on a shared parameter
grid over [-1, 1].  Everything else - the tube radius, the rotation of
the disc fibers - is derived from that pair: the disc direction (0, 1)
follows normalize(pushoff - core), the radius is |pushoff - core|, and
the remaining frame vector completes a right-handed frame with the
interpolated core tangent.  Outside [-1, 1] the embedding is the
identity.

A fat string 2-link is a pair of such tubes whose rest position is the
standard two-strand embedding: cores at z = +-1/2, tube radius 1/8.

Cube configurations act on these models.  Interval configurations
conjugate and concatenate links, planar configurations compose knots in
the order dictated by their floor heights, and colored configurations
mix both through the three-stage composite (parallel-strand knots after
the link stage after per-strand knots).  Compositions are evaluated
lazily - a composite is a chain of maps evaluated point by point - and
turned back into tube data by deterministic adaptive sampling, so two
mathematically equal composites agree to float precision when evaluated
and to the chord tolerance when materialized.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .cubes import (AffineInc, Color, CubeConfig, Mode, SclElement,
                    canonical_ordering, color_sort, projection_pi,
                    restrict_config, scl_validate)
from .linking import (LinkingError, linking_number, linking_of_open_pair,
                      min_segment_distance, segment_distance_matrix)

CHORD_TOL = 1e-4        # materialization: max deviation polyline vs chain
COORD_TOL = 1e-9        # boundary-condition tolerance on stored data
MAX_REFINE_DEPTH = 14
BASE_SAMPLES = 33

UP, DOWN = "up", "down"
STRANDS = (UP, DOWN)

_STRAND_CENTER = {UP: 0.5, DOWN: -0.5}
_STRAND_RADIUS = 0.125


class TubeError(ValueError):
    """Raised when tube data violates a structural invariant."""


class FrameDegenerateError(TubeError):
    """Raised when the tube frame cannot be built (tangent along the
    pushoff direction, or a cusp in the core)."""


# ---------------------------------------------------------------------------
# polylines

class Polyline3:
    """A parametrized PL curve over [-1, 1].

    `params` is strictly increasing with endpoints exactly -1 and 1;
    consecutive vertices are distinct.
    """

    __slots__ = ("params", "points")

    def __init__(self, params, points):
        params = np.asarray(params, dtype=float).copy()
        points = np.asarray(points, dtype=float).copy()
        if params.ndim != 1 or points.shape != (params.size, 3):
            raise TubeError("polyline needs matching (m,) params and (m, 3) points")
        if params.size < 2:
            raise TubeError("polyline needs at least two vertices")
        if params[0] != -1.0 or params[-1] != 1.0:
            raise TubeError("parameters must start at -1 and end at 1")
        if np.any(np.diff(params) <= 0):
            raise TubeError("parameters must be strictly increasing")
        if not np.all(np.isfinite(points)):
            raise TubeError("vertex coordinates must be finite")
        if np.any(np.all(np.diff(points, axis=0) == 0.0, axis=1)):
            raise TubeError("consecutive vertices must be distinct")
        params.setflags(write=False)
        points.setflags(write=False)
        self.params = params
        self.points = points

    def __len__(self):
        return self.params.size

    def __eq__(self, other):
        return (isinstance(other, Polyline3)
                and np.array_equal(self.params, other.params)
                and np.array_equal(self.points, other.points))

    def interpolate(self, t: float) -> np.ndarray:
        ts = self.params
        if t <= ts[0]:
            return self.points[0].copy()
        if t >= ts[-1]:
            return self.points[-1].copy()
        i = int(np.searchsorted(ts, t, side="right")) - 1
        w = (t - ts[i]) / (ts[i + 1] - ts[i])
        return (1 - w) * self.points[i] + w * self.points[i + 1]

    def reversed(self) -> "Polyline3":
        return Polyline3(-self.params[::-1], self.points[::-1])

    def as_rows(self) -> list[list[float]]:
        return [[float(t)] + [float(c) for c in p]
                for t, p in zip(self.params, self.points)]

    @staticmethod
    def from_rows(rows) -> "Polyline3":
        arr = np.asarray(rows, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 4:
            raise TubeError("rows must be [t, x, y, z] quadruples")
        return Polyline3(arr[:, 0], arr[:, 1:])


# ---------------------------------------------------------------------------
# tubes

def _vertex_tangents(points: np.ndarray) -> np.ndarray:
    diffs = np.diff(points, axis=0)
    lens = np.linalg.norm(diffs, axis=1)
    if np.any(lens == 0):
        raise TubeError("zero-length segment")
    dirs = diffs / lens[:, None]
    tangents = np.empty_like(points)
    tangents[1:-1] = dirs[:-1] + dirs[1:]
    # boundary sections continue the straight rest position
    tangents[0] = (1.0, 0.0, 0.0)
    tangents[-1] = (1.0, 0.0, 0.0)
    norms = np.linalg.norm(tangents, axis=1)
    if np.any(norms < 1e-9):
        raise FrameDegenerateError("cusp in the core polyline")
    return tangents / norms[:, None]


class Tube:
    """Core and pushoff on a shared grid, plus the rest configuration.

    The rest configuration is the affine disc embedding the tube matches
    at (and beyond) the ends: disc center (0, center_y, center_z) and
    radius `radius` around the axis point (t, center_y, center_z).
    """

    __slots__ = ("core", "pushoff", "center", "radius", "_tangents")

    def __init__(self, core: Polyline3, pushoff: Polyline3,
                 center=(0.0, 0.0), radius: float = 1.0):
        if not np.array_equal(core.params, pushoff.params):
            raise TubeError("core and pushoff must share their parameter grid")
        self.core = core
        self.pushoff = pushoff
        self.center = (float(center[0]), float(center[1]))
        self.radius = float(radius)
        self._validate()
        self._tangents = _vertex_tangents(core.points)

    def _validate(self):
        cy, cz = self.center
        r = self.radius
        for pline, zoff in ((self.core, 0.0), (self.pushoff, r)):
            for idx, tval in ((0, -1.0), (-1, 1.0)):
                want = np.array([tval, cy, cz + zoff])
                if np.max(np.abs(pline.points[idx] - want)) > COORD_TOL:
                    raise TubeError(
                        f"endpoint row at t={tval} must be {want.tolist()}, "
                        f"got {pline.points[idx].tolist()}")
        interior = (np.abs(self.core.params) < 1.0)
        core_pts = self.core.points[interior]
        if core_pts.size:
            # the core is the image of the interior axis, so it stays in the
            # open cylinder; the pushoff images a boundary line of the domain
            # tube and may ride the closed boundary (e.g. after conjugating)
            if np.any(np.abs(core_pts[:, 0]) >= 1.0):
                raise TubeError("interior core vertex outside the open cylinder (axis)")
            if np.any(core_pts[:, 1] ** 2 + core_pts[:, 2] ** 2 >= 1.0):
                raise TubeError("interior core vertex outside the open cylinder (disc)")
        push_pts = self.pushoff.points[interior]
        if push_pts.size:
            if np.any(np.abs(push_pts[:, 0]) > 1.0 + COORD_TOL):
                raise TubeError("pushoff vertex outside the cylinder (axis)")
            if np.any(push_pts[:, 1] ** 2 + push_pts[:, 2] ** 2 > 1.0 + COORD_TOL):
                raise TubeError("pushoff vertex outside the cylinder (disc)")
        sep = np.linalg.norm(self.pushoff.points - self.core.points, axis=1)
        if np.any(sep <= 1e-12):
            raise TubeError("pushoff touches the core")

    @property
    def params(self) -> np.ndarray:
        return self.core.params

    def rest_point(self, t: float, xy: float, xz: float) -> np.ndarray:
        cy, cz = self.center
        r = self.radius
        return np.array([t, cy + r * xy, cz + r * xz])

    def map_domain(self, t: float, xy: float, xz: float) -> np.ndarray:
        """The embedding at disc point (xy, xz) over parameter t."""
        return self.map_many(np.array([t]), np.array([xy]), np.array([xz]))[0]

    def map_many(self, T: np.ndarray, XY: np.ndarray, XZ: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at parameters T and disc points (XY, XZ)."""
        T = np.asarray(T, dtype=float)
        XY = np.asarray(XY, dtype=float)
        XZ = np.asarray(XZ, dtype=float)
        out = np.empty((T.size, 3))
        cy, cz = self.center
        r = self.radius
        inside = (T > -1.0) & (T < 1.0)
        if not np.all(inside):
            sel = ~inside
            out[sel, 0] = T[sel]
            out[sel, 1] = cy + r * XY[sel]
            out[sel, 2] = cz + r * XZ[sel]
        if np.any(inside):
            t = T[inside]
            ts = self.params
            i = np.clip(np.searchsorted(ts, t, side="right") - 1, 0, ts.size - 2)
            w = ((t - ts[i]) / (ts[i + 1] - ts[i]))[:, None]
            c = (1 - w) * self.core.points[i] + w * self.core.points[i + 1]
            p = (1 - w) * self.pushoff.points[i] + w * self.pushoff.points[i + 1]
            u = p - c
            rho = np.sqrt(np.sum(u * u, axis=1))
            if np.any(rho < 1e-12):
                raise FrameDegenerateError("tube radius vanishes")
            nz = u / rho[:, None]
            tangent = (1 - w) * self._tangents[i] + w * self._tangents[i + 1]
            ny = np.cross(nz, tangent)
            nlen = np.sqrt(np.sum(ny * ny, axis=1))
            if np.any(nlen < 1e-9):
                raise FrameDegenerateError("tangent parallel to the pushoff")
            ny /= nlen[:, None]
            out[inside] = c + rho[:, None] * (XY[inside, None] * ny +
                                              XZ[inside, None] * nz)
        return out

    def sample_min_radius(self) -> float:
        return float(np.min(np.linalg.norm(
            self.pushoff.points - self.core.points, axis=1)))

    def sample_max_radius(self) -> float:
        return float(np.max(np.linalg.norm(
            self.pushoff.points - self.core.points, axis=1)))


# ---------------------------------------------------------------------------
# fat knots

class FatKnot:
    """A framed long knot as tube data; the identity map outside J."""

    __slots__ = ("tube",)

    kind = "knot"

    def __init__(self, core: Polyline3, pushoff: Polyline3):
        self.tube = Tube(core, pushoff, center=(0.0, 0.0), radius=1.0)

    @property
    def core(self) -> Polyline3:
        return self.tube.core

    @property
    def pushoff(self) -> Polyline3:
        return self.tube.pushoff

    @property
    def params(self) -> np.ndarray:
        return self.tube.params

    def point(self, p: np.ndarray) -> np.ndarray:
        """Evaluate as a self-map of R x D^2 at the ambient point p."""
        return self.tube.map_domain(float(p[0]), float(p[1]), float(p[2]))

    def points(self, P: np.ndarray) -> np.ndarray:
        P = np.asarray(P, dtype=float)
        return self.tube.map_many(P[:, 0], P[:, 1], P[:, 2])

    def seed_params(self) -> np.ndarray:
        return self.params

    def __eq__(self, other):
        return (isinstance(other, FatKnot) and self.core == other.core
                and self.pushoff == other.pushoff)

    def to_json(self) -> dict:
        return {"kind": "knot", "core": self.core.as_rows(),
                "pushoff": self.pushoff.as_rows()}

    @staticmethod
    def from_json(doc) -> "FatKnot":
        if not isinstance(doc, dict) or doc.get("kind") != "knot":
            raise TubeError('knot document needs "kind": "knot"')
        return FatKnot(Polyline3.from_rows(doc["core"]),
                       Polyline3.from_rows(doc["pushoff"]))


def evaluate(f, t: float, x: Sequence[float]) -> np.ndarray:
    """Evaluate a fat knot at parameter t and disc point x."""
    xy, xz = float(x[0]), float(x[1])
    if xy * xy + xz * xz > 1.0 + 1e-12:
        raise TubeError(f"disc point {x!r} outside the unit disc")
    if isinstance(f, FatKnot):
        return f.tube.map_domain(t, xy, xz)
    return f.point(np.array([t, xy, xz]))


def standard_knot() -> FatKnot:
    core = Polyline3([-1.0, 1.0], [[-1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    push = Polyline3([-1.0, 1.0], [[-1.0, 0.0, 1.0], [1.0, 0.0, 1.0]])
    return FatKnot(core, push)


_TWIST_BODY = 0.9      # the spin lives in |t| <= this
_TWIST_RADIUS = 0.08   # body tube radius


def twist(n: int) -> FatKnot:
    """A straight core whose pushoff winds n full (right-handed) turns.

    The framing number of the result is exactly n.  All winding happens
    in the slim middle section (|t| <= 0.9, radius 0.08); the straight
    end ramps carry no rotation, so the tube map stays injective on the
    whole cylinder for |n| <= 3.
    """
    if not isinstance(n, int):
        raise TubeError("twist takes an integer")
    if n == 0:
        return standard_knot()
    body = 48 * abs(n) + 1
    ts = np.concatenate([[-1.0, -0.95],
                         np.linspace(-_TWIST_BODY, _TWIST_BODY, body),
                         [0.95, 1.0]])
    theta = 2.0 * np.pi * n * np.clip((ts + _TWIST_BODY) / (2 * _TWIST_BODY),
                                      0.0, 1.0)
    ramp = np.clip((np.abs(ts) - _TWIST_BODY) / (1.0 - _TWIST_BODY), 0.0, 1.0)
    rho = _TWIST_RADIUS + (1.0 - _TWIST_RADIUS) * ramp
    core = np.stack([ts, np.zeros_like(ts), np.zeros_like(ts)], axis=1)
    push = np.stack([ts, -rho * np.sin(theta), rho * np.cos(theta)], axis=1)
    # pin the boundary rows exactly
    push[0] = (-1.0, 0.0, 1.0)
    push[-1] = (1.0, 0.0, 1.0)
    return FatKnot(Polyline3(ts, core), Polyline3(ts, push))


# ---------------------------------------------------------------------------
# fat links

_REST_CORE = {UP: np.array([0.0, 0.5]), DOWN: np.array([0.0, -0.5])}


class FatLink:
    """A framed string 2-link as a pair of strand tubes."""

    __slots__ = ("upper", "lower")

    kind = "link"

    def __init__(self, upper: Tube | tuple, lower: Tube | tuple):
        self.upper = self._coerce(upper, UP)
        self.lower = self._coerce(lower, DOWN)
        cores_apart = min_segment_distance(self.upper.core.points,
                                           self.lower.core.points)
        if cores_apart <= 1e-9:
            raise TubeError("strand cores touch")

    @staticmethod
    def _coerce(data, which: str) -> Tube:
        if isinstance(data, Tube):
            tube = data
            if tube.center != (0.0, _STRAND_CENTER[which]) or \
                    tube.radius != _STRAND_RADIUS:
                raise TubeError(f"{which} strand has the wrong rest configuration")
            return tube
        core, pushoff = data
        return Tube(core, pushoff, center=(0.0, _STRAND_CENTER[which]),
                    radius=_STRAND_RADIUS)

    def strand(self, which: str) -> Tube:
        return self.upper if which == UP else self.lower

    def strand_point(self, which: str, p: np.ndarray) -> np.ndarray:
        """Evaluate strand `which` at the strand-domain point p = (t, x)."""
        return self.strand(which).map_domain(float(p[0]), float(p[1]), float(p[2]))

    def strand_points(self, which: str, P: np.ndarray) -> np.ndarray:
        P = np.asarray(P, dtype=float)
        return self.strand(which).map_many(P[:, 0], P[:, 1], P[:, 2])

    def seed_params(self, which: str) -> np.ndarray:
        return self.strand(which).params

    def __eq__(self, other):
        return (isinstance(other, FatLink)
                and self.upper.core == other.upper.core
                and self.upper.pushoff == other.upper.pushoff
                and self.lower.core == other.lower.core
                and self.lower.pushoff == other.lower.pushoff)

    def to_json(self) -> dict:
        return {"kind": "link",
                "upper": {"core": self.upper.core.as_rows(),
                          "pushoff": self.upper.pushoff.as_rows()},
                "lower": {"core": self.lower.core.as_rows(),
                          "pushoff": self.lower.pushoff.as_rows()}}

    @staticmethod
    def from_json(doc) -> "FatLink":
        if not isinstance(doc, dict) or doc.get("kind") != "link":
            raise TubeError('link document needs "kind": "link"')
        tubes = {}
        for name in ("upper", "lower"):
            block = doc.get(name)
            if not isinstance(block, dict):
                raise TubeError(f"link document needs a {name!r} tube block")
            tubes[name] = (Polyline3.from_rows(block["core"]),
                           Polyline3.from_rows(block["pushoff"]))
        return FatLink(tubes["upper"], tubes["lower"])


def _straight_strand(which: str) -> tuple[Polyline3, Polyline3]:
    z0 = _STRAND_CENTER[which]
    core = Polyline3([-1.0, 1.0], [[-1.0, 0.0, z0], [1.0, 0.0, z0]])
    push = Polyline3([-1.0, 1.0], [[-1.0, 0.0, z0 + _STRAND_RADIUS],
                                   [1.0, 0.0, z0 + _STRAND_RADIUS]])
    return core, push


def standard_link() -> FatLink:
    return FatLink(_straight_strand(UP), _straight_strand(DOWN))


def presentation_to_json(obj) -> dict:
    return obj.to_json()


def presentation_from_json(doc):
    if isinstance(doc, dict) and doc.get("kind") == "knot":
        return FatKnot.from_json(doc)
    if isinstance(doc, dict) and doc.get("kind") == "link":
        return FatLink.from_json(doc)
    raise TubeError('presentation needs "kind": "knot" or "link"')


def dumps_presentation(obj) -> str:
    return json.dumps(obj.to_json(), sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# lazy maps: chains of embeddings evaluated point by point

class IdentityKnot:
    """The identity self-map of R x D^2."""

    def point(self, p: np.ndarray) -> np.ndarray:
        return np.asarray(p, dtype=float)

    def points(self, P: np.ndarray) -> np.ndarray:
        return np.asarray(P, dtype=float)

    def seed_params(self) -> np.ndarray:
        return np.array([-1.0, 1.0])


IDENTITY_KNOT = IdentityKnot()


class ConjugatedKnot:
    """(L x id) o f o (L^-1 x id) for an interval L inside J."""

    def __init__(self, scale: float, offset: float, inner):
        self.scale = float(scale)
        self.offset = float(offset)
        self.inner = inner

    def point(self, p: np.ndarray) -> np.ndarray:
        return self.points(np.asarray(p, dtype=float)[None])[0]

    def points(self, P: np.ndarray) -> np.ndarray:
        Q = np.array(P, dtype=float)
        Q[:, 0] = (Q[:, 0] - self.offset) / self.scale
        R = np.array(self.inner.points(Q), dtype=float)
        R[:, 0] = self.scale * R[:, 0] + self.offset
        return R

    def seed_params(self) -> np.ndarray:
        inner = self.inner.seed_params()
        return np.concatenate([[-1.0, 1.0], self.scale * inner + self.offset])


class ComposedKnot:
    """maps[0] o maps[1] o ... o maps[-1] (rightmost applied first)."""

    def __init__(self, maps: Sequence):
        self.maps = tuple(maps)

    def point(self, p: np.ndarray) -> np.ndarray:
        return self.points(np.asarray(p, dtype=float)[None])[0]

    def points(self, P: np.ndarray) -> np.ndarray:
        Q = np.asarray(P, dtype=float)
        for m in reversed(self.maps):
            Q = m.points(Q)
        return Q

    def seed_params(self) -> np.ndarray:
        seeds = [m.seed_params() for m in self.maps]
        return np.concatenate(seeds) if seeds else np.array([-1.0, 1.0])


def conjugate_map(aff: AffineInc, inner):
    a, b = float(aff.scale), float(aff.offset)
    if a == 1.0 and b == 0.0:
        return inner
    return ConjugatedKnot(a, b, inner)


class ConjugatedLink:
    """(L x id) o l o (L^-1 x id) on both strand domains."""

    def __init__(self, scale: float, offset: float, inner):
        self.scale = float(scale)
        self.offset = float(offset)
        self.inner = inner

    def strand_point(self, which: str, p: np.ndarray) -> np.ndarray:
        return self.strand_points(which, np.asarray(p, dtype=float)[None])[0]

    def strand_points(self, which: str, P: np.ndarray) -> np.ndarray:
        Q = np.array(P, dtype=float)
        Q[:, 0] = (Q[:, 0] - self.offset) / self.scale
        R = np.array(self.inner.strand_points(which, Q), dtype=float)
        R[:, 0] = self.scale * R[:, 0] + self.offset
        return R

    def seed_params(self, which: str) -> np.ndarray:
        inner = self.inner.seed_params(which)
        return np.concatenate([[-1.0, 1.0], self.scale * inner + self.offset])


class PiecewiseLink:
    """Conjugated links on disjoint intervals, the rest embedding between.

    Pieces are (lo, hi, link_map) with the map already conjugated into
    [lo, hi]; at shared endpoints all pieces agree with the rest
    embedding, so containment may be non-strict.
    """

    def __init__(self, pieces: Sequence[tuple]):
        self.pieces = tuple(sorted(pieces, key=lambda piece: piece[0]))

    def strand_point(self, which: str, p: np.ndarray) -> np.ndarray:
        return self.strand_points(which, np.asarray(p, dtype=float)[None])[0]

    def strand_points(self, which: str, P: np.ndarray) -> np.ndarray:
        P = np.asarray(P, dtype=float)
        T = P[:, 0]
        z0 = _STRAND_CENTER[which]
        out = np.stack([T, _STRAND_RADIUS * P[:, 1],
                        z0 + _STRAND_RADIUS * P[:, 2]], axis=1)
        assigned = np.zeros(T.size, dtype=bool)
        for lo, hi, part in self.pieces:
            sel = (T >= lo) & (T <= hi) & ~assigned
            if np.any(sel):
                out[sel] = part.strand_points(which, P[sel])
                assigned |= sel
        return out

    def seed_params(self, which: str) -> np.ndarray:
        seeds = [np.array([-1.0, 1.0])]
        for lo, hi, part in self.pieces:
            seeds.append(np.array([lo, hi]))
            seeds.append(part.seed_params(which))
        return np.concatenate(seeds)


class ComposedLink:
    """The three-stage composite: both-strand knot after the link stage
    after per-strand knots."""

    def __init__(self, both_knot, link, up_knot, down_knot):
        self.both_knot = both_knot
        self.link = link
        self.strand_knots = {UP: up_knot, DOWN: down_knot}

    def strand_point(self, which: str, p: np.ndarray) -> np.ndarray:
        return self.strand_points(which, np.asarray(p, dtype=float)[None])[0]

    def strand_points(self, which: str, P: np.ndarray) -> np.ndarray:
        Q = self.strand_knots[which].points(np.asarray(P, dtype=float))
        Q = self.link.strand_points(which, Q)
        return self.both_knot.points(Q)

    def seed_params(self, which: str) -> np.ndarray:
        return np.concatenate([self.strand_knots[which].seed_params(),
                               self.link.seed_params(which),
                               self.both_knot.seed_params()])


# ---------------------------------------------------------------------------
# materialization: deterministic adaptive sampling of a chain

def _merge_params(arrays: Iterable[np.ndarray]) -> np.ndarray:
    merged = np.concatenate([np.asarray(a, dtype=float) for a in arrays])
    merged = merged[(merged >= -1.0) & (merged <= 1.0)]
    merged = np.unique(np.concatenate([merged, [-1.0, 1.0]]))
    # collapse near-duplicates so no degenerate segments appear
    keep = [0]
    for i in range(1, merged.size):
        if merged[i] - merged[keep[-1]] > 1e-12:
            keep.append(i)
    out = merged[keep]
    out[-1] = 1.0
    return out


def _refine_curves(fns: Sequence, ts: np.ndarray,
                   tol: float = CHORD_TOL) -> tuple[np.ndarray, list[np.ndarray]]:
    """Split segments until every fn's curve is chord-tight on all of them.

    `fns` map a parameter array to an (N, 3) array.  A segment splits at
    its midpoint when either third-point of any curve strays more than
    `tol` from the chord.  Returns the refined parameters and the curve
    values on them.
    """
    ts = np.asarray(ts, dtype=float)
    vals = [fn(ts) for fn in fns]
    depth = np.zeros(ts.size - 1, dtype=int)
    while True:
        t0, t1 = ts[:-1], ts[1:]
        ta = t0 + (t1 - t0) / 3.0
        tb = t0 + (t1 - t0) * (2.0 / 3.0)
        err = np.zeros(ts.size - 1)
        for fn, v in zip(fns, vals):
            va, vb = fn(ta), fn(tb)
            la = v[:-1] * (2.0 / 3.0) + v[1:] * (1.0 / 3.0)
            lb = v[:-1] * (1.0 / 3.0) + v[1:] * (2.0 / 3.0)
            err = np.maximum(err, np.max(np.abs(va - la), axis=1))
            err = np.maximum(err, np.max(np.abs(vb - lb), axis=1))
        split = (err > tol) & (depth < MAX_REFINE_DEPTH) & ((t1 - t0) > 1e-10)
        if not np.any(split):
            return ts, vals
        mids = 0.5 * (t0[split] + t1[split])
        vmids = [fn(mids) for fn in fns]
        order = np.argsort(np.concatenate([ts, mids]), kind="stable")
        ts = np.concatenate([ts, mids])[order]
        vals = [np.concatenate([v, vm])[order] for v, vm in zip(vals, vmids)]
        # children of a split inherit depth + 1, other segments keep theirs
        new_depth = np.empty(ts.size - 1, dtype=int)
        j = 0
        for seg in range(depth.size):
            if split[seg]:
                new_depth[j] = new_depth[j + 1] = depth[seg] + 1
                j += 2
            else:
                new_depth[j] = depth[seg]
                j += 1
        depth = new_depth


def _base_seeds(extra: Iterable[np.ndarray]) -> np.ndarray:
    return _merge_params([np.linspace(-1.0, 1.0, BASE_SAMPLES), *extra])


def _curve_fn(points_fn, xz: float):
    def fn(ts: np.ndarray) -> np.ndarray:
        P = np.zeros((ts.size, 3))
        P[:, 0] = ts
        P[:, 2] = xz
        return points_fn(P)
    return fn


def materialize_knot(m, extra_seeds: Iterable[np.ndarray] = ()) -> FatKnot:
    if isinstance(m, FatKnot):
        return m
    fns = [_curve_fn(m.points, 0.0), _curve_fn(m.points, 1.0)]
    ts, (core, push) = _refine_curves(
        fns, _base_seeds([m.seed_params(), *extra_seeds]))
    return FatKnot(Polyline3(ts, core), Polyline3(ts, push))


def materialize_link(m, extra_seeds: Iterable[np.ndarray] = ()) -> FatLink:
    if isinstance(m, FatLink):
        return m
    strands = {}
    for which in STRANDS:
        fns = [_curve_fn(lambda P, w=which: m.strand_points(w, P), 0.0),
               _curve_fn(lambda P, w=which: m.strand_points(w, P), 1.0)]
        ts, (core, push) = _refine_curves(
            fns, _base_seeds([m.seed_params(which), *extra_seeds]))
        strands[which] = (Polyline3(ts, core), Polyline3(ts, push))
    return FatLink(strands[UP], strands[DOWN])


# ---------------------------------------------------------------------------
# basic operations

def cube1_conjugate(aff: AffineInc, f):
    """Rescale the support of a knot or link into the interval aff(J).

    Vertices map exactly (the conjugation is affine along the axis), so
    no resampling happens; identity sections are appended when aff(J) is
    a proper subinterval of J.
    """
    a, b = float(aff.scale), float(aff.offset)
    lo, hi = a * -1.0 + b, a * 1.0 + b
    if not (-1.0 - 1e-12 <= lo and hi <= 1.0 + 1e-12):
        raise TubeError("the interval must map J into J")
    if a == 1.0 and b == 0.0:
        return f
    if isinstance(f, FatKnot):
        core, push = _conjugate_tube_data(f.tube, a, b, lo, hi)
        return FatKnot(core, push)
    if isinstance(f, FatLink):
        upper = _conjugate_tube_data(f.upper, a, b, lo, hi)
        lower = _conjugate_tube_data(f.lower, a, b, lo, hi)
        return FatLink(upper, lower)
    raise TubeError("cube1_conjugate takes a FatKnot or FatLink")


def _conjugate_tube_data(tube: Tube, a: float, b: float,
                         lo: float, hi: float) -> tuple[Polyline3, Polyline3]:
    ts = a * tube.params + b
    ts[0], ts[-1] = lo, hi
    lines = []
    for line, zoff in ((tube.core, 0.0), (tube.pushoff, tube.radius)):
        pts = line.points.copy()
        pts[:, 0] = a * pts[:, 0] + b
        rest_y, rest_z = tube.center[0], tube.center[1] + zoff
        ts_full, pts_full = ts, pts
        if lo > -1.0:
            ts_full = np.concatenate([[-1.0], ts_full])
            pts_full = np.vstack([[[-1.0, rest_y, rest_z]], pts_full])
        if hi < 1.0:
            ts_full = np.concatenate([ts_full, [1.0]])
            pts_full = np.vstack([pts_full, [[1.0, rest_y, rest_z]]])
        lines.append(Polyline3(ts_full, pts_full))
    return lines[0], lines[1]


def compose(g, f) -> FatKnot:
    """The composite g o f of two fat knots, rebuilt as tube data.

    The new core is g evaluated along f's core, likewise for the
    pushoff; adaptive resampling keeps the stored polylines within the
    chord tolerance of the true composite curves.
    """
    return materialize_knot(ComposedKnot([_as_knot_map(g), _as_knot_map(f)]))


def _as_knot_map(f):
    if isinstance(f, (FatKnot, IdentityKnot, ConjugatedKnot, ComposedKnot)):
        return f
    if hasattr(f, "point"):
        return f
    raise TubeError(f"not a knot map: {f!r}")


def _as_link_map(f):
    if hasattr(f, "strand_point"):
        return f
    raise TubeError(f"not a link map: {f!r}")


# ---------------------------------------------------------------------------
# the planar-configuration action on knots

def kappa_map(config: CubeConfig, knots: Sequence, direction: str = "standard",
              order: Sequence[int] | None = None):
    """The lazy composite of interval-rescaled knots in composition order.

    `order` (a linear extension, 0-based cube indices) defaults to the
    canonical one; any valid extension yields the same map because
    incomparable factors have disjoint supports.
    """
    if config.dimension != 2:
        raise TubeError("the knot action needs a planar configuration")
    config.with_mode(Mode.DISJOINT)  # revalidates disjointness
    if len(knots) != config.arity:
        raise TubeError(f"{config.arity} cubes but {len(knots)} knots")
    if order is None:
        order = canonical_ordering(config, direction)
    else:
        order = tuple(order)
    factors = []
    for idx in order:
        aff = config.cubes[idx].first_factor()
        factors.append(conjugate_map(aff, _as_knot_map(knots[idx])))
    if len(factors) == 1:
        return factors[0]
    return ComposedKnot(factors)


def kappa_act(config: CubeConfig, knots: Sequence, direction: str = "standard",
              order: Sequence[int] | None = None) -> FatKnot:
    """Act on fat knots with a planar configuration; arity 0 gives the
    standard knot."""
    if config.arity == 0:
        return standard_knot()
    m = kappa_map(config, knots, direction, order)
    return materialize_knot(m)


# ---------------------------------------------------------------------------
# the interval-configuration action on links

def lambda_map(config: CubeConfig, links: Sequence):
    """The lazy piecewise map concatenating links along an interval
    configuration."""
    if config.dimension != 1:
        raise TubeError("the link action needs an interval configuration")
    config.with_mode(Mode.DISJOINT)
    if len(links) != config.arity:
        raise TubeError(f"{config.arity} intervals but {len(links)} links")
    pieces = []
    for cube, link in zip(config.cubes, links):
        aff = cube.first_factor()
        a, b = float(aff.scale), float(aff.offset)
        part = _as_link_map(link) if (a == 1.0 and b == 0.0) \
            else ConjugatedLink(a, b, _as_link_map(link))
        pieces.append((a * -1.0 + b, a * 1.0 + b, part))
    return PiecewiseLink(pieces)


def lambda_act(config: CubeConfig, links: Sequence) -> FatLink:
    """Concatenate fat links along an interval configuration; arity 0
    gives the standard link."""
    if config.arity == 0:
        return standard_link()
    return materialize_link(lambda_map(config, links))


# ---------------------------------------------------------------------------
# strand embeddings of knots

def phi_hat_map(color: Color, f):
    """The lazy link putting a knot on one strand or on both in parallel."""
    color = Color(color)
    fmap = _as_knot_map(f)
    if color is Color.UP:
        return ComposedLink(IDENTITY_KNOT, standard_link(), fmap, IDENTITY_KNOT)
    if color is Color.DOWN:
        return ComposedLink(IDENTITY_KNOT, standard_link(), IDENTITY_KNOT, fmap)
    if color is Color.UPDOWN:
        return ComposedLink(fmap, standard_link(), IDENTITY_KNOT, IDENTITY_KNOT)
    raise TubeError("phi_hat takes a strand color, not o")


def phi_hat(color: Color, f) -> FatLink:
    return materialize_link(phi_hat_map(color, f))


# ---------------------------------------------------------------------------
# the colored action

def mu_map(element: SclElement, inputs: Sequence):
    """The lazy three-stage composite of a colored configuration.

    Inputs match colors: o-colored slots take link maps, strand-colored
    slots take knot maps.  Only output color o yields a link map; use
    `mu_act` for the monochromatic delegations.
    """
    if element.output_color is not Color.O:
        raise TubeError("mu_map needs output color o; monochromatic outputs "
                        "delegate to the knot action")
    if len(inputs) != element.arity:
        raise TubeError(f"{element.arity} inputs expected, got {len(inputs)}")
    sort = color_sort(element.input_colors)
    for pos in sort[Color.O]:
        _as_link_map(inputs[pos])
    for c in (Color.UP, Color.DOWN, Color.UPDOWN):
        for pos in sort[c]:
            _as_knot_map(inputs[pos])

    def knot_stage(color: Color, direction: str):
        positions = sort[color]
        if not positions:
            return IDENTITY_KNOT
        sub = restrict_config(element.config, positions, Mode.DISJOINT)
        return kappa_map(sub, [inputs[p] for p in positions], direction)

    both = knot_stage(Color.UPDOWN, "reverse")
    up = knot_stage(Color.UP, "standard")
    down = knot_stage(Color.DOWN, "standard")

    o_positions = sort[Color.O]
    if o_positions:
        sub = restrict_config(element.config, o_positions, Mode.DISJOINT)
        intervals = projection_pi(sub).with_mode(Mode.DISJOINT)
        link_stage = lambda_map(intervals, [inputs[p] for p in o_positions])
    else:
        link_stage = PiecewiseLink(())
    return ComposedLink(both, link_stage, up, down)


def mu_act(element: SclElement, inputs: Sequence):
    """Act with a colored configuration on fat knots and links.

    Output color o yields a FatLink; the monochromatic strand colors
    delegate to the knot action (reverse composition order for the
    parallel-strand color) and yield a FatKnot.
    """
    report = scl_validate(element)
    report.raise_if_invalid()
    if element.output_color is not Color.O:
        direction = "reverse" if element.output_color is Color.UPDOWN else "standard"
        if element.arity == 0:
            return standard_knot()
        return kappa_act(element.config.with_mode(Mode.DISJOINT), inputs, direction)
    if element.arity == 0:
        return standard_link()
    return materialize_link(mu_map(element, inputs))


# ---------------------------------------------------------------------------
# invariants

def _closed_tube_curves(tube: Tube):
    return tube.core.points, tube.pushoff.points


def framing_number(f: FatKnot, extra_shear=None) -> int:
    """Linking number of the core with the pushoff after closing both
    around infinity (core below, pushoff above)."""
    if not isinstance(f, FatKnot):
        raise TubeError("framing_number takes a FatKnot")
    return linking_of_open_pair(f.core.points, f.pushoff.points,
                                extra_shear=extra_shear)


def _strand_framing(tube: Tube, extra_shear=None) -> int:
    return linking_of_open_pair(tube.core.points, tube.pushoff.points,
                                extra_shear=extra_shear)


def framing_pair(link: FatLink, extra_shear=None) -> tuple[int, int]:
    """Framing numbers of the two strand tubes (upper, lower)."""
    if not isinstance(link, FatLink):
        raise TubeError("framing_pair takes a FatLink")
    return (_strand_framing(link.upper, extra_shear),
            _strand_framing(link.lower, extra_shear))


def linking_of_strands(link: FatLink, extra_shear=None) -> int:
    """Linking number of the two strand cores."""
    if not isinstance(link, FatLink):
        raise TubeError("linking_of_strands takes a FatLink")
    return linking_of_open_pair(link.upper.core.points, link.lower.core.points,
                                extra_shear=extra_shear)


# ---------------------------------------------------------------------------
# embedding diagnostics

@dataclass(frozen=True)
class DiagnosticReport:
    min_tube_separation: float
    min_self_separation: float
    resolution: float
    certified: bool
    notes: tuple[str, ...] = ()


_SELF_WINDOW = 0.25  # arclength gap below which core self-proximity is local
_REST_EPS = 1e-9


def _vertex_radii(tube: Tube) -> np.ndarray:
    return np.linalg.norm(tube.pushoff.points - tube.core.points, axis=1)


def _segment_radii(tube: Tube) -> np.ndarray:
    r = _vertex_radii(tube)
    return np.maximum(r[:-1], r[1:])


def _arclength_mids(points: np.ndarray) -> np.ndarray:
    seg = np.linalg.norm(np.diff(points, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    return 0.5 * (s[:-1] + s[1:])


class _TubeGeometry:
    """Split a tube into straight rest sections at the two ends and the
    knotted body in between.

    Over a rest section the core runs along the rest line, so the disc
    fibers are perpendicular x-slabs: the tube there occupies exactly
    { (x, y, z) : x in slab, |(y, z) - center| < r(x) }, however wide the
    radius is.  Everywhere else the tube is bounded by balls of the local
    radius around the core, which gives the conservative radius-sum test.
    """

    def __init__(self, tube: Tube):
        self.tube = tube
        pts = tube.core.points
        cy, cz = tube.center
        on_line = (np.abs(pts[:, 1] - cy) < _REST_EPS) & \
                  (np.abs(pts[:, 2] - cz) < _REST_EPS)
        n = len(pts)
        left = 0
        while left + 1 < n and on_line[left + 1]:
            left += 1
        right = n - 1
        while right - 1 > left and on_line[right - 1]:
            right -= 1
        self.left_end = left      # vertices 0..left lie on the rest line
        self.right_start = right  # vertices right..n-1 lie on the rest line
        self.body = slice(left, right + 1)
        self.radii = _vertex_radii(tube)

    def body_points(self) -> np.ndarray:
        return self.tube.core.points[self.body]

    def body_segment_radii(self) -> np.ndarray:
        r = self.radii[self.body]
        return np.maximum(r[:-1], r[1:]) if r.size >= 2 else np.empty(0)

    def body_mids(self) -> np.ndarray:
        return _arclength_mids(self.tube.core.points)[
            self.left_end:self.right_start]

    def end_slabs(self):
        """Two (xs, rs) tables of the rest sections, possibly empty."""
        pts = self.tube.core.points
        out = []
        for sl in (slice(0, self.left_end + 1),
                   slice(self.right_start, len(pts))):
            xs = pts[sl, 0]
            rs = self.radii[sl]
            if xs.size >= 2:
                out.append((xs, rs))
        return out

    def slab_clearance(self, other_pts: np.ndarray, other_reach: np.ndarray) -> float:
        """Min clearance of another core's vertices against the end fibers."""
        best = float("inf")
        cy, cz = self.tube.center
        for xs, rs in self.end_slabs():
            lo, hi = min(xs[0], xs[-1]), max(xs[0], xs[-1])
            inside = (other_pts[:, 0] >= lo) & (other_pts[:, 0] <= hi)
            if not np.any(inside):
                continue
            q = other_pts[inside]
            local_r = np.interp(q[:, 0], np.sort(xs), rs[np.argsort(xs)])
            trans = np.hypot(q[:, 1] - cy, q[:, 2] - cz)
            best = min(best, float(np.min(trans - local_r - other_reach[inside])))
        return best


def _body_pair_clearance(ga: _TubeGeometry, gb: _TubeGeometry,
                         same_tube: bool) -> tuple[float, float]:
    a, b = ga.body_points(), gb.body_points()
    if len(a) < 2 or len(b) < 2:
        return float("inf"), float("inf")
    dist = segment_distance_matrix(a, b)
    ra = ga.body_segment_radii()
    rb = gb.body_segment_radii()
    if same_tube:
        # pairs closer along the curve than a few tube diameters are the
        # tube bending smoothly, not a collision; the ball bound cannot
        # see the perpendicular fibers there
        mids_a = ga.body_mids()
        window = np.maximum(_SELF_WINDOW, 4.0 * (ra[:, None] + rb[None, :]))
        local = np.abs(mids_a[:, None] - mids_a[None, :]) < window
        dist_for_clearance = np.where(local, np.inf, dist)
        sep = np.where(np.abs(mids_a[:, None] - mids_a[None, :]) < _SELF_WINDOW,
                       np.inf, dist)
    else:
        dist_for_clearance = dist
        sep = dist
    clearance = dist_for_clearance - ra[:, None] - rb[None, :]
    return float(np.min(sep)), float(np.min(clearance))


def _vertex_reach(g: _TubeGeometry) -> np.ndarray:
    return g.radii


def diagnostics(obj) -> DiagnosticReport:
    """Measure sampled tube separations.

    Certification means the sampled tube segments cannot meet: knotted
    body parts must stay further apart than the sum of the local tube
    radii (self-pairs within a small arclength window excepted), and the
    straight end sections, whose fibers are perpendicular slabs, must
    have no foreign core inside them.  Certification happens at the
    sampled resolution only; it is a diagnosis, not a proof.
    """
    notes = []
    if isinstance(obj, FatKnot):
        geoms = [_TubeGeometry(obj.tube)]
        cross = float("inf")
    elif isinstance(obj, FatLink):
        geoms = [_TubeGeometry(obj.upper), _TubeGeometry(obj.lower)]
        cross = float(np.min(segment_distance_matrix(
            obj.upper.core.points, obj.lower.core.points)))
        clear = _cross_clearance(geoms[0], geoms[1])
        if clear <= 0:
            notes.append(f"strand tubes may meet (clearance {clear:.4g}): "
                         "embedding not certified")
    else:
        raise TubeError("diagnostics takes a FatKnot or FatLink")
    self_sep = float("inf")
    resolution = 0.0
    for g in geoms:
        sep, clear = _body_pair_clearance(g, g, same_tube=True)
        slab = g.slab_clearance(*_far_body_vertices(g))
        self_sep = min(self_sep, sep)
        if min(clear, slab) <= 0:
            notes.append(f"tube may meet itself (clearance "
                         f"{min(clear, slab):.4g}): embedding not certified")
        resolution = max(resolution, float(np.max(np.diff(g.tube.params))))
    return DiagnosticReport(cross, self_sep, resolution, not notes, tuple(notes))


def _far_body_vertices(g: _TubeGeometry):
    """Body vertices arclength-far from the rest sections; the corner
    region where the tube leaves its own slab is continuous, not a
    collision."""
    pts = g.tube.core.points
    seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    keep = (s >= s[g.left_end] + _SELF_WINDOW) & \
           (s <= s[g.right_start] - _SELF_WINDOW)
    return pts[keep], g.radii[keep]


def _cross_clearance(ga: _TubeGeometry, gb: _TubeGeometry) -> float:
    _, body = _body_pair_clearance(ga, gb, same_tube=False)
    slab_ab = ga.slab_clearance(gb.tube.core.points, _vertex_reach(gb))
    slab_ba = gb.slab_clearance(ga.tube.core.points, _vertex_reach(ga))
    # both rest sections are straight: fibers are parallel discs, compare
    # center distance against the radius sums over the common x-range
    rest = float("inf")
    for xsa, rsa in ga.end_slabs():
        for xsb, rsb in gb.end_slabs():
            lo = max(min(xsa[0], xsa[-1]), min(xsb[0], xsb[-1]))
            hi = min(max(xsa[0], xsa[-1]), max(xsb[0], xsb[-1]))
            if lo > hi:
                continue
            xs = np.linspace(lo, hi, 17)
            ra = np.interp(xs, np.sort(xsa), rsa[np.argsort(xsa)])
            rb = np.interp(xs, np.sort(xsb), rsb[np.argsort(xsb)])
            centers = np.hypot(ga.tube.center[0] - gb.tube.center[0],
                               ga.tube.center[1] - gb.tube.center[1])
            rest = min(rest, float(np.min(centers - ra - rb)))
    return min(body, slab_ab, slab_ba, rest)
