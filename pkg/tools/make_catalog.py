#!/usr/bin/env python3
"""Generate the shipped catalog presentations.

Long knots come from braid tangles: the braid runs between z-rails over
x in [-0.5, 0.5], trace-closure returns pass behind the diagram at
negative y, and the two loose ends exit to (+-1, 0, 0).  Pushoffs follow
a discrete rotation-minimizing frame, spun linearly so the end normal
matches the rest frame, with whole extra turns added until the measured
framing number vanishes.

Outputs land in src/cubelinks/data/.  Run from the repository root:

    python3 tools/make_catalog.py
"""

import json
import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from cubelinks.cubes import Color
from cubelinks.tubes import (FatKnot, FatLink, Polyline3, diagnostics,
                             framing_number, framing_pair, linking_of_strands,
                             phi_hat)

OUT_DIR = pathlib.Path(__file__).resolve().parent.parent / "src" / "cubelinks" / "data"


# ---------------------------------------------------------------------------
# braid tangles opened into long knots

RAIL_SPAN = 0.7          # z-extent of the rails
X_LEFT, X_RIGHT = -0.5, 0.5
CROSS_DEPTH = 0.2        # y-excursion at a crossing


def braid_core(word, n_strands):
    """Vertex path of the long knot obtained from a braid word.

    `word` is a list of (generator, sign) pairs, generator 1-based from
    the top; the permutation of the word must be a single cycle so the
    trace closure is a knot.  Returns the (N, 3) vertex array.
    """
    rails = [RAIL_SPAN / 2 - RAIL_SPAN * i / (n_strands - 1)
             for i in range(n_strands)] if n_strands > 1 else [0.0]
    ncells = len(word)
    xs = np.linspace(X_LEFT, X_RIGHT, ncells + 1)

    # per-pass polylines: strand_paths[p] runs left to right and starts at
    # rail start_pos[p]
    position = list(range(n_strands))     # position[slot] = strand id
    paths = {s: [np.array([X_LEFT, 0.0, rails[i]])]
             for i, s in enumerate(position)}
    for c, (gen, sign) in enumerate(word):
        x0, x1 = xs[c], xs[c + 1]
        xm = 0.5 * (x0 + x1)
        upper, lower = gen - 1, gen
        zm = 0.5 * (rails[upper] + rails[lower])
        s_up, s_low = position[upper], position[lower]
        # the strand moving down passes over for a positive generator
        paths[s_up].append(np.array([xm, CROSS_DEPTH * sign, zm]))
        paths[s_up].append(np.array([x1, 0.0, rails[lower]]))
        paths[s_low].append(np.array([xm, -CROSS_DEPTH * sign, zm]))
        paths[s_low].append(np.array([x1, 0.0, rails[upper]]))
        position[upper], position[lower] = s_low, s_up
        for slot, s in enumerate(position):
            if s not in (s_up, s_low):
                paths[s].append(np.array([x1, 0.0, rails[slot]]))
    exit_slot = {s: slot for slot, s in enumerate(position)}

    # walk the knot: enter at the top-left rail, follow passes, take the
    # trace-closure return behind the diagram between passes
    order = []
    strand = 0
    while True:
        order.append(strand)
        nxt = exit_slot[strand]       # right slot = left rail index of next pass
        if nxt == 0:
            break
        strand = nxt
    if len(order) != n_strands:
        raise ValueError("braid permutation is not a single cycle")

    pts = [np.array([-1.0, 0.0, 0.0]), np.array([-0.85, 0.0, 0.0]),
           np.array([-0.72, 0.0, rails[0]])]
    for k, s in enumerate(order):
        pts.extend(paths[s])
        right_slot = exit_slot[s]
        if k == len(order) - 1:
            break
        z = rails[right_slot]
        depth = -0.5 - 0.06 * right_slot
        xout = 0.56 + 0.04 * right_slot
        pts.append(np.array([xout, 0.0, z]))
        pts.append(np.array([xout, depth, z]))
        pts.append(np.array([-xout, depth, z]))
        pts.append(np.array([-xout, 0.0, z]))
    z_exit = rails[exit_slot[order[-1]]]
    pts.append(np.array([0.72, 0.0, z_exit]))
    pts.append(np.array([0.85, 0.0, 0.0]))
    pts.append(np.array([1.0, 0.0, 0.0]))
    return np.array(pts)


def round_corners(points, cut=0.06, samples=8):
    """Replace interior corners by quadratic Bezier arcs.

    Sharp corners concentrate frame rotation; a tube map whose frame
    turns faster than the core advances folds over itself and stops
    being injective.  With a cut of 0.06 the core curvature stays below
    ~13, safe for evaluation at any disc point with body radius 0.05.
    """
    out = [points[0]]
    for i in range(1, len(points) - 1):
        prev, here, nxt = out[-1], points[i], points[i + 1]
        din = here - prev
        dout = nxt - here
        lin, lout = np.linalg.norm(din), np.linalg.norm(dout)
        c = min(cut, 0.45 * lin, 0.45 * lout)
        a = here - din / lin * c
        b = here + dout / lout * c
        for j in range(samples + 1):
            u = j / samples
            out.append((1 - u) ** 2 * a + 2 * u * (1 - u) * here + u ** 2 * b)
    out.append(points[-1])
    return np.array(out)


def subdivide(points, max_len=0.02):
    out = [points[0]]
    for a, b in zip(points[:-1], points[1:]):
        n = max(1, int(np.ceil(np.linalg.norm(b - a) / max_len)))
        for j in range(1, n + 1):
            out.append(a + (b - a) * (j / n))
    return np.array(out)


def arclength_params(points):
    seg = np.linalg.norm(np.diff(points, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    ts = -1.0 + 2.0 * s / s[-1]
    ts[0], ts[-1] = -1.0, 1.0
    return ts


def vertex_tangents(points):
    diffs = np.diff(points, axis=0)
    dirs = diffs / np.linalg.norm(diffs, axis=1)[:, None]
    tans = np.empty_like(points)
    tans[1:-1] = dirs[:-1] + dirs[1:]
    tans[0] = (1.0, 0.0, 0.0)
    tans[-1] = (1.0, 0.0, 0.0)
    return tans / np.linalg.norm(tans, axis=1)[:, None]


def rmf_normals(points, tangents):
    """Discrete rotation-minimizing frame (double reflection)."""
    normals = np.empty_like(points)
    n = np.array([0.0, 0.0, 1.0])
    normals[0] = n
    for i in range(len(points) - 1):
        v1 = points[i + 1] - points[i]
        c1 = float(v1 @ v1)
        nl = n - (2.0 / c1) * (v1 @ n) * v1
        tl = tangents[i] - (2.0 / c1) * (v1 @ tangents[i]) * v1
        v2 = tangents[i + 1] - tl
        c2 = float(v2 @ v2)
        n = nl if c2 < 1e-300 else nl - (2.0 / c2) * (v2 @ nl) * v2
        n = n - (n @ tangents[i + 1]) * tangents[i + 1]
        n /= np.linalg.norm(n)
        normals[i + 1] = n
    return normals


def framed_pushoff(points, ts, radii, extra_turns=0):
    tangents = vertex_tangents(points)
    normals = rmf_normals(points, tangents)
    binormals = np.cross(tangents, normals)
    end = normals[-1]
    delta = float(np.arctan2(end[1], end[2]))
    seg = np.linalg.norm(np.diff(points, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    frac = s / s[-1]
    phi = (delta + 2.0 * np.pi * extra_turns) * frac
    push = points + radii[:, None] * (np.cos(phi)[:, None] * normals +
                                      np.sin(phi)[:, None] * binormals)
    push[0] = points[0] + radii[0] * np.array([0.0, 0.0, 1.0])
    push[-1] = points[-1] + radii[-1] * np.array([0.0, 0.0, 1.0])
    return push


def knot_radii(points, inner, ramp=0.07):
    """Tube radius per vertex: 1 at the ends, `inner` in the body.

    The ramp finishes within the straight end stubs (before the first
    rounded corner), so the wide part of the tube never turns.
    """
    seg = np.linalg.norm(np.diff(points, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    u = np.minimum(1.0, np.minimum(s, s[-1] - s) / ramp)
    return 1.0 + (inner - 1.0) * u


def zero_framed_knot(core_vertices, inner=0.05):
    pts = subdivide(round_corners(core_vertices))
    ts = arclength_params(pts)
    radii = knot_radii(pts, inner)
    knot = None
    for extra in (0, 1, -1, 2, -2, 3, -3):
        push = framed_pushoff(pts, ts, radii, extra_turns=extra)
        cand = FatKnot(Polyline3(ts, pts), Polyline3(ts, push))
        w = framing_number(cand)
        if w == 0:
            knot = cand
            break
        # first candidate tells us the needed correction direction
        push = framed_pushoff(pts, ts, radii, extra_turns=extra - w)
        cand = FatKnot(Polyline3(ts, pts), Polyline3(ts, push))
        if framing_number(cand) == 0:
            knot = cand
            break
    if knot is None:
        raise RuntimeError("could not zero the framing")
    return knot


# ---------------------------------------------------------------------------
# the clasp link: one full positive twist of the two strands

def clasp_link():
    m = 129
    ts = np.linspace(-1.0, 1.0, m)
    theta = np.pi * (ts + 1.0)
    strands = {}
    for which, sign in (("up", 1.0), ("down", -1.0)):
        core = np.stack([ts,
                         sign * -0.5 * np.sin(theta),
                         sign * 0.5 * np.cos(theta)], axis=1)
        core[0] = (-1.0, 0.0, sign * 0.5)
        core[-1] = (1.0, 0.0, sign * 0.5)
        pts = core
        radii = np.full(m, 0.125)
        cand_push = None
        for extra in (0, 1, -1, 2, -2):
            push = framed_pushoff(pts, ts, radii, extra_turns=extra)
            sep = np.linalg.norm(push - pts, axis=1)
            assert np.all(sep > 0.12)
            strand_core = Polyline3(ts, pts)
            strand_push = Polyline3(ts, push)
            from cubelinks.tubes import Tube
            tube = Tube(strand_core, strand_push,
                        center=(0.0, sign * 0.5), radius=0.125)
            from cubelinks.linking import linking_of_open_pair
            if linking_of_open_pair(pts, push) == 0:
                cand_push = push
                break
        if cand_push is None:
            raise RuntimeError("could not zero the strand framing")
        strands[which] = (Polyline3(ts, pts), Polyline3(ts, cand_push))
    return FatLink(strands["up"], strands["down"])


# ---------------------------------------------------------------------------

def write(name, obj):
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    path = OUT_DIR / f"{name}.json"
    path.write_text(json.dumps(obj.to_json(), sort_keys=True) + "\n")
    print(f"wrote {path.relative_to(OUT_DIR.parent.parent.parent)}")


def main():
    trefoil = zero_framed_knot(braid_core([(1, 1), (1, 1), (1, 1)], 2))
    print("trefoil: framing", framing_number(trefoil), diagnostics(trefoil))
    write("trefoil", trefoil)

    fig8 = zero_framed_knot(braid_core([(1, 1), (2, -1), (1, 1), (2, -1)], 3))
    print("figure_eight: framing", framing_number(fig8), diagnostics(fig8))
    write("figure_eight", fig8)

    clasp = clasp_link()
    print("clasp: lk", linking_of_strands(clasp), "framing", framing_pair(clasp))
    write("clasp", clasp)

    # a slimmer trefoil keeps the rescaled strand tube certifiable
    slim = zero_framed_knot(braid_core([(1, 1), (1, 1), (1, 1)], 2), inner=0.02)
    split = phi_hat(Color.UP, slim)
    print("split: lk", linking_of_strands(split), "framing", framing_pair(split),
          "certified", diagnostics(split).certified)
    write("split", split)


if __name__ == "__main__":
    main()
