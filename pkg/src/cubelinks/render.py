"""Deterministic SVG emission: cube-configuration figures and knot or
link diagrams.

Configurations render as numbered boxes inside the unit square, the
number carrying the cube's color as a superscript and the output color
sitting as a subscript of the frame.  Diagrams project the tube cores
along y (the same shear rule as the crossing counter, so rendered
crossings match counted ones) and interrupt the under-strand at every
crossing.

Output is byte-stable: fixed coordinate formatting, element order given
by the input order, no timestamps or generated ids.
"""

from __future__ import annotations

import numpy as np

from .cubes import Color, CubeConfig, SclElement
from .linking import FALLBACK_SHEARS, PARAM_GUARD
from .tubes import FatKnot, FatLink

_VIEW = 420.0
_MARGIN = 40.0


class RenderError(ValueError):
    pass


def _fmt(v: float) -> str:
    out = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if out == "-0" else out


def _to_view(x: float, y: float) -> tuple[float, float]:
    """Map [-1, 1]^2 to viewport pixels, y pointing up."""
    span = _VIEW - 2 * _MARGIN
    return (_MARGIN + (x + 1) / 2 * span, _VIEW - _MARGIN - (y + 1) / 2 * span)


def _svg_header(lines: list[str]):
    lines.append(f'<svg xmlns="http://www.w3.org/2000/svg" '
                 f'width="{_fmt(_VIEW)}" height="{_fmt(_VIEW)}" '
                 f'viewBox="0 0 {_fmt(_VIEW)} {_fmt(_VIEW)}">')


# ---------------------------------------------------------------------------
# cube configurations

def render_cubes(obj) -> str:
    """SVG for a configuration or a colored element."""
    if isinstance(obj, SclElement):
        config = obj.config
        colors = obj.input_colors
        output = obj.output_color.pretty
    elif isinstance(obj, CubeConfig):
        config = obj
        colors = None
        output = None
    else:
        raise RenderError("render_cubes takes a CubeConfig or SclElement")
    lines: list[str] = []
    _svg_header(lines)
    lines.append('<rect width="100%" height="100%" fill="white"/>')
    fx0, fy1 = _to_view(-1.0, -1.0)
    fx1, fy0 = _to_view(1.0, 1.0)
    lines.append(f'<rect x="{_fmt(fx0)}" y="{_fmt(fy0)}" '
                 f'width="{_fmt(fx1 - fx0)}" height="{_fmt(fy1 - fy0)}" '
                 f'fill="none" stroke="black" stroke-width="1.5"/>')
    if output is not None:
        lines.append(f'<text x="{_fmt(fx1 + 6)}" y="{_fmt(fy1 + 14)}" '
                     f'font-size="16">{output}</text>')
    for idx, cube in enumerate(config.cubes):
        xlo, xhi = (float(v) for v in cube.image(0))
        if config.dimension >= 2:
            ylo, yhi = (float(v) for v in cube.image(1))
        else:
            ylo, yhi = -0.06, 0.06  # intervals drawn as slim boxes
        x0, y1 = _to_view(xlo, ylo)
        x1, y0 = _to_view(xhi, yhi)
        lines.append(f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" '
                     f'width="{_fmt(x1 - x0)}" height="{_fmt(y1 - y0)}" '
                     f'fill="none" stroke="black" stroke-width="1"/>')
        cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
        label = f"{idx + 1}"
        sup = colors[idx].pretty if colors is not None else ""
        lines.append(f'<text x="{_fmt(cx)}" y="{_fmt(cy + 5)}" font-size="14" '
                     f'text-anchor="middle">{label}'
                     + (f'<tspan dy="-6" font-size="10">{sup}</tspan>' if sup else "")
                     + '</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# diagrams

def _project(points: np.ndarray, shear) -> np.ndarray:
    sx, sz = shear
    return np.stack([points[:, 0] + sx * points[:, 1],
                     points[:, 2] + sz * points[:, 1]], axis=1)


def _pair_crossings(pa, da, pb, db, same: bool):
    """Crossings between two projected curves (or one with itself).

    Returns (under_side, i, j, t, u) arrays, or None if degenerate;
    under_side is 0 when curve a goes under, 1 when curve b does.
    """
    P, Q = pa[:-1], pa[1:]
    R, S = pb[:-1], pb[1:]
    alo = np.minimum(P, Q)
    ahi = np.maximum(P, Q)
    blo = np.minimum(R, S)
    bhi = np.maximum(R, S)
    overlap = ((alo[:, None, 0] <= bhi[None, :, 0]) & (blo[None, :, 0] <= ahi[:, None, 0]) &
               (alo[:, None, 1] <= bhi[None, :, 1]) & (blo[None, :, 1] <= ahi[:, None, 1]))
    if same:
        idx = np.arange(len(P))
        overlap &= (idx[None, :] - idx[:, None]) >= 2
    ia, ib = np.nonzero(overlap)
    if ia.size == 0:
        return ia, ib, np.empty(0), np.empty(0), np.empty(0, dtype=int)
    d1 = (Q - P)[ia]
    d2 = (S - R)[ib]
    w = R[ib] - P[ia]
    denom = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    ok = np.abs(denom) > 1e-14
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(ok, (w[:, 0] * d2[:, 1] - w[:, 1] * d2[:, 0]) / denom, -1.0)
        u = np.where(ok, (w[:, 0] * d1[:, 1] - w[:, 1] * d1[:, 0]) / denom, -1.0)
    near = (t > -PARAM_GUARD) & (t < 1 + PARAM_GUARD) & \
           (u > -PARAM_GUARD) & (u < 1 + PARAM_GUARD)
    inside = (t > PARAM_GUARD) & (t < 1 - PARAM_GUARD) & \
             (u > PARAM_GUARD) & (u < 1 - PARAM_GUARD)
    if np.any(near & ~inside):
        return None  # vertex-on-crossing
    sel = inside
    ia, ib, t, u = ia[sel], ib[sel], t[sel], u[sel]
    dep_a = da[ia] * (1 - t) + da[ia + 1] * t
    dep_b = db[ib] * (1 - u) + db[ib + 1] * u
    gapd = dep_a - dep_b
    if np.any(np.abs(gapd) < 1e-9):
        return None
    under = np.where(gapd > 0, 1, 0)
    return ia, ib, t, u, under


def _diagram_crossings(curves: list[np.ndarray], shear):
    """All diagram crossings among the projected curves.

    Returns a list of (under_curve, under_segment, u_param) triples, or
    None when the projection is not generic.
    """
    proj = [_project(c, shear) for c in curves]
    depth = [c[:, 1] for c in curves]
    out = []
    for a in range(len(curves)):
        for b in range(a, len(curves)):
            got = _pair_crossings(proj[a], depth[a], proj[b], depth[b], a == b)
            if got is None:
                return None
            ia, ib, t, u, under = got
            for k in range(len(ia)):
                if under[k] == 1:
                    out.append((b, int(ib[k]), float(u[k])))
                else:
                    out.append((a, int(ia[k]), float(t[k])))
    return out


def render_diagram(obj, gap: float = 0.035) -> str:
    """SVG diagram of a knot or link with under-strand gaps."""
    if isinstance(obj, FatKnot):
        curves = [obj.core.points]
        strokes = ["black"]
    elif isinstance(obj, FatLink):
        curves = [obj.upper.core.points, obj.lower.core.points]
        strokes = ["black", "#555555"]
    else:
        raise RenderError("render_diagram takes a FatKnot or FatLink")
    crossings = None
    shear = (0.0, 0.0)
    for shear in FALLBACK_SHEARS:
        crossings = _diagram_crossings(curves, shear)
        if crossings is not None:
            break
    if crossings is None:
        raise RenderError("no generic projection for the diagram")

    cuts: dict[tuple[int, int], list[tuple[float, float]]] = {}
    for c, seg, u in crossings:
        pts = _project(curves[c], shear)
        seg_len = float(np.linalg.norm(pts[seg + 1] - pts[seg]))
        du = gap / max(seg_len, 1e-9)
        cuts.setdefault((c, seg), []).append((u - du, u + du))

    lines: list[str] = []
    _svg_header(lines)
    lines.append('<rect width="100%" height="100%" fill="white"/>')
    for c, pts3 in enumerate(curves):
        pts = _project(pts3, shear)
        for seg in range(len(pts) - 1):
            pieces = [(0.0, 1.0)]
            for lo, hi in sorted(cuts.get((c, seg), [])):
                nxt = []
                for plo, phi in pieces:
                    if hi <= plo or lo >= phi:
                        nxt.append((plo, phi))
                    else:
                        if plo < lo:
                            nxt.append((plo, lo))
                        if hi < phi:
                            nxt.append((hi, phi))
                pieces = nxt
            for plo, phi in pieces:
                p0 = pts[seg] * (1 - plo) + pts[seg + 1] * plo
                p1 = pts[seg] * (1 - phi) + pts[seg + 1] * phi
                a = _to_view(p0[0], p0[1])
                b = _to_view(p1[0], p1[1])
                lines.append(f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" '
                             f'x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" '
                             f'stroke="{strokes[c]}" stroke-width="1.6" '
                             f'stroke-linecap="round"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
