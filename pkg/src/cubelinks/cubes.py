"""Exact little-cubes machinery.

A little n-cube is a product of n affine increasing self-maps of the
interval J = [-1, 1].  Configurations of such cubes form operads under
substitution: the overlapping variant puts no constraint on the cubes,
the disjoint variant asks for pairwise almost disjoint images, and the
lower-face variant additionally pins every cube's last factor to send
-1 to -1.  On top of these sits a four-colored operad on the colors
{o, up, down, updown} whose o-colored cubes must meet the lower face
and stay almost disjoint from everything else.

All coordinates are `fractions.Fraction`, so every operad law checked
here is an exact structural equality, never a float comparison.

Composition indices follow the usual operadic convention and are
1-based throughout the public API.  Permutations are tuples with
0-based values: `sigma[i]` is the image of position `i`.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations as _all_permutations
from math import gcd
from typing import Iterable, Iterator, Sequence


class CubeError(ValueError):
    """Raised when cube data violates a structural invariant."""


class FormatError(CubeError):
    """Raised for malformed documents (syntax, not semantics)."""


class RationalSyntaxError(FormatError):
    """Raised for malformed rational literals in the text format."""


# ---------------------------------------------------------------------------
# rationals
#
# Fraction already guarantees the reduced-form invariant (positive
# denominator, gcd 1); we only add the strict text syntax "p/q".

def parse_rational(text: str) -> Fraction:
    """Parse "p/q" (or a bare integer "p") into a Fraction.

    The denominator must be a positive integer and the fraction must
    already be in lowest terms; anything else is rejected so that the
    text format has a unique spelling per value.
    """
    if not isinstance(text, str):
        raise RationalSyntaxError(f"rational must be a string, got {text!r}")
    body = text.strip()
    num_s, sep, den_s = body.partition("/")
    try:
        num = int(num_s)
    except ValueError:
        raise RationalSyntaxError(f"bad numerator in {text!r}") from None
    if not sep:
        return Fraction(num)
    try:
        den = int(den_s)
    except ValueError:
        raise RationalSyntaxError(f"bad denominator in {text!r}") from None
    if den <= 0:
        raise RationalSyntaxError(f"denominator must be positive in {text!r}")
    if gcd(abs(num), den) != 1:
        raise RationalSyntaxError(f"{text!r} is not in lowest terms")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise CubeError(f"cube coordinates must be exact, got float {x!r}")
    return Fraction(x)


# ---------------------------------------------------------------------------
# permutation helpers (0-based value tuples)

def perm_identity(k: int) -> tuple[int, ...]:
    return tuple(range(k))


def perm_compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """(a o b)[i] = a[b[i]]: apply b first, then a."""
    if len(a) != len(b):
        raise CubeError("permutation size mismatch")
    return tuple(a[b[i]] for i in range(len(b)))


def perm_inverse(a: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, v in enumerate(a):
        inv[v] = i
    return tuple(inv)


def check_permutation(a: Sequence[int], k: int | None = None) -> tuple[int, ...]:
    t = tuple(a)
    n = len(t) if k is None else k
    if len(t) != n or sorted(t) != list(range(n)):
        raise CubeError(f"not a permutation of 0..{n - 1}: {t}")
    return t


# ---------------------------------------------------------------------------
# affine increasing maps and little cubes

MINUS_ONE = Fraction(-1)
ONE = Fraction(1)


@dataclass(frozen=True)
class AffineInc:
    """The strictly increasing map x -> scale*x + offset, scale > 0."""

    scale: Fraction
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "scale", _frac(self.scale))
        object.__setattr__(self, "offset", _frac(self.offset))
        if self.scale <= 0:
            raise CubeError(f"affine scale must be positive, got {self.scale}")

    def __call__(self, x) -> Fraction:
        return self.scale * _frac(x) + self.offset

    def compose(self, other: "AffineInc") -> "AffineInc":
        """self after other."""
        return AffineInc(self.scale * other.scale,
                         self.scale * other.offset + self.offset)

    def inverse(self) -> "AffineInc":
        return AffineInc(1 / self.scale, -self.offset / self.scale)

    def image(self) -> tuple[Fraction, Fraction]:
        """The image interval of J = [-1, 1]."""
        return (self(-1), self(1))

    def maps_into_unit(self) -> bool:
        return self.scale + abs(self.offset) <= 1

    def is_identity(self) -> bool:
        return self.scale == 1 and self.offset == 0


AFFINE_IDENTITY = AffineInc(ONE, Fraction(0))


def affine_compose(f: AffineInc, g: AffineInc) -> AffineInc:
    """f o g as maps (g applied first)."""
    return f.compose(g)


@dataclass(frozen=True)
class LittleCube:
    """A product of affine increasing factors, one per axis."""

    factors: tuple[AffineInc, ...]
    images: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise CubeError("a little cube needs at least one factor")
        object.__setattr__(self, "factors", factors)
        # validation and disjointness tests hit the images constantly
        object.__setattr__(self, "images",
                           tuple((f.offset - f.scale, f.offset + f.scale)
                                 for f in factors))

    @property
    def dimension(self) -> int:
        return len(self.factors)

    def maps_into_unit(self) -> bool:
        return all(lo >= -1 and hi <= 1 for lo, hi in self.images)

    def compose(self, other: "LittleCube") -> "LittleCube":
        if self.dimension != other.dimension:
            raise CubeError("cube dimension mismatch in composition")
        return LittleCube(tuple(f.compose(g)
                                for f, g in zip(self.factors, other.factors)))

    def image(self, axis: int) -> tuple[Fraction, Fraction]:
        return self.images[axis]

    def meets_lower_face(self) -> bool:
        return self.images[-1][0] == MINUS_ONE

    def first_factor(self) -> AffineInc:
        return self.factors[0]


def identity_cube(dimension: int) -> LittleCube:
    return LittleCube(tuple(AFFINE_IDENTITY for _ in range(dimension)))


def cube_from_intervals(*intervals) -> LittleCube:
    """Build a cube whose axis-i image is the i-th (lo, hi) interval."""
    factors = []
    for lo, hi in intervals:
        lo, hi = _frac(lo), _frac(hi)
        if lo >= hi:
            raise CubeError(f"empty interval ({lo}, {hi})")
        scale = (hi - lo) / 2
        offset = (hi + lo) / 2
        factors.append(AffineInc(scale, offset))
    return LittleCube(tuple(factors))


def almost_disjoint(a: LittleCube, b: LittleCube) -> bool:
    """True iff the open image boxes of a and b are disjoint.

    Equivalent to the open image intervals being disjoint along at least
    one axis; shared boundary points do not count as overlap.
    """
    if a.dimension != b.dimension:
        raise CubeError("dimension mismatch in almost_disjoint")
    for (alo, ahi), (blo, bhi) in zip(a.images, b.images):
        if ahi <= blo or bhi <= alo:
            return True
    return False


def meets_lower_face(a: LittleCube) -> bool:
    return a.meets_lower_face()


# ---------------------------------------------------------------------------
# configurations

class Mode(str, enum.Enum):
    """Validation level of a configuration, weakest first."""

    OVERLAPPING = "overlapping"
    DISJOINT = "disjoint"
    LOWERFACE = "lowerface"

    @property
    def level(self) -> int:
        return _MODE_LEVEL[self]


_MODE_LEVEL = {Mode.OVERLAPPING: 0, Mode.DISJOINT: 1, Mode.LOWERFACE: 2}

# names used by the JSON text format
_MODE_JSON = {Mode.OVERLAPPING: "over", Mode.DISJOINT: "disjoint",
              Mode.LOWERFACE: "lowerface"}
_MODE_FROM_JSON = {v: k for k, v in _MODE_JSON.items()}


@dataclass(frozen=True)
class CubeConfig:
    """An ordered configuration of little cubes of a fixed dimension."""

    dimension: int
    cubes: tuple[LittleCube, ...]
    mode: Mode = Mode.DISJOINT

    def __post_init__(self):
        object.__setattr__(self, "cubes", tuple(self.cubes))
        object.__setattr__(self, "mode", Mode(self.mode))
        self.validate()

    @property
    def arity(self) -> int:
        return len(self.cubes)

    def validate(self) -> None:
        if self.dimension < 1:
            raise CubeError("dimension must be >= 1")
        for i, cube in enumerate(self.cubes):
            if cube.dimension != self.dimension:
                raise CubeError(f"cube {i + 1} has dimension {cube.dimension}, "
                                f"expected {self.dimension}")
            if not cube.maps_into_unit():
                raise CubeError(f"cube {i + 1} does not map J^n into J^n")
        if self.mode.level >= Mode.DISJOINT.level:
            for i in range(len(self.cubes)):
                for j in range(i + 1, len(self.cubes)):
                    if not almost_disjoint(self.cubes[i], self.cubes[j]):
                        raise CubeError(
                            f"cubes {i + 1} and {j + 1} are not almost disjoint")
        if self.mode is Mode.LOWERFACE:
            for i, cube in enumerate(self.cubes):
                if not cube.meets_lower_face():
                    raise CubeError(f"cube {i + 1} misses the lower face")

    def with_mode(self, mode: Mode) -> "CubeConfig":
        return CubeConfig(self.dimension, self.cubes, mode)


def unit_config(dimension: int, mode: Mode = Mode.LOWERFACE) -> CubeConfig:
    return CubeConfig(dimension, (identity_cube(dimension),), mode)


def empty_config(dimension: int, mode: Mode = Mode.LOWERFACE) -> CubeConfig:
    return CubeConfig(dimension, (), mode)


def cube_compose_at(left: CubeConfig, i: int, right: CubeConfig) -> CubeConfig:
    """Operadic substitution of `right` into the i-th cube of `left` (1-based).

    The substituted cubes are left.cubes[i-1] composed with each cube of
    `right`; arity 0 on the right simply discards the i-th cube.  The
    result carries the weakest of the two modes and is revalidated.
    """
    if left.dimension != right.dimension:
        raise CubeError("dimension mismatch in composition")
    if not 1 <= i <= left.arity:
        raise CubeError(f"composition index {i} out of range 1..{left.arity}")
    host = left.cubes[i - 1]
    grafted = tuple(host.compose(p) for p in right.cubes)
    cubes = left.cubes[:i - 1] + grafted + left.cubes[i:]
    mode = left.mode if left.mode.level <= right.mode.level else right.mode
    return CubeConfig(left.dimension, cubes, mode)


def cube_sigma(config: CubeConfig, sigma: Sequence[int]) -> CubeConfig:
    """Right symmetric action: cube at position i becomes cube sigma[i]."""
    sigma = check_permutation(sigma, config.arity)
    return CubeConfig(config.dimension,
                      tuple(config.cubes[sigma[i]] for i in range(config.arity)),
                      config.mode)


def config_equal(a: CubeConfig, b: CubeConfig) -> bool:
    """Structural equality of configurations (modes ignored)."""
    return (a.dimension == b.dimension and a.cubes == b.cubes)


# ---------------------------------------------------------------------------
# projection, heights and the composition order on planar configurations

def projection_pi(config: CubeConfig) -> CubeConfig:
    """Forget heights: keep each 2-cube's first factor as a 1-cube.

    The projections may overlap even when the input is disjoint, so the
    result is declared overlapping; revalidate with `with_mode` if a
    stronger guarantee is needed.
    """
    if config.dimension != 2:
        raise CubeError("projection_pi needs a 2-dimensional configuration")
    ones = tuple(LittleCube((c.factors[0],)) for c in config.cubes)
    return CubeConfig(1, ones, Mode.OVERLAPPING)


def heights_t(config: CubeConfig) -> list[Fraction]:
    """Each 2-cube's second factor evaluated at -1 (its floor height)."""
    if config.dimension != 2:
        raise CubeError("heights_t needs a 2-dimensional configuration")
    return [c.factors[1](-1) for c in config.cubes]


@dataclass(frozen=True)
class PartialOrderDag:
    """Transitive, acyclic strict order on cube indices (0-based)."""

    size: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        for i, j in self.edges:
            if (j, i) in self.edges or i == j:
                raise CubeError("relation is not a strict order")

    def less(self, i: int, j: int) -> bool:
        return (i, j) in self.edges

    def comparable(self, i: int, j: int) -> bool:
        return (i, j) in self.edges or (j, i) in self.edges

    def reversed(self) -> "PartialOrderDag":
        return PartialOrderDag(self.size,
                               frozenset((j, i) for i, j in self.edges))

    def linear_extensions(self) -> Iterator[tuple[int, ...]]:
        """Yield all topological orders, lexicographically smallest first."""
        succs = [set() for _ in range(self.size)]
        indeg = [0] * self.size
        for i, j in self.edges:
            succs[i].add(j)
        # only cover edges matter for counting indegree decrements, but
        # using the full transitive relation is just as correct
        for i, j in self.edges:
            indeg[j] += 1
        order: list[int] = []

        def emit() -> Iterator[tuple[int, ...]]:
            if len(order) == self.size:
                yield tuple(order)
                return
            for v in range(self.size):
                if indeg[v] == 0 and v not in order:
                    order.append(v)
                    for w in succs[v]:
                        indeg[w] -= 1
                    yield from emit()
                    for w in succs[v]:
                        indeg[w] += 1
                    order.pop()

        yield from emit()


def _transitive_closure(size: int, pairs: set[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    reach = [[False] * size for _ in range(size)]
    for i, j in pairs:
        reach[i][j] = True
    for k in range(size):
        rk = reach[k]
        for i in range(size):
            if reach[i][k]:
                ri = reach[i]
                for j in range(size):
                    if rk[j]:
                        ri[j] = True
    return frozenset((i, j) for i in range(size) for j in range(size) if reach[i][j])


def _open_overlap(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> bool:
    return a[1] > b[0] and b[1] > a[0]


def partial_order(config: CubeConfig) -> PartialOrderDag:
    """Order generated by "strictly lower floor and overlapping x-shadow".

    Defined for valid disjoint 2-dimensional configurations.  Acyclicity
    is automatic: floors strictly increase along generating edges.
    """
    if config.dimension != 2:
        raise CubeError("partial_order needs a 2-dimensional configuration")
    if config.mode.level < Mode.DISJOINT.level:
        raise CubeError("partial_order needs a disjoint configuration")
    heights = heights_t(config)
    shadows = [c.image(0) for c in config.cubes]
    generating = set()
    k = config.arity
    for i in range(k):
        for j in range(k):
            if i != j and heights[i] < heights[j] and _open_overlap(shadows[i], shadows[j]):
                generating.add((i, j))
    return PartialOrderDag(k, _transitive_closure(k, generating))


def ordering_permutations(config: CubeConfig, direction: str = "standard"
                          ) -> Iterator[tuple[int, ...]]:
    """All composition orders compatible with the height order.

    A permutation is reported as the tuple (sigma(1), ..., sigma(k)) of
    0-based cube indices; position i holds the i-th cube to list.  The
    standard direction lists lower cubes first; "reverse" lists them
    last.  The first tuple yielded is the lexicographically smallest,
    which is what `canonical_ordering` returns.
    """
    dag = partial_order(config)
    if direction == "reverse":
        dag = dag.reversed()
    elif direction != "standard":
        raise CubeError(f"unknown direction {direction!r}")
    return dag.linear_extensions()


def canonical_ordering(config: CubeConfig, direction: str = "standard") -> tuple[int, ...]:
    return next(iter(ordering_permutations(config, direction)))


def brute_force_orderings(config: CubeConfig, direction: str = "standard"
                          ) -> list[tuple[int, ...]]:
    """Filter all arity! permutations by the non-decreasing condition.

    Independent oracle for `ordering_permutations`: a permutation
    qualifies iff no later-listed cube is below an earlier-listed one.
    """
    dag = partial_order(config)
    if direction == "reverse":
        dag = dag.reversed()
    out = []
    for perm in _all_permutations(range(config.arity)):
        if all(not dag.less(perm[b], perm[a])
               for a in range(len(perm)) for b in range(a + 1, len(perm))):
            out.append(perm)
    return out


# ---------------------------------------------------------------------------
# colors and the four-colored operad

class Color(str, enum.Enum):
    O = "o"
    UP = "up"
    DOWN = "down"
    UPDOWN = "updown"

    @property
    def pretty(self) -> str:
        return _COLOR_PRETTY[self]


_COLOR_PRETTY = {Color.O: "o", Color.UP: "↑", Color.DOWN: "↓",
                 Color.UPDOWN: "↕"}
NON_O_COLORS = (Color.UP, Color.DOWN, Color.UPDOWN)


def splice_colors(t: Sequence[Color], i: int, u: Sequence[Color]) -> tuple[Color, ...]:
    """The color tuple of a composition at input i (1-based)."""
    if not 1 <= i <= len(t):
        raise CubeError(f"splice index {i} out of range 1..{len(t)}")
    return tuple(t[:i - 1]) + tuple(u) + tuple(t[i:])


@dataclass(frozen=True)
class SclReport:
    """Outcome of validating a colored element; empty violations = valid."""

    ok: bool
    violations: tuple[str, ...] = ()

    def raise_if_invalid(self):
        if not self.ok:
            raise CubeError("; ".join(self.violations))


@dataclass(frozen=True)
class SclElement:
    """A planar cube configuration with one color per cube and an output color.

    With output o, each o-cube must meet the lower face and be almost
    disjoint from every other cube, and for each non-o color the cubes of
    that color must be pairwise almost disjoint.  With a non-o output the
    element is just a disjoint planar configuration, monochromatic in the
    output color.
    """

    input_colors: tuple[Color, ...]
    output_color: Color
    config: CubeConfig

    def __post_init__(self):
        object.__setattr__(self, "input_colors",
                           tuple(Color(c) for c in self.input_colors))
        object.__setattr__(self, "output_color", Color(self.output_color))
        scl_validate(self).raise_if_invalid()
        # normalize the declared mode: non-o elements are disjoint planar
        # configurations, o-output elements live in the overlapping operad
        wanted = Mode.DISJOINT if self.output_color is not Color.O else Mode.OVERLAPPING
        if self.config.mode is not wanted:
            object.__setattr__(self, "config", self.config.with_mode(wanted))

    @property
    def arity(self) -> int:
        return len(self.input_colors)


def scl_validate_parts(input_colors: Sequence[Color], output_color: Color,
                       config: CubeConfig) -> SclReport:
    violations = []
    colors = tuple(Color(c) for c in input_colors)
    output = Color(output_color)
    if config.dimension != 2:
        violations.append(f"configuration must be 2-dimensional, got {config.dimension}")
        return SclReport(False, tuple(violations))
    if len(colors) != config.arity:
        violations.append(f"{len(colors)} colors for {config.arity} cubes")
        return SclReport(False, tuple(violations))
    if output is not Color.O:
        bad = [str(i + 1) for i, c in enumerate(colors) if c is not output]
        if bad:
            violations.append(
                f"output {output.value} admits only {output.value}-colored "
                f"inputs (empty component otherwise); cubes {', '.join(bad)} differ")
        for i in range(config.arity):
            for j in range(i + 1, config.arity):
                if not almost_disjoint(config.cubes[i], config.cubes[j]):
                    violations.append(f"cubes {i + 1} and {j + 1} are not almost disjoint")
        return SclReport(not violations, tuple(violations))
    # output o: clause-by-clause checks on an overlapping planar config
    for i, c in enumerate(colors):
        if c is Color.O and not config.cubes[i].meets_lower_face():
            violations.append(f"o-cube {i + 1} misses the lower face")
    for i in range(config.arity):
        for j in range(i + 1, config.arity):
            pair_colors = (colors[i], colors[j])
            if Color.O in pair_colors or colors[i] == colors[j]:
                if not almost_disjoint(config.cubes[i], config.cubes[j]):
                    violations.append(
                        f"cubes {i + 1} and {j + 1} ({pair_colors[0].value}, "
                        f"{pair_colors[1].value}) are not almost disjoint")
    return SclReport(not violations, tuple(violations))


def scl_validate(element: SclElement) -> SclReport:
    return scl_validate_parts(element.input_colors, element.output_color,
                              element.config)


def scl_unit(color: Color) -> SclElement:
    return SclElement((Color(color),), Color(color),
                      CubeConfig(2, (identity_cube(2),), Mode.OVERLAPPING))


def scl_compose_at(a: SclElement, i: int, b: SclElement) -> SclElement:
    """Operadic composition of colored elements at input i (1-based)."""
    if not 1 <= i <= a.arity:
        raise CubeError(f"composition index {i} out of range 1..{a.arity}")
    if b.output_color is not a.input_colors[i - 1]:
        raise CubeError(
            f"color mismatch: input {i} wants {a.input_colors[i - 1].value}, "
            f"got output {b.output_color.value}")
    colors = splice_colors(a.input_colors, i, b.input_colors)
    config = cube_compose_at(a.config.with_mode(Mode.OVERLAPPING), i,
                             b.config.with_mode(Mode.OVERLAPPING))
    # valid elements always compose to valid elements; the constructor
    # revalidates and a failure here means the inputs were corrupted
    return SclElement(colors, a.output_color, config)


def scl_sigma(element: SclElement, sigma: Sequence[int]) -> SclElement:
    sigma = check_permutation(sigma, element.arity)
    return SclElement(tuple(element.input_colors[sigma[i]] for i in range(element.arity)),
                      element.output_color,
                      cube_sigma(element.config, sigma))


# ---------------------------------------------------------------------------
# color sorting

def color_sort(colors: Sequence[Color]) -> dict[Color, tuple[int, ...]]:
    """Canonical color-sorting maps: positions of each color, increasing.

    Returns 0-based input positions.  The four tuples are disjoint and
    cover range(len(colors)).
    """
    out: dict[Color, list[int]] = {c: [] for c in Color}
    for pos, c in enumerate(colors):
        out[Color(c)].append(pos)
    return {c: tuple(v) for c, v in out.items()}


def restrict_config(config: CubeConfig, positions: Sequence[int],
                    mode: Mode) -> CubeConfig:
    """Keep only the cubes at the given 0-based positions."""
    return CubeConfig(config.dimension,
                      tuple(config.cubes[p] for p in positions), mode)


def scl_restrict(element: SclElement, color: Color) -> CubeConfig:
    """The sub-configuration of cubes with the given color.

    Same-colored cubes of a valid element are pairwise almost disjoint,
    so the result validates in disjoint mode.
    """
    positions = color_sort(element.input_colors)[Color(color)]
    return restrict_config(element.config, positions, Mode.DISJOINT)


# ---------------------------------------------------------------------------
# connected-component labels

@dataclass(frozen=True)
class Pi0Class:
    """Label of a configuration's connected component.

    For interval configurations the label is the ranking permutation:
    `perm[i]` is the spatial position (0-based, left to right) of cube
    i.  Planar monochromatic components are single points.
    """

    kind: str  # "point" or "permutation"
    perm: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("point", "permutation"):
            raise CubeError(f"unknown component kind {self.kind!r}")
        if self.kind == "permutation":
            check_permutation(self.perm)

    @staticmethod
    def point() -> "Pi0Class":
        return Pi0Class("point")

    @staticmethod
    def of_ranking(perm: Sequence[int]) -> "Pi0Class":
        return Pi0Class("permutation", tuple(perm))


def _ranking_by_left_endpoint(cubes: Sequence[LittleCube]) -> tuple[int, ...]:
    lefts = [c.image(0)[0] for c in cubes]
    order = sorted(range(len(cubes)), key=lambda i: lefts[i])
    rank = [0] * len(cubes)
    for pos, idx in enumerate(order):
        rank[idx] = pos
    return tuple(rank)


def pi0_class(config: CubeConfig) -> Pi0Class:
    """Component label of a disjoint configuration.

    Interval configurations are labeled by the ranking permutation of
    their left endpoints; disjoint planar configurations are connected,
    hence a point.
    """
    if config.mode.level < Mode.DISJOINT.level:
        raise CubeError("pi0_class needs a disjoint configuration")
    if config.dimension == 1:
        return Pi0Class.of_ranking(_ranking_by_left_endpoint(config.cubes))
    return Pi0Class.point()


def pi0_class_scl(element: SclElement) -> Pi0Class:
    """Component label of a colored element.

    Non-o outputs are monochromatic planar configurations, hence points;
    with output o the label is the ranking of the o-cubes by the left
    endpoints of their x-shadows.
    """
    if element.output_color is not Color.O:
        return Pi0Class.point()
    o_positions = color_sort(element.input_colors)[Color.O]
    return Pi0Class.of_ranking(
        _ranking_by_left_endpoint([element.config.cubes[p] for p in o_positions]))


# ---------------------------------------------------------------------------
# text format

def cube_to_json(cube: LittleCube) -> list[list[str]]:
    return [[format_rational(f.scale), format_rational(f.offset)]
            for f in cube.factors]


def cube_from_json(data) -> LittleCube:
    if not isinstance(data, list) or not data:
        raise CubeError(f"cube must be a non-empty list of factors, got {data!r}")
    factors = []
    for entry in data:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise CubeError(f"factor must be a [scale, offset] pair, got {entry!r}")
        scale = parse_rational(entry[0])
        offset = parse_rational(entry[1])
        if scale <= 0:
            raise CubeError(f"scale must be positive, got {scale}")
        factors.append(AffineInc(scale, offset))
    return LittleCube(tuple(factors))


def config_to_json(config: CubeConfig) -> dict:
    return {
        "dim": config.dimension,
        "mode": _MODE_JSON[config.mode],
        "cubes": [cube_to_json(c) for c in config.cubes],
    }


def config_from_json(data) -> CubeConfig:
    if not isinstance(data, dict):
        raise CubeError("configuration document must be a JSON object")
    try:
        dim = data["dim"]
        mode_name = data["mode"]
        cubes_data = data["cubes"]
    except KeyError as missing:
        raise CubeError(f"missing key {missing} in configuration") from None
    if mode_name not in _MODE_FROM_JSON:
        raise CubeError(f"unknown mode {mode_name!r}")
    if not isinstance(dim, int) or dim < 1:
        raise CubeError(f"bad dimension {dim!r}")
    cubes = tuple(cube_from_json(c) for c in cubes_data)
    return CubeConfig(dim, cubes, _MODE_FROM_JSON[mode_name])


def scl_to_json(element: SclElement) -> dict:
    doc = config_to_json(element.config)
    doc["colors"] = [c.value for c in element.input_colors]
    doc["output"] = element.output_color.value
    return doc


def scl_from_json(data) -> SclElement:
    config = config_from_json(data)
    try:
        colors = tuple(Color(c) for c in data["colors"])
        output = Color(data["output"])
    except KeyError as missing:
        raise CubeError(f"missing key {missing} in colored element") from None
    except ValueError as bad:
        raise CubeError(str(bad)) from None
    return SclElement(colors, output, config)


def dumps_config(config: CubeConfig) -> str:
    return json.dumps(config_to_json(config), sort_keys=True, indent=2) + "\n"


def dumps_scl(element: SclElement) -> str:
    return json.dumps(scl_to_json(element), sort_keys=True, indent=2) + "\n"
