"""Symbolic layer: component operads and normal-form monoids.

Connected components of interval configurations are permutations, of
planar configurations single points.  This module implements those
component operads (`ComClass`, `AsClass`, `SclClass`), the free
algebras they generate, and the concrete normal-form monoids for
isotopy classes of knots and 2-strand string links:

* a knot class is a multiset of prime labels (free commutative monoid),
* a link class is a sequence of noncentral prime labels, three knot
  multisets for the split/parallel central parts, and an integer braid
  coordinate.

Prime labels are opaque strings over user-declared alphabets; nothing
here inspects geometry.  Permutations are rankings as in `cubes`:
`rank[i]` is the spatial position of input i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations as _all_permutations
from typing import Iterable, Iterator, Mapping, Sequence

from .cubes import (Color, NON_O_COLORS, check_permutation, perm_compose,
                    perm_identity, perm_inverse, splice_colors)


class WordError(ValueError):
    """Raised for malformed words or alphabet violations."""


_LABEL_RE = re.compile(r"[A-Za-z0-9_'+-]+\Z")


def _check_label(label: str, alphabet: frozenset[str] | None) -> str:
    if not isinstance(label, str) or not _LABEL_RE.match(label):
        raise WordError(f"bad label {label!r}")
    if alphabet is not None and label not in alphabet:
        raise WordError(f"unknown label {label!r}")
    return label


def _merge_alphabets(a: frozenset[str] | None, b: frozenset[str] | None
                     ) -> frozenset[str] | None:
    if a is not None and b is not None and a != b:
        raise WordError("operands use different alphabets")
    return a if a is not None else b


# ---------------------------------------------------------------------------
# knot words: free commutative monoid on prime labels

@dataclass(frozen=True)
class KnotWord:
    """A multiset of prime-knot labels; order never matters."""

    labels: tuple[str, ...] = ()
    alphabet: frozenset[str] | None = None

    def __post_init__(self):
        labels = tuple(sorted(self.labels))
        for lab in labels:
            _check_label(lab, self.alphabet)
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.labels)

    def __str__(self):
        return "{" + ",".join(self.labels) + "}"

    def is_unit(self) -> bool:
        return not self.labels


def knot_mul(a: KnotWord, b: KnotWord) -> KnotWord:
    """Multiset union; the connected-sum product on knot classes."""
    return KnotWord(a.labels + b.labels, _merge_alphabets(a.alphabet, b.alphabet))


def parse_knot_word(text: str, alphabet: Iterable[str] | None = None) -> KnotWord:
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise WordError(f"knot word must look like {{a,b}}, got {text!r}")
    inner = body[1:-1].strip()
    labels = tuple(s.strip() for s in inner.split(",")) if inner else ()
    alpha = frozenset(alphabet) if alphabet is not None else None
    return KnotWord(labels, alpha)


# ---------------------------------------------------------------------------
# link normal forms

_CENTRAL_KEYS = {"up": Color.UP, "down": Color.DOWN, "both": Color.UPDOWN,
                 "updown": Color.UPDOWN}
_CENTRAL_PRINT = ((Color.UP, "up"), (Color.DOWN, "down"), (Color.UPDOWN, "both"))


@dataclass(frozen=True)
class LinkNormalForm:
    """Normal form of a string 2-link class.

    `qword` is an ordered sequence of noncentral prime labels (the free
    noncommutative part), the three knot words are the central split and
    double-cable parts, and `braid` counts full twists of the two
    strands around each other.
    """

    qword: tuple[str, ...] = ()
    up: KnotWord = KnotWord()
    down: KnotWord = KnotWord()
    both: KnotWord = KnotWord()
    braid: int = 0

    def __post_init__(self):
        object.__setattr__(self, "qword", tuple(self.qword))
        alpha = self.qalphabet
        for lab in self.qword:
            _check_label(lab, alpha)
        _merge_alphabets(_merge_alphabets(self.up.alphabet, self.down.alphabet),
                         self.both.alphabet)
        if not isinstance(self.braid, int):
            raise WordError(f"braid coordinate must be an integer, got {self.braid!r}")

    # the q-alphabet is not stored; validation happens in parse/mul
    @property
    def qalphabet(self):
        return None

    def central(self, color: Color) -> KnotWord:
        return {Color.UP: self.up, Color.DOWN: self.down,
                Color.UPDOWN: self.both}[Color(color)]

    def is_unit(self) -> bool:
        return (not self.qword and self.up.is_unit() and self.down.is_unit()
                and self.both.is_unit() and self.braid == 0)

    def is_central(self) -> bool:
        """Central elements are exactly those with empty qword."""
        return not self.qword

    def __str__(self):
        qpart = ".".join(self.qword)
        centrals = " ".join(f"{name}:{word}" for color, name in _CENTRAL_PRINT
                            for word in [self.central(color)] if not word.is_unit())
        return f"[{qpart}|{centrals}|{self.braid}]"


LINK_UNIT = LinkNormalForm()


def link_mul(a: LinkNormalForm, b: LinkNormalForm) -> LinkNormalForm:
    """Stacking product: concatenate qwords, merge centrals, add braids."""
    return LinkNormalForm(a.qword + b.qword,
                          knot_mul(a.up, b.up),
                          knot_mul(a.down, b.down),
                          knot_mul(a.both, b.both),
                          a.braid + b.braid)


def phi(color: Color, word: KnotWord) -> LinkNormalForm:
    """Embed a knot class centrally: on the upper strand, the lower one,
    or both strands in parallel."""
    color = Color(color)
    if color is Color.O:
        raise WordError("phi takes a strand color, not o")
    parts = {Color.UP: KnotWord(), Color.DOWN: KnotWord(), Color.UPDOWN: KnotWord()}
    parts[color] = word
    return LinkNormalForm((), parts[Color.UP], parts[Color.DOWN], parts[Color.UPDOWN], 0)


def braid_unit(n: int) -> LinkNormalForm:
    """The invertible link given by n full twists of the two strands."""
    if not isinstance(n, int):
        raise WordError("braid_unit takes an integer")
    return LinkNormalForm((), KnotWord(), KnotWord(), KnotWord(), n)


def parse_link_word(text: str, qalphabet: Iterable[str] | None = None,
                    kalphabet: Iterable[str] | None = None) -> LinkNormalForm:
    """Parse `[q1.q2|up:{3_1} down:{} both:{4_1}|b:-2]`.

    Empty central entries may be omitted and the whole middle field left
    blank; the braid field accepts a bare integer or a `b:` prefix.
    """
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise WordError(f"link word must look like [q|centrals|braid], got {text!r}")
    fields = body[1:-1].split("|")
    if len(fields) != 3:
        raise WordError(f"link word needs two '|' separators, got {text!r}")
    qpart, cpart, bpart = (f.strip() for f in fields)
    qalpha = frozenset(qalphabet) if qalphabet is not None else None
    qword = tuple(_check_label(s.strip(), qalpha)
                  for s in qpart.split(".")) if qpart else ()
    centrals = {Color.UP: KnotWord(), Color.DOWN: KnotWord(), Color.UPDOWN: KnotWord()}
    if cpart:
        for entry in cpart.split():
            key, sep, wordpart = entry.partition(":")
            if not sep or key not in _CENTRAL_KEYS:
                raise WordError(f"bad central entry {entry!r}")
            color = _CENTRAL_KEYS[key]
            word = parse_knot_word(wordpart, kalphabet)
            centrals[color] = knot_mul(centrals[color], word)
    braid_text = bpart[2:] if bpart.startswith("b:") else bpart
    try:
        braid = int(braid_text)
    except ValueError:
        raise WordError(f"bad braid coordinate {bpart!r}") from None
    return LinkNormalForm(qword, centrals[Color.UP], centrals[Color.DOWN],
                          centrals[Color.UPDOWN], braid)


# ---------------------------------------------------------------------------
# component operad elements

def as_compose(sigma: Sequence[int], i: int, tau: Sequence[int]) -> tuple[int, ...]:
    """Block substitution of rankings at input i (1-based).

    Input i of `sigma` is replaced by the whole block of `tau`'s inputs;
    the block lands where input i ranked and is ordered internally by
    `tau`, while the other inputs keep their relative ranks.
    """
    sigma = check_permutation(sigma)
    tau = check_permutation(tau)
    k, m = len(sigma), len(tau)
    if not 1 <= i <= k:
        raise WordError(f"composition index {i} out of range 1..{k}")
    c = i - 1
    base = sigma[c]
    out = [0] * (k + m - 1)
    for j in range(k):
        if j == c:
            continue
        jj = j if j < c else j + m - 1
        out[jj] = sigma[j] + (m - 1 if sigma[j] > base else 0)
    for q in range(m):
        out[c + q] = base + tau[q]
    return tuple(out)


def as_act(sigma: Sequence[int], rho: Sequence[int]) -> tuple[int, ...]:
    """Right symmetric action on rankings: relabel inputs by rho."""
    return perm_compose(sigma, rho)


@dataclass(frozen=True)
class ComClass:
    """The single planar component in each arity."""

    arity: int


@dataclass(frozen=True)
class AsClass:
    """An interval component: the ranking of its inputs."""

    rank: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rank", check_permutation(self.rank))

    @property
    def arity(self) -> int:
        return len(self.rank)


@dataclass(frozen=True)
class SclClass:
    """A component of the colored operad.

    Non-o outputs exist only for monochromatic inputs and are single
    points (`orank` empty); with output o the component is the ranking
    of the o-colored inputs among themselves.
    """

    colors: tuple[Color, ...]
    output: Color
    orank: tuple[int, ...] = ()

    def __post_init__(self):
        colors = tuple(Color(c) for c in self.colors)
        output = Color(self.output)
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "output", output)
        object.__setattr__(self, "orank", tuple(self.orank))
        if output is Color.O:
            n_o = sum(1 for c in colors if c is Color.O)
            check_permutation(self.orank, n_o)
        else:
            if any(c is not output for c in colors):
                raise WordError(
                    f"empty component: output {output.value} with mixed inputs")
            if self.orank:
                raise WordError("monochromatic components carry no permutation")

    @property
    def arity(self) -> int:
        return len(self.colors)

    def o_positions(self) -> tuple[int, ...]:
        return tuple(p for p, c in enumerate(self.colors) if c is Color.O)


def scl_class_compose(a: SclClass, i: int, b: SclClass) -> SclClass:
    """Composition of colored components at input i (1-based)."""
    if not 1 <= i <= a.arity:
        raise WordError(f"composition index {i} out of range 1..{a.arity}")
    if b.output is not a.colors[i - 1]:
        raise WordError(f"color mismatch: input {i} wants {a.colors[i - 1].value}, "
                        f"got {b.output.value}")
    colors = splice_colors(a.colors, i, b.colors)
    if a.output is not Color.O:
        return SclClass(colors, a.output, ())
    if a.colors[i - 1] is Color.O:
        slot = sum(1 for c in a.colors[:i - 1] if c is Color.O)
        orank = as_compose(a.orank, slot + 1, b.orank)
    else:
        orank = a.orank
    return SclClass(colors, Color.O, orank)


def scl_class_sigma(a: SclClass, sigma: Sequence[int]) -> SclClass:
    """Right symmetric action: relabel the inputs of a component."""
    sigma = check_permutation(sigma, a.arity)
    colors = tuple(a.colors[sigma[p]] for p in range(a.arity))
    if a.output is not Color.O:
        return SclClass(colors, a.output, ())
    old_slot = {}
    seen = 0
    for p, c in enumerate(a.colors):
        if c is Color.O:
            old_slot[p] = seen
            seen += 1
    orank = tuple(a.orank[old_slot[sigma[p]]]
                  for p in range(a.arity) if colors[p] is Color.O)
    return SclClass(colors, Color.O, orank)


# ---------------------------------------------------------------------------
# a uniform wrapper so free algebras and checks can stay generic

COM, AS, PI0SCL = "Com", "As", "Pi0SCL"


class Pi0Operad:
    """Dispatch wrapper over the three component operads."""

    def __init__(self, kind: str):
        if kind not in (COM, AS, PI0SCL):
            raise WordError(f"unknown operad kind {kind!r}")
        self.kind = kind

    def unit(self, color: Color = Color.O):
        if self.kind == COM:
            return ComClass(1)
        if self.kind == AS:
            return AsClass((0,))
        color = Color(color)
        orank = (0,) if color is Color.O else ()
        return SclClass((color,), color, orank)

    def compose(self, a, i: int, b):
        if self.kind == COM:
            if not 1 <= i <= a.arity:
                raise WordError(f"composition index {i} out of range 1..{a.arity}")
            return ComClass(a.arity + b.arity - 1)
        if self.kind == AS:
            return AsClass(as_compose(a.rank, i, b.rank))
        return scl_class_compose(a, i, b)

    def act_sigma(self, a, sigma: Sequence[int]):
        if self.kind == COM:
            check_permutation(sigma, a.arity)
            return a
        if self.kind == AS:
            return AsClass(as_act(a.rank, sigma))
        return scl_class_sigma(a, sigma)

    def input_colors(self, a) -> tuple[Color, ...]:
        if self.kind == PI0SCL:
            return a.colors
        return tuple(Color.O for _ in range(a.arity))

    def components(self, arity: int, colors: Sequence[Color] | None = None,
                   output: Color = Color.O) -> Iterator:
        """Enumerate all components with the given input profile."""
        if self.kind == COM:
            yield ComClass(arity)
            return
        if self.kind == AS:
            for rank in _all_permutations(range(arity)):
                yield AsClass(rank)
            return
        colors = tuple(Color(c) for c in colors or ())
        output = Color(output)
        if output is not Color.O:
            if all(c is output for c in colors):
                yield SclClass(colors, output, ())
            return
        n_o = sum(1 for c in colors if c is Color.O)
        for orank in _all_permutations(range(n_o)):
            yield SclClass(colors, Color.O, orank)


# ---------------------------------------------------------------------------
# free algebras

@dataclass(frozen=True)
class ComWord:
    """Free commutative word: a multiset of generator labels."""

    letters: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(sorted(self.letters)))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return "{" + ",".join(self.letters) + "}"


@dataclass(frozen=True)
class AsWord:
    """Free noncommutative word: a sequence of generator labels."""

    letters: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return ".".join(self.letters) if self.letters else "1"


@dataclass(frozen=True)
class OElement:
    """An o-colored element of the free colored algebra.

    The sequence coordinate multiplies freely; the three commutative
    coordinates record central factors pushed in from the strand colors.
    """

    oword: tuple[str, ...] = ()
    up: tuple[str, ...] = ()
    down: tuple[str, ...] = ()
    both: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "oword", tuple(self.oword))
        object.__setattr__(self, "up", tuple(sorted(self.up)))
        object.__setattr__(self, "down", tuple(sorted(self.down)))
        object.__setattr__(self, "both", tuple(sorted(self.both)))

    def com_part(self, color: Color) -> tuple[str, ...]:
        return {Color.UP: self.up, Color.DOWN: self.down,
                Color.UPDOWN: self.both}[Color(color)]

    def total_length(self) -> int:
        return len(self.oword) + len(self.up) + len(self.down) + len(self.both)


def _argsort(rank: Sequence[int]) -> tuple[int, ...]:
    return perm_inverse(tuple(rank))


class FreeAlgebra:
    """The free algebra over a component operad on labeled generators.

    For the commutative and interval operads the carrier is the free
    commutative / free noncommutative monoid on the generators.  For the
    colored operad the o-carrier is a free sequence over the o-generators
    together with three commutative words, and each strand color carries
    a free commutative monoid that acts on the o-part through its slot.
    """

    def __init__(self, operad: Pi0Operad,
                 generators: Sequence[str] | Mapping[Color, Sequence[str]]):
        self.operad = operad
        if operad.kind == PI0SCL:
            if not isinstance(generators, Mapping):
                raise WordError("colored free algebra needs per-color generators")
            self.generators = {Color(c): tuple(v) for c, v in generators.items()}
            for c in Color:
                self.generators.setdefault(c, ())
        else:
            if isinstance(generators, Mapping):
                raise WordError("uncolored free algebra takes a flat label list")
            self.generators = {Color.O: tuple(generators)}

    # -- construction ------------------------------------------------------

    def unit(self, color: Color = Color.O):
        if self.operad.kind == COM:
            return ComWord()
        if self.operad.kind == AS:
            return AsWord()
        return OElement() if Color(color) is Color.O else ComWord()

    def gen(self, label: str, color: Color = Color.O):
        color = Color(color)
        if label not in self.generators.get(color, ()):
            raise WordError(f"unknown generator {label!r} for color {color.value}")
        if self.operad.kind == COM:
            return ComWord((label,))
        if self.operad.kind == AS:
            return AsWord((label,))
        return OElement((label,)) if color is Color.O else ComWord((label,))

    def mul(self, x, y, color: Color = Color.O):
        """Binary product in the given color's monoid."""
        if self.operad.kind == COM:
            return ComWord(x.letters + y.letters)
        if self.operad.kind == AS:
            return AsWord(x.letters + y.letters)
        color = Color(color)
        if color is Color.O:
            return OElement(x.oword + y.oword, x.up + y.up,
                            x.down + y.down, x.both + y.both)
        return ComWord(x.letters + y.letters)

    # -- operadic action ---------------------------------------------------

    def act(self, component, inputs: Sequence):
        """Evaluate a component of the operad on algebra elements."""
        if self.operad.kind == COM:
            if component.arity != len(inputs):
                raise WordError("arity mismatch")
            letters: tuple[str, ...] = ()
            for w in inputs:
                letters += w.letters
            return ComWord(letters)
        if self.operad.kind == AS:
            if component.arity != len(inputs):
                raise WordError("arity mismatch")
            order = _argsort(component.rank)
            letters = ()
            for p in order:
                letters += inputs[p].letters
            return AsWord(letters)
        return self._act_scl(component, inputs)

    def _act_scl(self, component: SclClass, inputs: Sequence):
        if component.arity != len(inputs):
            raise WordError("arity mismatch")
        if component.output is not Color.O:
            letters = ()
            for w in inputs:
                letters += w.letters
            return ComWord(letters)
        o_pos = component.o_positions()
        oword: tuple[str, ...] = ()
        parts = {Color.UP: (), Color.DOWN: (), Color.UPDOWN: ()}
        for slot in _argsort(component.orank):
            oword += inputs[o_pos[slot]].oword
        for pos, color in enumerate(component.colors):
            if color is Color.O:
                elem = inputs[pos]
                for c in NON_O_COLORS:
                    parts[c] = parts[c] + elem.com_part(c)
            else:
                parts[color] = parts[color] + inputs[pos].letters
        return OElement(oword, parts[Color.UP], parts[Color.DOWN],
                        parts[Color.UPDOWN])

    # -- orbit representatives --------------------------------------------

    def normalize(self, component, gens: Sequence[str]):
        """Map an (operation, generator tuple) pair to its normal form.

        This is the structure map of the free algebra: feed the
        generators, viewed as length-one elements, to the component.
        """
        colors = self.operad.input_colors(component)
        if len(gens) != len(colors):
            raise WordError("generator tuple length mismatch")
        inputs = [self.gen(lab, c) for lab, c in zip(gens, colors)]
        return self.act(component, inputs)


def orbit_canonical(operad: Pi0Operad, component, gens: Sequence[str]):
    """Smallest representative of the symmetric orbit of (component, gens).

    The identification is (a, x) ~ (a sigma, sigma^{-1} x); this scans the
    whole symmetric group, so it is meant for small arities and serves as
    the generic model of the free algebra, independent of the normal
    forms above.
    """
    gens = tuple(gens)
    k = len(gens)
    best = None
    for sigma in _all_permutations(range(k)):
        cand_comp = operad.act_sigma(component, sigma)
        cand_gens = tuple(gens[sigma[i]] for i in range(k))
        key = (repr(cand_comp), cand_gens)
        if best is None or key < best[0]:
            best = (key, (cand_comp, cand_gens))
    return best[1]


# ---------------------------------------------------------------------------
# enumeration helpers for the exhaustive comparisons

def com_words(labels: Sequence[str], length: int) -> Iterator[ComWord]:
    labels = sorted(labels)

    def rec(start: int, left: int, acc: tuple[str, ...]):
        if left == 0:
            yield ComWord(acc)
            return
        for idx in range(start, len(labels)):
            yield from rec(idx, left - 1, acc + (labels[idx],))

    yield from rec(0, length, ())


def as_words(labels: Sequence[str], length: int) -> Iterator[AsWord]:
    def rec(left: int, acc: tuple[str, ...]):
        if left == 0:
            yield AsWord(acc)
            return
        for lab in labels:
            yield from rec(left - 1, acc + (lab,))

    yield from rec(length, ())


def o_elements(gens: Mapping[Color, Sequence[str]], total: int) -> Iterator[OElement]:
    """All o-colored free elements with the given total letter count."""
    for n_o in range(total + 1):
        for rest in _splits(total - n_o, 3):
            for ow in as_words(gens.get(Color.O, ()), n_o):
                for up in com_words(gens.get(Color.UP, ()), rest[0]):
                    for down in com_words(gens.get(Color.DOWN, ()), rest[1]):
                        for both in com_words(gens.get(Color.UPDOWN, ()), rest[2]):
                            yield OElement(ow.letters, up.letters,
                                           down.letters, both.letters)


def _splits(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _splits(total - head, parts - 1):
            yield (head,) + tail


# ---------------------------------------------------------------------------
# components of free algebras over cube configurations
#
# Components of the free algebra built from actual cube configurations
# must biject with the normal forms above.  The comparison is exhaustive
# at small arity: enumerate one configuration per component, label its
# inputs with generators in every possible way, pass to components and
# canonical orbit representatives, and match against the enumerated
# normal forms.

from fractions import Fraction as _F
from itertools import product as _product

from . import cubes as _cubes


@dataclass(frozen=True)
class FreeComparisonReport:
    cases: int
    ok: bool
    mismatches: tuple[str, ...] = ()


def interval_realization(rank: Sequence[int]) -> _cubes.CubeConfig:
    """A disjoint interval configuration whose component is `rank`."""
    rank = check_permutation(rank)
    k = len(rank)
    slots = [_slot_interval(j, k) for j in range(k)]
    cubes = tuple(_cubes.cube_from_intervals(slots[rank[i]]) for i in range(k))
    return _cubes.CubeConfig(1, cubes, _cubes.Mode.DISJOINT)


def planar_realization(arity: int) -> _cubes.CubeConfig:
    """A disjoint side-by-side planar configuration of the given arity."""
    cubes = tuple(_cubes.cube_from_intervals(_slot_interval(j, arity), (0, 1))
                  for j in range(arity))
    return _cubes.CubeConfig(2, cubes, _cubes.Mode.DISJOINT)


def scl_realization(colors: Sequence[Color], orank: Sequence[int]
                    ) -> _cubes.SclElement:
    """A valid colored element whose component is (colors, o, orank).

    All cubes sit in disjoint x-slots; o-cubes occupy the leftmost slots
    in the order prescribed by `orank` and drop to the lower face, the
    rest keep input order and float above it.
    """
    colors = tuple(Color(c) for c in colors)
    k = len(colors)
    o_pos = [p for p, c in enumerate(colors) if c is Color.O]
    orank = check_permutation(orank, len(o_pos))
    slot_of = {}
    for q, p in enumerate(o_pos):
        slot_of[p] = orank[q]
    next_slot = len(o_pos)
    for p, c in enumerate(colors):
        if c is not Color.O:
            slot_of[p] = next_slot
            next_slot += 1
    cubes = []
    for p, c in enumerate(colors):
        xint = _slot_interval(slot_of[p], max(k, 1))
        yint = (-1, 0) if c is Color.O else (0, _F(1, 2))
        cubes.append(_cubes.cube_from_intervals(xint, yint))
    config = _cubes.CubeConfig(2, tuple(cubes), _cubes.Mode.OVERLAPPING)
    element = _cubes.SclElement(colors, Color.O, config)
    assert _cubes.pi0_class_scl(element).perm == tuple(orank)
    return element


def _slot_interval(j: int, k: int) -> tuple[_F, _F]:
    width = _F(2, max(k, 1))
    return (-1 + j * width, -1 + (j + 1) * width)


def pi0_of_free(kind: str, generators, max_arity: int = 3) -> FreeComparisonReport:
    """Check that components of free cube algebras match the normal forms.

    For each arity up to `max_arity`, one configuration per component is
    built, labeled with generators in all possible ways, and sent both
    through the generic orbit quotient and through the normal-form
    structure map.  The report records any failure of the expected
    bijection.
    """
    operad = Pi0Operad(kind)
    algebra = FreeAlgebra(operad, generators)
    mismatches: list[str] = []
    cases = 0

    for arity in range(max_arity + 1):
        orbit_to_normal: dict = {}
        produced = set()
        if kind == AS:
            labelings = list(_product(tuple(generators), repeat=arity))
            for rank in _all_permutations(range(arity)):
                config = interval_realization(rank)
                comp = AsClass(_cubes.pi0_class(config).perm)
                for gens in labelings:
                    cases += 1
                    orbit = orbit_canonical(operad, comp, gens)
                    normal = algebra.normalize(comp, gens)
                    _record(orbit_to_normal, orbit, normal, mismatches)
                    produced.add(normal)
            expected = set(as_words(tuple(generators), arity))
        elif kind == COM:
            labelings = list(_product(tuple(generators), repeat=arity))
            config = planar_realization(arity)
            if _cubes.pi0_class(config).kind != "point":
                mismatches.append(f"arity {arity}: planar class is not a point")
            comp = ComClass(arity)
            for gens in labelings:
                cases += 1
                orbit = orbit_canonical(operad, comp, gens)
                normal = algebra.normalize(comp, gens)
                _record(orbit_to_normal, orbit, normal, mismatches)
                produced.add(normal)
            expected = set(com_words(tuple(generators), arity))
        else:
            gen_map = {Color(c): tuple(v) for c, v in generators.items()}
            for c in Color:
                gen_map.setdefault(c, ())
            expected = set(o_elements(gen_map, arity))
            for colors in _product(tuple(Color), repeat=arity):
                if not all(gen_map[c] for c in colors):
                    continue  # no generators of a required color
                n_o = sum(1 for c in colors if c is Color.O)
                for orank in _all_permutations(range(n_o)):
                    element = scl_realization(colors, orank)
                    comp = SclClass(colors, Color.O,
                                    _cubes.pi0_class_scl(element).perm)
                    for gens in _product(*(gen_map[c] for c in colors)):
                        cases += 1
                        orbit = orbit_canonical(operad, comp, gens)
                        normal = algebra.normalize(comp, gens)
                        _record(orbit_to_normal, orbit, normal, mismatches)
                        produced.add(normal)
        if produced != expected:
            missing = expected - produced
            extra = produced - expected
            mismatches.append(
                f"arity {arity}: {len(missing)} normal forms unreached, "
                f"{len(extra)} unexpected")
        if len(orbit_to_normal) != len(set(orbit_to_normal.values())):
            mismatches.append(f"arity {arity}: orbit map is not injective")

    return FreeComparisonReport(cases, not mismatches, tuple(mismatches))


def _record(mapping: dict, orbit, normal, mismatches: list[str]):
    key = repr(orbit)
    if key in mapping and mapping[key] != normal:
        mismatches.append(f"orbit {key} maps to two normal forms")
    mapping[key] = normal
