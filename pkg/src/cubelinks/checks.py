"""Seeded property-check harness binding the exact and geometric layers.

Each suite runs a fixed number of independent trials from a 64-bit seed;
per-trial generators derive their own rng, so any failure replays from
(suite, seed, trial index) alone.  Reports serialize to JSON lines, one
object per property, with the counterexample payload inline.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice

import numpy as np

from . import catalog
from .cubes import (Color, CubeConfig, Mode, SclElement, check_permutation,
                    config_equal, config_to_json, cube_compose_at,
                    cube_from_intervals, cube_sigma, empty_config,
                    ordering_permutations, partial_order, perm_identity,
                    pi0_class, scl_compose_at, scl_sigma, scl_to_json,
                    scl_validate, splice_colors, unit_config)
from .pi0 import (AS, COM, PI0SCL, FreeAlgebra, LinkNormalForm, Pi0Operad,
                  as_compose, knot_mul, link_mul, o_elements, pi0_of_free)
from .tubes import framing_number, kappa_map, materialize_knot

GEN_DENOMINATOR = 64          # all generated coordinates are multiples of 1/64
_SHRINK_ROUNDS = 5
_TRIES_PER_ROUND = 12


@dataclass(frozen=True)
class TrialConfig:
    seed: int
    trials: int = 100
    max_arity: int = 5
    dimension: int = 2
    tolerance: float = 1e-6

    def __post_init__(self):
        if self.trials < 1 or self.max_arity < 1:
            raise ValueError("trials and max_arity must be >= 1")
        if self.dimension not in (1, 2):
            raise ValueError("dimension must be 1 or 2")


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    trials: int
    counterexample: dict | None = None


@dataclass(frozen=True)
class CheckReport:
    suite: str
    results: tuple[PropertyResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json_lines(self) -> str:
        lines = []
        for r in self.results:
            lines.append(json.dumps({
                "suite": self.suite, "property": r.name, "pass": r.passed,
                "trials": r.trials, "counterexample": r.counterexample,
            }, sort_keys=True))
        return "\n".join(lines) + "\n"


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random((seed & 0xFFFFFFFFFFFFFFFF) * 1_000_003 + trial)


# ---------------------------------------------------------------------------
# generators

def _rand_interval(rng: random.Random, cap_num: int) -> tuple[Fraction, Fraction]:
    """A random (scale, offset) with scale + |offset| <= 1 on the 1/64 grid."""
    a = rng.randint(1, cap_num)
    b = rng.randint(-(GEN_DENOMINATOR - a), GEN_DENOMINATOR - a)
    return Fraction(a, GEN_DENOMINATOR), Fraction(b, GEN_DENOMINATOR)


def _rand_cube(rng, dimension, cap_num, lowerface=False):
    intervals = []
    for axis in range(dimension):
        if lowerface and axis == dimension - 1:
            a = rng.randint(1, cap_num)
            scale = Fraction(a, GEN_DENOMINATOR)
            offset = scale - 1
        else:
            scale, offset = _rand_interval(rng, cap_num)
        intervals.append((offset - scale, offset + scale))
    return cube_from_intervals(*intervals)


def _fallback_config(dimension, arity, mode) -> CubeConfig:
    width = Fraction(2, max(arity, 1))
    cubes = []
    for j in range(arity):
        ivs = [(-1 + j * width, -1 + (j + 1) * width)]
        for _ in range(dimension - 1):
            ivs.append((-1, 0) if mode is Mode.LOWERFACE else (Fraction(-1, 2), 0))
        cubes.append(cube_from_intervals(*ivs))
    return CubeConfig(dimension, tuple(cubes), mode)


def gen_config(rng: random.Random, dimension: int, arity: int,
               mode: Mode = Mode.DISJOINT) -> CubeConfig:
    """Rejection-sample a valid configuration with bounded denominators.

    Cube sizes shrink on every failed round; if randomness keeps
    colliding, a deterministic side-by-side layout ends the search, so
    generation always terminates.
    """
    mode = Mode(mode)
    if arity == 0:
        return empty_config(dimension, mode)
    lf = mode is Mode.LOWERFACE
    for round_ in range(_SHRINK_ROUNDS):
        cap = max(1, GEN_DENOMINATOR // (2 ** (round_ + arity.bit_length())))
        for _ in range(_TRIES_PER_ROUND):
            cubes = tuple(_rand_cube(rng, dimension, cap, lowerface=lf)
                          for _ in range(arity))
            try:
                return CubeConfig(dimension, cubes, mode)
            except Exception:
                continue
        if mode is Mode.OVERLAPPING:
            break  # no constraint can fail twice
    return _fallback_config(dimension, arity, mode)


_GEN_COLORS = (Color.O, Color.UP, Color.DOWN, Color.UPDOWN)


def gen_scl_element(rng: random.Random, max_arity: int,
                    output: Color = Color.O,
                    colors: tuple[Color, ...] | None = None) -> SclElement:
    """A random valid colored element with the given output color."""
    if colors is None:
        arity = rng.randint(0, max_arity)
        if output is Color.O:
            colors = tuple(rng.choice(_GEN_COLORS) for _ in range(arity))
        else:
            colors = (output,) * arity
    arity = len(colors)
    if output is not Color.O:
        return SclElement(colors, output,
                          gen_config(rng, 2, arity, Mode.DISJOINT))
    for round_ in range(_SHRINK_ROUNDS):
        cap = max(1, GEN_DENOMINATOR // (2 ** (round_ + arity.bit_length())))
        for _ in range(_TRIES_PER_ROUND):
            cubes = tuple(_rand_cube(rng, 2, cap, lowerface=(c is Color.O))
                          for c in colors)
            try:
                return SclElement(colors, Color.O,
                                  CubeConfig(2, cubes, Mode.OVERLAPPING))
            except Exception:
                continue
    # deterministic fallback: disjoint slots, o-cubes dropped to the floor
    width = Fraction(2, max(arity, 1))
    cubes = tuple(cube_from_intervals(
        (-1 + j * width, -1 + (j + 1) * width),
        (-1, 0) if colors[j] is Color.O else (0, Fraction(1, 2)))
        for j in range(arity))
    return SclElement(colors, Color.O, CubeConfig(2, cubes, Mode.OVERLAPPING))


def _rand_perm(rng: random.Random, k: int) -> tuple[int, ...]:
    perm = list(range(k))
    rng.shuffle(perm)
    return tuple(perm)


# ---------------------------------------------------------------------------
# suite scaffolding

class _Suite:
    def __init__(self, name: str, cfg: TrialConfig):
        self.name = name
        self.cfg = cfg
        self.results: list[PropertyResult] = []

    def run(self, prop_name: str, trial_fn, trials: int | None = None):
        """trial_fn(rng, trial) returns None on success or a payload dict."""
        n = trials if trials is not None else self.cfg.trials
        for trial in range(n):
            rng = trial_rng(self.cfg.seed, trial)
            payload = trial_fn(rng, trial)
            if payload is not None:
                payload = {"seed": self.cfg.seed, "trial": trial, **payload}
                self.results.append(PropertyResult(prop_name, False, n, payload))
                break
        else:
            self.results.append(PropertyResult(prop_name, True, n))

    def report(self) -> CheckReport:
        return CheckReport(self.name, tuple(self.results))


# ---------------------------------------------------------------------------
# operad axioms, exact

def _compose_for(operad: str, mutate: str | None):
    """Composition closures for the three operads, optionally mutated.

    The only supported mutation swaps the operand order; it exists so
    the harness can prove it would catch a broken composition.
    """
    if operad == "SCL":
        def compose(a, i, b):
            if mutate == "swap-compose" and b.arity >= 1 \
                    and a.output_color is b.input_colors[0]:
                return scl_compose_at(b, 1, a)
            return scl_compose_at(a, i, b)
        return compose

    def compose(a, i, b):
        if mutate == "swap-compose" and b.arity >= 1:
            return cube_compose_at(b, 1, a)
        return cube_compose_at(a, i, b)
    return compose


def _gen_for(operad: str, cfg: TrialConfig):
    if operad == "C1":
        return lambda rng, lo=1: gen_config(rng, 1, rng.randint(lo, cfg.max_arity))
    if operad == "C2":
        return lambda rng, lo=1: gen_config(rng, 2, rng.randint(lo, cfg.max_arity))
    if operad == "SCL":
        return None
    raise ValueError(f"unknown operad {operad!r} (want C1, C2 or SCL)")


def check_operad_axioms(cfg: TrialConfig, operad: str,
                        mutate: str | None = None) -> CheckReport:
    """Unit, associativity, disjoint-supports commutation, equivariance
    and (for the colored operad) color bookkeeping, all exact."""
    suite = _Suite(f"operad-axioms-{operad}", cfg)
    compose = _compose_for(operad, mutate)
    if operad == "SCL":
        _scl_axiom_props(suite, compose, cfg)
        return suite.report()
    gen = _gen_for(operad, cfg)
    dim = 1 if operad == "C1" else 2

    def payload(**kw):
        return {k: config_to_json(v) if isinstance(v, CubeConfig) else v
                for k, v in kw.items()}

    def unit_trial(rng, trial):
        a = gen(rng)
        i = rng.randint(1, a.arity)
        left = compose(a, i, unit_config(dim))
        right = compose(unit_config(dim).with_mode(a.mode), 1, a)
        if not (config_equal(left, a) and config_equal(right, a)):
            return payload(a=a, i=i)
        return None

    def assoc_trial(rng, trial):
        a = gen(rng)
        b = gen(rng)
        c = gen(rng)
        i = rng.randint(1, a.arity)
        j = rng.randint(1, b.arity)
        lhs = compose(compose(a, i, b), i + j - 1, c)
        rhs = compose(a, i, compose(b, j, c))
        if not config_equal(lhs, rhs):
            return payload(a=a, b=b, c=c, i=i, j=j)
        return None

    def commute_trial(rng, trial):
        a = gen(rng, lo=2)
        b = gen(rng)
        c = gen(rng)
        i = rng.randint(1, a.arity - 1)
        j = rng.randint(i + 1, a.arity)
        m = b.arity
        lhs = compose(compose(a, i, b), j + m - 1, c)
        rhs = compose(compose(a, j, c), i, b)
        if not config_equal(lhs, rhs):
            return payload(a=a, b=b, c=c, i=i, j=j)
        return None

    def equivariance_trial(rng, trial):
        a = gen(rng)
        b = gen(rng)
        sigma = _rand_perm(rng, a.arity)
        i = rng.randint(1, a.arity)
        lhs = compose(cube_sigma(a, sigma), i, b)
        tau = as_compose(sigma, i, perm_identity(b.arity))
        rhs = cube_sigma(compose(a, sigma[i - 1] + 1, b), tau)
        if not config_equal(lhs, rhs):
            return payload(a=a, b=b, sigma=list(sigma), i=i)
        return None

    suite.run("unit", unit_trial)
    suite.run("associativity", assoc_trial)
    suite.run("disjoint-commutation", commute_trial)
    suite.run("equivariance", equivariance_trial)
    return suite.report()


def _scl_axiom_props(suite: _Suite, compose, cfg: TrialConfig):
    def gen_o(rng, lo=0):
        return gen_scl_element(rng, cfg.max_arity)

    def gen_matching(rng, color):
        if color is Color.O:
            return gen_scl_element(rng, max(cfg.max_arity - 2, 1))
        return gen_scl_element(rng, max(cfg.max_arity - 2, 1), output=color)

    def payload(**kw):
        return {k: scl_to_json(v) if isinstance(v, SclElement) else v
                for k, v in kw.items()}

    def unit_trial(rng, trial):
        a = gen_scl_element(rng, cfg.max_arity)
        if a.arity == 0:
            return None
        i = rng.randint(1, a.arity)
        from .cubes import scl_unit
        left = compose(a, i, scl_unit(a.input_colors[i - 1]))
        right = compose(scl_unit(a.output_color), 1, a)
        ok = (config_equal(left.config, a.config)
              and left.input_colors == a.input_colors
              and config_equal(right.config, a.config)
              and right.input_colors == a.input_colors)
        return None if ok else payload(a=a, i=i)

    def assoc_trial(rng, trial):
        a = gen_scl_element(rng, cfg.max_arity)
        if a.arity == 0:
            return None
        i = rng.randint(1, a.arity)
        b = gen_matching(rng, a.input_colors[i - 1])
        if b.arity == 0:
            return None
        j = rng.randint(1, b.arity)
        c = gen_matching(rng, b.input_colors[j - 1])
        lhs = compose(compose(a, i, b), i + j - 1, c)
        rhs = compose(a, i, compose(b, j, c))
        ok = (config_equal(lhs.config, rhs.config)
              and lhs.input_colors == rhs.input_colors
              and lhs.output_color is rhs.output_color)
        return None if ok else payload(a=a, b=b, c=c, i=i, j=j)

    def commute_trial(rng, trial):
        a = gen_scl_element(rng, cfg.max_arity)
        if a.arity < 2:
            return None
        i = rng.randint(1, a.arity - 1)
        j = rng.randint(i + 1, a.arity)
        b = gen_matching(rng, a.input_colors[i - 1])
        c = gen_matching(rng, a.input_colors[j - 1])
        m = b.arity
        lhs = compose(compose(a, i, b), j + m - 1, c)
        rhs = compose(compose(a, j, c), i, b)
        ok = (config_equal(lhs.config, rhs.config)
              and lhs.input_colors == rhs.input_colors)
        return None if ok else payload(a=a, b=b, c=c, i=i, j=j)

    def equivariance_trial(rng, trial):
        a = gen_scl_element(rng, cfg.max_arity)
        if a.arity == 0:
            return None
        sigma = _rand_perm(rng, a.arity)
        i = rng.randint(1, a.arity)
        b = gen_matching(rng, a.input_colors[sigma[i - 1]])
        lhs = compose(scl_sigma(a, sigma), i, b)
        tau = as_compose(sigma, i, perm_identity(b.arity))
        rhs = scl_sigma(compose(a, sigma[i - 1] + 1, b), tau)
        ok = (config_equal(lhs.config, rhs.config)
              and lhs.input_colors == rhs.input_colors)
        return None if ok else payload(a=a, b=b, sigma=list(sigma), i=i)

    def bookkeeping_trial(rng, trial):
        a = gen_scl_element(rng, cfg.max_arity)
        if a.arity == 0:
            return None
        i = rng.randint(1, a.arity)
        b = gen_matching(rng, a.input_colors[i - 1])
        combined = compose(a, i, b)
        for s in Color:
            want = (sum(1 for c in a.input_colors if c is s)
                    + sum(1 for c in b.input_colors if c is s)
                    - (1 if a.input_colors[i - 1] is s else 0))
            got = sum(1 for c in combined.input_colors if c is s)
            if want != got:
                return payload(a=a, b=b, i=i, color=s.value)
        return None

    suite.run("unit", unit_trial)
    suite.run("associativity", assoc_trial)
    suite.run("disjoint-commutation", commute_trial)
    suite.run("equivariance", equivariance_trial)
    suite.run("color-bookkeeping", bookkeeping_trial)


# ---------------------------------------------------------------------------
# ordering combinatorics

def check_ordering_permutations(cfg: TrialConfig) -> CheckReport:
    """Linear-extension enumeration against the brute-force filter."""
    from .cubes import brute_force_orderings
    suite = _Suite("ordering-permutations", cfg)

    def trial(rng, index):
        arity = rng.randint(1, min(cfg.max_arity, 6))
        config = gen_config(rng, 2, arity, Mode.DISJOINT)
        fast = sorted(ordering_permutations(config))
        slow = sorted(brute_force_orderings(config))
        if fast != slow:
            return {"config": config_to_json(config)}
        if list(ordering_permutations(config))[0] != min(fast):
            return {"config": config_to_json(config),
                    "note": "canonical ordering is not lexicographically least"}
        return None

    suite.run("linear-extensions-match-brute-force", trial)
    return suite.report()


# ---------------------------------------------------------------------------
# geometric well-definedness

def check_kappa_well_defined(cfg: TrialConfig, mutate: str | None = None) -> CheckReport:
    """All composition orders of the knot action agree on catalog knots."""
    suite = _Suite("kappa-well-defined", cfg)
    knots = [catalog.knot("trefoil"), catalog.knot("figure_eight")]
    ts = np.linspace(-1.0, 1.0, 21)
    P = np.zeros((2 * ts.size, 3))
    P[:ts.size, 0] = ts
    P[ts.size:, 0] = ts
    P[ts.size:, 2] = 1.0  # core and pushoff lines

    def trial(rng, index):
        arity = rng.randint(2, min(cfg.max_arity, 4))
        config = gen_config(rng, 2, arity, Mode.DISJOINT)
        orders = list(islice(ordering_permutations(config), 8))
        if len(orders) < 2:
            return None  # vacuous: unique extension
        inputs = [knots[rng.randint(0, len(knots) - 1)] for _ in range(arity)]
        if mutate == "scramble-order":
            # deliberately compare against an invalid order to prove the
            # check can fail
            bad = tuple(reversed(range(arity)))
            if bad not in orders:
                orders = [orders[0], bad]
        maps = [kappa_map(config, inputs, order=o) for o in orders]
        base = maps[0].points(P)
        for other, order in zip(maps[1:], orders[1:]):
            dev = float(np.max(np.abs(base - other.points(P))))
            if dev > cfg.tolerance:
                return {"config": config_to_json(config),
                        "orders": [list(orders[0]), list(order)],
                        "deviation": dev}
        w = [framing_number(materialize_knot(m)) for m in maps[:2]]
        if w[0] != w[1]:
            return {"config": config_to_json(config), "framings": w}
        return None

    suite.run("orders-agree", trial, trials=min(cfg.trials, 60))
    return suite.report()


# ---------------------------------------------------------------------------
# component structure theorems

def check_pi0_theorems(cfg: TrialConfig, mutate: str | None = None) -> CheckReport:
    """Freeness comparisons plus the link-monoid model identification."""
    suite = _Suite("pi0-structure", cfg)

    def freeness_trial(rng, index):
        reports = [
            pi0_of_free(AS, ("a", "b"), max_arity=3),
            pi0_of_free(COM, ("a", "b"), max_arity=3),
            pi0_of_free(PI0SCL, {Color.O: ("q1", "q2"), Color.UP: ("k",),
                                 Color.DOWN: ("k",), Color.UPDOWN: ("k",)},
                        max_arity=3),
        ]
        for rep in reports:
            if not rep.ok:
                return {"mismatches": list(rep.mismatches)}
        return None

    def monoid_model_trial(rng, index):
        bad = link_monoid_model_mismatches(
            qlabels=("q1", "q2"), klabels=("k",), max_len=3,
            mutate=mutate)
        if bad:
            return {"mismatches": bad[:5]}
        return None

    suite.run("free-algebra-components", freeness_trial, trials=1)
    suite.run("link-monoid-model", monoid_model_trial, trials=1)
    return suite.report()


def link_monoid_model_mismatches(qlabels, klabels, max_len=3,
                                 braids=(-1, 0, 1), mutate=None) -> list[str]:
    """Compare the link normal-form monoid with the free colored model.

    The o-carrier of the free algebra over (qlabels, klabels^3) together
    with a braid integer should be isomorphic to the link monoid, with
    multiplication tables matching under the evident identification.
    """
    gens = {Color.O: tuple(qlabels), Color.UP: tuple(klabels),
            Color.DOWN: tuple(klabels), Color.UPDOWN: tuple(klabels)}
    algebra = FreeAlgebra(Pi0Operad(PI0SCL), gens)
    elements = []
    for total in range(max_len + 1):
        elements.extend(o_elements(gens, total))

    def to_link(elem, braid):
        return LinkNormalForm(elem.oword,
                              _kw(elem.up), _kw(elem.down), _kw(elem.both),
                              braid)

    def _kw(letters):
        from .pi0 import KnotWord
        return KnotWord(letters)

    pairs = [(e, b) for e in elements for b in braids]
    seen = {}
    bad = []
    for e, b in pairs:
        key = str(to_link(e, b))
        if key in seen:
            bad.append(f"not injective: {key}")
        seen[key] = (e, b)
    for e1, b1 in pairs:
        for e2, b2 in pairs:
            lhs = to_link(e1, b1) if mutate != "swap-mul" else to_link(e2, b2)
            prod_link = link_mul(lhs, to_link(e2, b2))
            prod_free = algebra.mul(e1, e2)
            want = to_link(prod_free, b1 + b2)
            if str(prod_link) != str(want):
                bad.append(f"{to_link(e1, b1)} * {to_link(e2, b2)}: "
                           f"{prod_link} != {want}")
                if len(bad) > 10:
                    return bad
    return bad


# ---------------------------------------------------------------------------
# component-label stability under witnessed interpolation

def check_pi0_interpolation(cfg: TrialConfig) -> CheckReport:
    """The component label cannot change along a straight-line path all
    of whose rational sample points validate."""
    suite = _Suite("pi0-interpolation", cfg)

    def trial(rng, index):
        arity = rng.randint(1, min(cfg.max_arity, 4))
        a = gen_config(rng, 1, arity, Mode.DISJOINT)
        b = gen_config(rng, 1, arity, Mode.DISJOINT)
        # sample densely enough that no almost-disjoint crossing of two
        # intervals can fit between consecutive steps: the invalid window
        # of a swap is at least a quarter of the smallest width
        min_width = min(hi - lo for cfgq in (a, b)
                        for cube in cfgq.cubes for lo, hi in cube.images)
        steps = min(int(4 / min_width) + 1, 512)
        labels = []
        for j in range(steps + 1):
            w = Fraction(j, steps)
            cubes = []
            try:
                for ca, cb in zip(a.cubes, b.cubes):
                    fa, fb = ca.factors[0], cb.factors[0]
                    scale = (1 - w) * fa.scale + w * fb.scale
                    offset = (1 - w) * fa.offset + w * fb.offset
                    lo, hi = offset - scale, offset + scale
                    cubes.append(cube_from_intervals((lo, hi)))
                cfg_j = CubeConfig(1, tuple(cubes), Mode.DISJOINT)
            except Exception:
                return None  # path leaves the valid region: nothing to check
            labels.append(pi0_class(cfg_j).perm)
        if any(lab != labels[0] for lab in labels):
            return {"a": config_to_json(a), "b": config_to_json(b),
                    "labels": [list(l) for l in labels]}
        return None

    suite.run("label-stable-on-witnessed-paths", trial)
    return suite.report()


# ---------------------------------------------------------------------------

ALL_SUITES = ("operad-axioms-C1", "operad-axioms-C2", "operad-axioms-SCL",
              "ordering-permutations", "kappa-well-defined", "pi0-structure",
              "pi0-interpolation")


def run_suite(name: str, cfg: TrialConfig) -> CheckReport:
    if name.startswith("operad-axioms-"):
        return check_operad_axioms(cfg, name.rsplit("-", 1)[1])
    if name == "ordering-permutations":
        return check_ordering_permutations(cfg)
    if name == "kappa-well-defined":
        return check_kappa_well_defined(cfg)
    if name == "pi0-structure":
        return check_pi0_theorems(cfg)
    if name == "pi0-interpolation":
        return check_pi0_interpolation(cfg)
    raise ValueError(f"unknown suite {name!r} (known: {', '.join(ALL_SUITES)})")


def run_all(cfg: TrialConfig, names=ALL_SUITES) -> list[CheckReport]:
    return [run_suite(name, cfg) for name in names]
