"""Extremality of the canonical two-point mixture among its rivals.

A zero-mean law admits many representations as a mixture of zero-mean
two-point laws; the one induced by the paired generalized inverses is
special.  Under the level tilt (each component reweighted by its
contribution to the half mean) every representation produces the same
one-dimensional laws for the positive endpoint and for the magnitude of
the negative endpoint, and the canonical representation couples those
two marginals comonotonically.  Consequently it maximizes mixture costs
that are lattice-superadditive in the endpoint pair and minimizes the
lattice-subadditive ones.

This module builds and validates alternative representations, computes
tilted weights, checks the marginal identities, and compares costs, with
a small brute-force verifier of the comonotone rearrangement inequality
for uniform marginals.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from scipy import integrate

from .disintegration import (MixtureDecomposition, TwoPointLaw, _level_laws,
                             decompose, tilt, two_point)
from .errors import (BadP, InputError, NotADisintegration, NotSuperadditive,
                     OptimalityViolated, UnsupportedMarginals)
from .measure import ZeroMeanMeasure, _as_number

__all__ = [
    "CostFunction",
    "indicator_ge",
    "neg_abs_diff_pow",
    "abs_sum_pow",
    "ratio_pow",
    "custom_cost",
    "cost_from_spec",
    "AlternativeDisintegration",
    "alternative_disintegration",
    "canonical_disintegration",
    "tilted_weights",
    "MarginalReport",
    "marginal_check",
    "CostComparison",
    "canonical_cost",
    "cost_compare",
    "NormReport",
    "norm_report",
    "ComonotoneReport",
    "comonotone_extremality",
]


@dataclass(frozen=True)
class CostFunction:
    """Cost ``k(b, -a)`` on the endpoints of a two-point component.

    The first argument is the positive endpoint, the second the
    magnitude of the negative one.  ``canonical_is`` states which side
    of the comparison the canonical representation occupies: ``"max"``
    for lattice-superadditive costs, ``"min"`` for subadditive ones.
    """

    fn: Callable
    canonical_is: str
    label: str

    def __call__(self, pos, neg_mag):
        return self.fn(pos, neg_mag)


def indicator_ge(a, b) -> CostFunction:
    """Joint upper-orthant indicator, one when both endpoints clear
    their thresholds.  Superadditive, so the canonical mixture puts the
    most weight on the orthant."""

    def fn(u, v):
        return 1 if (u >= a and v >= b) else 0

    return CostFunction(fn, "max", f"indicator_ge({a}, {b})")


def _check_power(p) -> None:
    if not (p >= 1):
        raise BadP(f"power must be at least 1, got {p!r}")


def neg_abs_diff_pow(p=1) -> CostFunction:
    """Negated endpoint-gap power ``-|u - v|^p`` for ``p >= 1``;
    superadditive, so canonical components are the most balanced."""
    _check_power(p)

    def fn(u, v):
        return -abs(u - v) ** p

    return CostFunction(fn, "max", f"neg_abs_diff_pow({p})")


def abs_sum_pow(p=1) -> CostFunction:
    """Width power ``(u + v)^p`` for ``p >= 1`` (the sum of the two
    arguments is the component width).  Superadditive; for ``p = 1`` the
    cost is linear and every representation agrees."""
    _check_power(p)

    def fn(u, v):
        return (u + v) ** p

    return CostFunction(fn, "max", f"abs_sum_pow({p})")


def ratio_pow(p=1, side: str = "pos_over_neg") -> CostFunction:
    """Endpoint ratio power, subadditive in the pair, so the canonical
    representation minimizes it; ``side`` picks the orientation."""
    _check_power(p)
    if side not in ("pos_over_neg", "neg_over_pos"):
        raise InputError(f"side must be pos_over_neg or neg_over_pos, "
                         f"got {side!r}")
    flip = side == "neg_over_pos"

    def fn(u, v):
        if flip:
            u, v = v, u
        return (u / v) ** p

    return CostFunction(fn, "min", f"ratio_pow({p}, {side})")


def custom_cost(fn: Callable, canonical_is: str, *,
                probe_grid: Optional[Sequence] = None,
                check: bool = True, label: str = "custom") -> CostFunction:
    """Wrap an arbitrary endpoint cost, optionally probing the lattice
    inequality ``k(u', v') + k(u, v) >= k(u, v') + k(u', v)`` (reversed
    for ``canonical_is="min"``) on a grid; a failed probe raises
    :class:`~twopoint.errors.NotSuperadditive`."""
    if canonical_is not in ("max", "min"):
        raise InputError(f"canonical_is must be max or min, "
                         f"got {canonical_is!r}")
    if check:
        grid = sorted(probe_grid) if probe_grid is not None else \
            [0.25, 0.5, 1.0, 2.0, 4.0]
        for (u1, u2), (v1, v2) in itertools.product(
                itertools.combinations(grid, 2), repeat=2):
            gap = fn(u2, v2) + fn(u1, v1) - fn(u1, v2) - fn(u2, v1)
            if canonical_is == "min":
                gap = -gap
            if gap < -1e-12:
                raise NotSuperadditive(
                    f"lattice inequality fails on the rectangle "
                    f"[{u1}, {u2}] x [{v1}, {v2}] (gap {gap!r})")
    return CostFunction(fn, canonical_is, label)


def cost_from_spec(obj: dict) -> CostFunction:
    """Build a named cost from its JSON description, e.g.
    ``{"kind": "indicator_ge", "a": 2, "b": 2}``."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("cost spec must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "indicator_ge":
        return indicator_ge(obj.get("a", 0), obj.get("b", 0))
    if kind == "neg_abs_diff_pow":
        return neg_abs_diff_pow(obj.get("p", 1))
    if kind == "abs_sum_pow":
        return abs_sum_pow(obj.get("p", 1))
    if kind == "ratio_pow":
        return ratio_pow(obj.get("p", 1), obj.get("side", "pos_over_neg"))
    raise InputError(f"unknown cost kind {kind!r}")


# --- alternative representations ------------------------------------------

@dataclass(frozen=True)
class AlternativeDisintegration:
    """A validated mixture of zero-mean two-point laws.

    ``components`` are ``(weight, TwoPointLaw)`` pairs summing to the
    represented measure."""

    components: tuple

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def to_jsonable(self) -> dict:
        return {"components": [{"w": w, "a": law.a, "b": law.b}
                               for w, law in self.components]}


def _accumulated_atoms(components) -> dict:
    acc: dict = {}
    for w, law in components:
        if law.is_degenerate:
            acc[law.a] = acc.get(law.a, 0) + w
            continue
        acc[law.a] = acc.get(law.a, 0) + w * law.p_a
        acc[law.b] = acc.get(law.b, 0) + w * law.p_b
    return acc


def alternative_disintegration(measure: ZeroMeanMeasure, components,
                               *, tol: float = 1e-9
                               ) -> AlternativeDisintegration:
    """Validate ``(weight, a, b)`` triples as a representation of
    ``measure``; each pair carries the unique zero-mean two-point law,
    and the weighted atoms must reassemble the measure (exactly for
    exact inputs, else within ``tol``).  Raises
    :class:`~twopoint.errors.NotADisintegration` otherwise."""
    built = []
    for item in components:
        try:
            w, a, b = item
        except (TypeError, ValueError):
            raise InputError(f"component {item!r} is not a "
                             "(weight, a, b) triple")
        w = _as_number(w)
        if not w > 0:
            raise NotADisintegration(f"component weight {w!r} must be "
                                     "positive")
        built.append((w, two_point(a, b)))
    total = sum(w for w, _ in built)
    if abs(float(total) - 1.0) > tol:
        raise NotADisintegration(f"weights sum to {float(total)!r}, not 1")

    acc = _accumulated_atoms(built)
    target = dict(measure.atoms)
    all_exact = measure.is_exact and all(
        not isinstance(v, float) for v in acc) and all(
        not isinstance(k, float) for k in acc)
    if all_exact:
        if {k: v for k, v in acc.items() if v != 0} != target:
            raise NotADisintegration(
                "components do not reassemble the measure")
    else:
        keys = sorted(set(float(k) for k in acc) |
                      set(float(k) for k in target))
        facc = {float(k): float(v) for k, v in acc.items()}
        ftar = {float(k): float(v) for k, v in target.items()}
        for k in keys:
            if abs(facc.get(k, 0.0) - ftar.get(k, 0.0)) > tol:
                raise NotADisintegration(
                    f"mass mismatch at {k!r}: "
                    f"{facc.get(k, 0.0)!r} vs {ftar.get(k, 0.0)!r}")
    return AlternativeDisintegration(tuple(built))


def canonical_disintegration(measure: ZeroMeanMeasure
                             ) -> AlternativeDisintegration:
    """The representation induced by the paired inverses, in the same
    container as the alternatives."""
    dec: MixtureDecomposition = decompose(measure)
    return AlternativeDisintegration(tuple(dec.components))


def tilted_weights(alt, m=None, *, tol: float = 1e-9):
    """Level-tilted weights: each component reweighted by its half-mean
    contribution ``w * b * (-a) / (b - a)`` and normalized.  When ``m``
    is supplied the normalizer must match it."""
    comps = list(alt)
    contrib = [w * law.mean_positive_part for w, law in comps]
    total = sum(contrib)
    if not total > 0:
        raise NotADisintegration("representation carries no half mean")
    if m is not None and abs(float(total) - float(m)) > tol * max(
            1.0, float(m)):
        raise NotADisintegration(
            f"half-mean contributions sum to {float(total)!r}, "
            f"but the measure has {float(m)!r}")
    return tuple(c / total for c in contrib)


@dataclass(frozen=True)
class MarginalReport:
    """Agreement of endpoint laws with the size-biased tilts."""

    passed: bool
    discrepancy: float


def marginal_check(measure: ZeroMeanMeasure, alt, *,
                   tol: float = 1e-9) -> MarginalReport:
    """Under the tilted weights, the law of the positive endpoint must
    be the positive size-biased tilt of the measure, and the law of the
    negative endpoint magnitude the negative one."""
    weights = tilted_weights(alt)
    pos: dict = {}
    neg: dict = {}
    for nu, (w, law) in zip(weights, alt):
        if law.is_degenerate:
            continue
        pos[float(law.b)] = pos.get(float(law.b), 0.0) + float(nu)
        neg[float(-law.a)] = neg.get(float(-law.a), 0.0) + float(nu)
    disc = 0.0
    for which, got in (("Y_plus", pos), ("Y_minus", neg)):
        t = tilt(measure, which)
        want = {}
        for l, p in zip(t.locations, t.probs):
            want[abs(float(l))] = want.get(abs(float(l)), 0.0) + float(p)
        for k in set(got) | set(want):
            disc = max(disc, abs(got.get(k, 0.0) - want.get(k, 0.0)))
    return MarginalReport(disc <= tol, disc)


# --- cost comparisons -----------------------------------------------------

def canonical_cost(measure: ZeroMeanMeasure, cost: CostFunction):
    """Average cost of the canonical representation under the level
    tilt: exact piecewise sums for discrete measures, quadrature for
    analytic ones."""
    if measure.backend == "discrete":
        m = measure.m
        acc = 0
        for length, law in _level_laws(measure):
            acc += length * cost(law.b, -law.a)
        return acc / m
    m = float(measure.m)

    def integrand(h):
        return float(cost(measure.x_plus(h), -measure.x_minus(h)))

    val, _err = integrate.quad(integrand, 0.0, m, limit=200)
    return val / m


@dataclass(frozen=True)
class CostComparison:
    """Canonical-versus-alternative cost values and the verdict."""

    label: str
    direction: str
    canonical: float
    alternative: float
    satisfied: bool

    def to_jsonable(self) -> dict:
        return {"cost": self.label, "canonical_is": self.direction,
                "canonical": float(self.canonical),
                "alternative": float(self.alternative),
                "satisfied": self.satisfied}


def cost_compare(measure: ZeroMeanMeasure, cost: CostFunction, alt, *,
                 tol: float = 1e-9, enforce: bool = False
                 ) -> CostComparison:
    """Compare the canonical representation against an alternative on
    one cost; with ``enforce`` a violated inequality raises
    :class:`~twopoint.errors.OptimalityViolated`."""
    if not isinstance(alt, AlternativeDisintegration):
        alt = alternative_disintegration(measure, alt)
    weights = tilted_weights(alt, measure.m)
    alt_val = sum(nu * cost(law.b, -law.a)
                  for nu, (w, law) in zip(weights, alt)
                  if not law.is_degenerate)
    can_val = canonical_cost(measure, cost)
    scale = tol * (1.0 + abs(float(can_val)) + abs(float(alt_val)))
    if cost.canonical_is == "max":
        ok = float(can_val) >= float(alt_val) - scale
    else:
        ok = float(can_val) <= float(alt_val) + scale
    cmp = CostComparison(cost.label, cost.canonical_is, can_val, alt_val, ok)
    if enforce and not ok:
        raise OptimalityViolated(
            f"{cost.label}: canonical {float(can_val)!r} is not the "
            f"{cost.canonical_is} against alternative {float(alt_val)!r}")
    return cmp


@dataclass(frozen=True)
class NormReport:
    """A table of standard cost comparisons."""

    rows: tuple

    @property
    def passed(self) -> bool:
        return all(r.satisfied for r in self.rows)

    def to_jsonable(self) -> dict:
        return {"rows": [r.to_jsonable() for r in self.rows],
                "passed": self.passed}


def norm_report(measure: ZeroMeanMeasure, alt) -> NormReport:
    """Compare a representative panel of costs: endpoint gap, width
    powers, and the endpoint ratio."""
    if not isinstance(alt, AlternativeDisintegration):
        alt = alternative_disintegration(measure, alt)
    panel = (neg_abs_diff_pow(1), neg_abs_diff_pow(2), abs_sum_pow(1),
             abs_sum_pow(2), ratio_pow(1))
    return NormReport(tuple(cost_compare(measure, c, alt) for c in panel))


# --- brute-force comonotone verification ----------------------------------

@dataclass(frozen=True)
class ComonotoneReport:
    """Exhaustive check of the rearrangement inequality for uniform
    marginals."""

    passed: bool
    comonotone_value: float
    extreme_value: float
    permutations: int


def comonotone_extremality(pos_values: Sequence, neg_values: Sequence,
                           cost: CostFunction, *, limit: int = 7,
                           tol: float = 1e-12) -> ComonotoneReport:
    """Pair two uniform marginals every possible way and confirm the
    sorted-with-sorted pairing is extreme for the cost.  Marginals must
    have equal size at most ``limit`` (the search is factorial)."""
    us = sorted(float(v) for v in pos_values)
    vs = sorted(float(v) for v in neg_values)
    if not us or len(us) != len(vs):
        raise UnsupportedMarginals(
            "need two nonempty value lists of equal size")
    if len(us) > limit:
        raise UnsupportedMarginals(
            f"{len(us)} points would need {math.factorial(len(us))} "
            "pairings; reduce to at most "
            f"{limit}")
    n = len(us)
    como = sum(cost(u, v) for u, v in zip(us, vs)) / n
    best = como
    for perm in itertools.permutations(vs):
        val = sum(cost(u, v) for u, v in zip(us, perm)) / n
        if cost.canonical_is == "max":
            best = max(best, val)
        else:
            best = min(best, val)
    if cost.canonical_is == "max":
        ok = como >= best - tol * (1.0 + abs(best))
    else:
        ok = como <= best + tol * (1.0 + abs(best))
    return ComonotoneReport(ok, como, best, math.factorial(n))
