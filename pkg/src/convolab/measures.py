"""Probability measures on a finite group with exact rational weights.

Convolution follows the fixed convention (mu * nu)(g) = sum_x mu(g x^-1) nu(x),
equivalently mass mu(y) nu(x) lands on the product y*x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import CoefficientsInvalid, GroupMismatch
from .groups import ElementSet, FiniteGroup, Subgroup, enumerate_subgroups, make_group

ONE = Fraction(1)
ZERO = Fraction(0)


@dataclass(frozen=True)
class ProbMeasure:
    """Weights are nonnegative Fractions, one per element, summing to exactly 1."""

    group: FiniteGroup
    weights: tuple[Fraction, ...]

    def __call__(self, g: int) -> Fraction:
        return self.weights[g]

    def __repr__(self) -> str:
        ws = ", ".join(str(w) for w in self.weights)
        return f"ProbMeasure({self.group.label}: [{ws}])"


def measure(group: FiniteGroup, weights: Iterable) -> ProbMeasure:
    """Build a ProbMeasure, coercing entries to Fraction and checking invariants."""
    ws = tuple(Fraction(w) for w in weights)
    if len(ws) != group.order:
        raise CoefficientsInvalid(f"expected {group.order} weights, got {len(ws)}")
    for g, w in enumerate(ws):
        if w < 0:
            raise CoefficientsInvalid(f"negative weight {w} at element {g}")
    total = sum(ws)
    if total != 1:
        raise CoefficientsInvalid(f"weights sum to {total}, not 1")
    return ProbMeasure(group, ws)


def dirac(group: FiniteGroup, g: int) -> ProbMeasure:
    """Point mass at element g."""
    if not 0 <= g < group.order:
        raise ValueError(f"element index {g} out of range for order {group.order}")
    ws = [ZERO] * group.order
    ws[g] = ONE
    return ProbMeasure(group, tuple(ws))


def uniform_on(group: FiniteGroup, indices: Iterable[int]) -> ProbMeasure:
    """Uniform measure on a nonempty set of elements."""
    idx = sorted(set(indices))
    if not idx:
        raise CoefficientsInvalid("uniform measure needs a nonempty set")
    share = Fraction(1, len(idx))
    ws = [ZERO] * group.order
    for g in idx:
        ws[g] = share
    return measure(group, ws)


def mix(coefficients: Sequence, measures: Sequence[ProbMeasure]) -> ProbMeasure:
    """Convex combination sum_i c_i mu_i; coefficients must form a distribution."""
    if len(coefficients) == 0 or len(coefficients) != len(measures):
        raise CoefficientsInvalid("need matching, nonempty coefficients and measures")
    cs = [Fraction(c) for c in coefficients]
    if any(c < 0 for c in cs) or sum(cs) != 1:
        raise CoefficientsInvalid("coefficients must be nonnegative and sum to 1")
    group = measures[0].group
    for m in measures[1:]:
        if m.group != group:
            raise GroupMismatch("mixture components live on different groups")
    ws = [ZERO] * group.order
    for c, m in zip(cs, measures):
        if c == 0:
            continue
        for g, w in enumerate(m.weights):
            if w:
                ws[g] += c * w
    return ProbMeasure(group, tuple(ws))


def convolve(a: ProbMeasure, b: ProbMeasure) -> ProbMeasure:
    """(a * b)(g) = sum over factorizations g = y*x of a(y) b(x)."""
    if a.group != b.group:
        raise GroupMismatch("cannot convolve measures on different groups")
    group = a.group
    cay = group.cayley
    ws = [ZERO] * group.order
    for y, wy in enumerate(a.weights):
        if not wy:
            continue
        row = cay[y]
        for x, wx in enumerate(b.weights):
            if wx:
                ws[row[x]] += wy * wx
    return ProbMeasure(group, tuple(ws))


def convolution_power(m: ProbMeasure, k: int) -> ProbMeasure:
    """k-fold convolution of m with itself, k >= 1, by repeated squaring."""
    if k < 1:
        raise ValueError(f"power must be >= 1, got {k}")
    result: ProbMeasure | None = None
    base = m
    while k:
        if k & 1:
            result = base if result is None else convolve(result, base)
        k >>= 1
        if k:
            base = convolve(base, base)
    assert result is not None
    return result


def support(m: ProbMeasure) -> ElementSet:
    return ElementSet(m.group, tuple(g for g, w in enumerate(m.weights) if w))


def is_idempotent(m: ProbMeasure) -> bool:
    return convolve(m, m) == m


def haar_idempotents(group: FiniteGroup, max_order: int | None = None) -> list[ProbMeasure]:
    """Uniform measures on all subgroups; these are exactly the idempotents."""
    return [uniform_on(group, h.indices) for h in enumerate_subgroups(group, max_order)]


def haar_on(subgroup: Subgroup) -> ProbMeasure:
    return uniform_on(subgroup.group, subgroup.indices)


def measure_to_json(m: ProbMeasure, group_json: Mapping | str | None = None) -> dict:
    """JSON-ready dict with weights rendered as exact "p/q" strings."""
    from .groups import group_spec

    g = group_json if group_json is not None else group_spec(m.group)
    return {"group": g, "weights": [str(w) for w in m.weights]}


def measure_from_json(obj: Mapping, group: FiniteGroup | None = None,
                      max_order: int | None = None) -> ProbMeasure:
    """Parse {"group": <spec>, "weights": ["p/q", ...]}; group may be supplied directly."""
    if group is None:
        gspec = obj.get("group")
        if not isinstance(gspec, Mapping):
            raise ValueError("measure JSON needs an inline 'group' spec or an explicit group")
        group = make_group(gspec, max_order)
    weights = obj.get("weights")
    if not isinstance(weights, Sequence) or isinstance(weights, (str, bytes)):
        raise ValueError("measure JSON needs a 'weights' array")
    return measure(group, weights)
