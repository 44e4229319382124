"""Exact decisions about generalized inverses in the convolution semigroup.

A measure mu is regular when some probability measure x satisfies
mu * x * mu = mu.  Because that identity is linear in x, regularity is an
exact LP feasibility question over the rationals, and every verdict here is
backed either by a machine-verified witness or by an exact infeasibility
argument.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .config import DEFAULT_CONFIG
from .errors import ClosureBudgetExceeded, NotAGeneralizedInverse
from .groups import FiniteGroup
from .linalg import LPProblem, RationalMatrix, lp_feasible, solve_affine
from .measures import ProbMeasure, convolve, dirac, haar_idempotents, measure, mix

ONE = Fraction(1)


class Method(str, enum.Enum):
    """How a verdict was reached."""

    LP = "LP"
    OBSTRUCTION = "OBSTRUCTION"
    FOURIER_UNIQUE = "FOURIER_UNIQUE"


def is_generalized_inverse(m: ProbMeasure, x: ProbMeasure) -> bool:
    """Exact check of the defining identity m * x * m = m."""
    return convolve(convolve(m, x), m) == m


@dataclass(frozen=True)
class RegularityVerdict:
    """Outcome of a regularity decision; witnesses are re-verified on construction."""

    measure: ProbMeasure
    regular: bool
    witness: ProbMeasure | None
    reflexive_witness: ProbMeasure | None
    method: Method
    detail: str

    def __post_init__(self) -> None:
        if self.regular:
            if self.witness is None or not is_generalized_inverse(self.measure, self.witness):
                raise NotAGeneralizedInverse("regular verdict carries no verifying witness")
            rx = self.reflexive_witness
            if rx is not None:
                if not is_generalized_inverse(self.measure, rx):
                    raise NotAGeneralizedInverse("reflexive witness fails m*x*m = m")
                if convolve(convolve(rx, self.measure), rx) != rx:
                    raise NotAGeneralizedInverse("reflexive witness fails x*m*x = x")
        elif self.witness is not None or self.reflexive_witness is not None:
            raise NotAGeneralizedInverse("non-regular verdict must not carry witnesses")

    def to_json(self) -> dict:
        def dump(m: ProbMeasure | None):
            return None if m is None else [str(w) for w in m.weights]

        return {
            "regular": self.regular,
            "witness": dump(self.witness),
            "reflexive_witness": dump(self.reflexive_witness),
            "method": self.method.value,
            "detail": self.detail,
        }


def conv_operator_matrix(m: ProbMeasure) -> RationalMatrix:
    """Matrix M of x -> m * x * m in the Dirac basis.

    M[g][h] sums m(u) m(v) over all factorizations g = u h v.  Both row and
    column sums are 1, so M is doubly stochastic.
    """
    group = m.group
    n = group.order
    cay = group.cayley
    supp = [(u, w) for u, w in enumerate(m.weights) if w]
    rows = [[Fraction(0)] * n for _ in range(n)]
    for u, wu in supp:
        row_u = cay[u]
        for h in range(n):
            uh = row_u[h]
            row_uh = cay[uh]
            for v, wv in supp:
                rows[row_uh[v]][h] += wu * wv
    return RationalMatrix(tuple(tuple(r) for r in rows))


def reflexive_inverse(m: ProbMeasure, g: ProbMeasure) -> ProbMeasure:
    """Turn a generalized inverse g into a reflexive one via x = g * m * g.

    The result satisfies both m * x * m = m and x * m * x = x; both identities
    are checked exactly before returning.
    """
    if not is_generalized_inverse(m, g):
        raise NotAGeneralizedInverse("g does not satisfy m * g * m = m")
    x = convolve(convolve(g, m), g)
    if not is_generalized_inverse(m, x):
        raise RuntimeError("internal error: g*m*g fails m*x*m = m")
    if convolve(convolve(x, m), x) != x:
        raise RuntimeError("internal error: g*m*g fails x*m*x = x")
    return x


def _support_obstruction(m: ProbMeasure) -> str | None:
    """Cheap necessary condition from supports: supp(m*x*m) = A supp(x) A must equal A.

    Any witness element s needs A s A inside A, and the union of the feasible
    A s A must cover A.  Returns a human-readable reason when that fails.
    """
    group = m.group
    cay = group.cayley
    a = [g for g, w in enumerate(m.weights) if w]
    aset = set(a)
    valid = []
    covered: set[int] = set()
    for s in group.elements():
        prods = {cay[cay[u][s]][v] for u in a for v in a}
        if prods <= aset:
            valid.append(s)
            covered |= prods
    if not valid:
        return "no element s has supp(m)*s*supp(m) inside supp(m)"
    if covered != aset:
        return "no support-compatible witness can reproduce all of supp(m)"
    return None


def decide_regular(m: ProbMeasure) -> RegularityVerdict:
    """Decide exactly whether m has a generalized inverse.

    Route: a support obstruction check first; then the linear system
    M x = vec(m).  When M is nonsingular the unique solution settles the
    question outright; otherwise phase-1 simplex decides feasibility of
    {M x = vec(m), sum x = 1, x >= 0}.
    """
    reason = _support_obstruction(m)
    if reason is not None:
        return RegularityVerdict(m, False, None, None, Method.OBSTRUCTION, reason)
    op = conv_operator_matrix(m)
    particular, nullspace = solve_affine(op, m.weights)
    if particular is None:
        return RegularityVerdict(m, False, None, None, Method.OBSTRUCTION,
                                 "linear system m*x*m = m has no solution at all")
    if not nullspace:
        # unique solution; column sums of M are 1, so its entries sum to 1
        if all(v >= 0 for v in particular):
            w = measure(m.group, particular)
            return RegularityVerdict(m, True, w, reflexive_inverse(m, w), Method.LP,
                                     "operator matrix nonsingular; the unique solution of the "
                                     "feasibility LP is a probability vector")
        return RegularityVerdict(m, False, None, None, Method.OBSTRUCTION,
                                 "operator matrix nonsingular; the unique candidate has a "
                                 "negative entry, so the LP is infeasible")
    n = m.group.order
    rows = list(op.entries) + [tuple([ONE] * n)]
    rhs = tuple(m.weights) + (ONE,)
    point = lp_feasible(LPProblem(RationalMatrix(tuple(rows)), rhs))
    if point is None:
        return RegularityVerdict(m, False, None, None, Method.LP,
                                 "phase-1 simplex: no nonnegative solution exists")
    w = measure(m.group, point)
    return RegularityVerdict(m, True, w, reflexive_inverse(m, w), Method.LP,
                             "phase-1 simplex found a feasible witness")


def classify_two_point_family(group: FiniteGroup, g: int, denominator: int
                              ) -> list[tuple[Fraction, RegularityVerdict]]:
    """Verdicts for alpha*delta_e + (1-alpha)*delta_g at every alpha = k/denominator."""
    if denominator < 1:
        raise ValueError(f"denominator must be >= 1, got {denominator}")
    if not 0 <= g < group.order:
        raise ValueError(f"element index {g} out of range for order {group.order}")
    e = group.identity
    out = []
    for k in range(denominator + 1):
        alpha = Fraction(k, denominator)
        mu = mix([alpha, 1 - alpha], [dirac(group, e), dirac(group, g)])
        out.append((alpha, decide_regular(mu)))
    return out


@dataclass(frozen=True)
class OmegaClosureReport:
    """Finite enumeration of products of Haar idempotents, with verdicts.

    closed=True means the enumerated set is convolution-closed, i.e. the whole
    semigroup generated by the idempotents.  closed=False means the element
    budget stopped the search first; the table is then empirical evidence
    about an initial segment only, not a complete description.
    """

    group: FiniteGroup
    measures: tuple[ProbMeasure, ...]
    verdicts: tuple[RegularityVerdict, ...]
    closed: bool
    budget: int

    @property
    def all_regular(self) -> bool:
        return all(v.regular for v in self.verdicts)


def omega_closure(group: FiniteGroup, budget: int | None = None,
                  strict: bool = False, with_verdicts: bool = True) -> OmegaClosureReport:
    """Close the set of Haar idempotents under convolution, up to a budget.

    For abelian groups the closure is just the subgroup-Haar set.  In general
    the generated semigroup can be infinite, so enumeration stops once budget
    elements have been found; strict=True turns that truncation into a
    ClosureBudgetExceeded error instead.
    """
    cap = budget if budget is not None else DEFAULT_CONFIG.closure_budget
    if cap < 1:
        raise ValueError("budget must be >= 1")
    seeds = haar_idempotents(group)
    elements: list[ProbMeasure] = []
    seen: set[tuple[Fraction, ...]] = set()
    for s in seeds:
        if s.weights not in seen:
            seen.add(s.weights)
            elements.append(s)
    closed = True
    if len(elements) > cap:
        elements = elements[:cap]
        closed = False
    frontier = list(elements)
    while frontier and closed:
        fresh: list[ProbMeasure] = []
        snapshot = list(elements)
        for f in frontier:
            for other in snapshot:
                for prod in (convolve(f, other), convolve(other, f)):
                    if prod.weights not in seen:
                        seen.add(prod.weights)
                        fresh.append(prod)
                        elements.append(prod)
                        if len(elements) >= cap:
                            closed = False
                            break
                if not closed:
                    break
            if not closed:
                break
        if not closed:
            # the cap may coincide with the closure size; settle that when cheap
            closed = len(elements) <= 512 and _is_convolution_closed(elements, seen)
            break
        frontier = fresh
    if strict and not closed:
        raise ClosureBudgetExceeded(
            f"idempotent closure of {group.label} exceeds budget {cap}")
    verdicts = tuple(decide_regular(m) for m in elements) if with_verdicts else ()
    return OmegaClosureReport(group, tuple(elements), verdicts, closed, cap)


def _is_convolution_closed(elements: Sequence[ProbMeasure],
                           seen: set[tuple[Fraction, ...]]) -> bool:
    for a in elements:
        for b in elements:
            if convolve(a, b).weights not in seen:
                return False
    return True
