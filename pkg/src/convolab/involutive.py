"""Action-matrix machinery for groups in which every element squares to the
identity (so each element is its own inverse).

For a measure with weights alpha on a subgroup support {g_0 = e, g_1, ...},
the left-convolution action x -> mu * x restricted to that support is the
matrix A[j][k] = alpha[S_j(k)], where S_j(k) is the support position of
g_j * g_k.  Composing the action with itself turns the generalized-inverse
identity into the linear system A^2 beta = alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import GroupNotInvolutive, PreconditionViolated, SupportNotClosed
from .groups import ElementSet, FiniteGroup
from .linalg import LPProblem, RationalMatrix, lp_feasible, solve_affine
from .measures import ProbMeasure, convolve, dirac
from .regularity import decide_regular

ONE = Fraction(1)


@dataclass(frozen=True)
class PermutationFamily:
    """Permutations S_j of support positions with g_j * g_k = g_{S_j(k)}.

    Support positions list the identity first, then ascending element index.
    S_0 is always the identity permutation; on involutive groups S_j(j) = 0.
    """

    group: FiniteGroup
    support: tuple[int, ...]
    perms: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.support)


def action_permutations(group: FiniteGroup, supp: ElementSet | Iterable[int]) -> PermutationFamily:
    """Build the multiplication permutations of a subgroup support."""
    indices = tuple(supp.indices) if isinstance(supp, ElementSet) else tuple(sorted(set(supp)))
    if group.identity not in indices:
        raise SupportNotClosed("support must contain the identity")
    ordered = (group.identity,) + tuple(g for g in indices if g != group.identity)
    pos = {g: p for p, g in enumerate(ordered)}
    perms = []
    for gj in ordered:
        row = []
        for gk in ordered:
            prod = group.mul(gj, gk)
            if prod not in pos:
                raise SupportNotClosed(
                    f"support not closed: {gj}*{gk} = {prod} falls outside")
            row.append(pos[prod])
        perms.append(tuple(row))
    fam = PermutationFamily(group, ordered, tuple(perms))
    if fam.perms[0] != tuple(range(len(ordered))):
        raise RuntimeError("internal error: S_0 is not the identity permutation")
    return fam


@dataclass(frozen=True)
class ActionMatrix:
    """The left-convolution matrix of a measure on its subgroup support."""

    family: PermutationFamily
    measure: ProbMeasure
    matrix: RationalMatrix

    @property
    def alpha(self) -> tuple[Fraction, ...]:
        return tuple(self.measure.weights[g] for g in self.family.support)

    def to_json(self) -> dict:
        return {
            "support": list(self.family.support),
            "matrix": self.matrix.to_json(),
            "det": str(self.matrix.det()),
        }


def build_action_matrix(m: ProbMeasure) -> ActionMatrix:
    """Action matrix of m; requires an involutive group and subgroup support.

    The construction is cross-checked column by column against actual
    convolutions m * delta_g before returning.
    """
    group = m.group
    if not group.is_involutive:
        raise GroupNotInvolutive(f"{group.label} has an element of order > 2")
    supp = tuple(g for g, w in enumerate(m.weights) if w)
    fam = action_permutations(group, supp)
    alpha = tuple(m.weights[g] for g in fam.support)
    size = len(fam)
    rows = tuple(tuple(alpha[fam.perms[j][k]] for k in range(size)) for j in range(size))
    matrix = RationalMatrix(rows)
    for k, gk in enumerate(fam.support):
        shifted = convolve(m, dirac(group, gk))
        expected = tuple(shifted.weights[gj] for gj in fam.support)
        column = tuple(rows[j][k] for j in range(size))
        if column != expected:
            raise RuntimeError("internal error: action matrix disagrees with convolution")
    return ActionMatrix(fam, m, matrix)


@dataclass(frozen=True)
class ObstructionReport:
    """Outcome of the diagonal-dominance obstruction test."""

    obstructed: bool
    threshold: Fraction
    alpha0: Fraction
    det: Fraction

    def to_json(self) -> dict:
        return {
            "obstructed": self.obstructed,
            "threshold": str(self.threshold),
            "alpha0": str(self.alpha0),
            "det": str(self.det),
        }


def obstruction_check(m: ProbMeasure) -> ObstructionReport:
    """Test whether the identity weight exceeds n/(n+1) for full support size n+1.

    Above that threshold the action matrix is strictly diagonally dominant,
    hence invertible, and the measure cannot be regular.  Both consequences
    are re-verified exactly here (determinant via Bareiss, regularity via the
    LP decision) rather than trusted.
    """
    group = m.group
    if not group.is_involutive:
        raise PreconditionViolated(f"{group.label} is not involutive")
    if any(w == 0 for w in m.weights):
        raise PreconditionViolated("obstruction test needs strictly positive weights")
    am = build_action_matrix(m)
    n = group.order - 1
    threshold = Fraction(n, n + 1)
    alpha0 = m.weights[group.identity]
    det = am.matrix.det()
    obstructed = alpha0 > threshold
    if obstructed:
        if det == 0:
            raise RuntimeError("internal error: dominant action matrix with zero determinant")
        verdict = decide_regular(m)
        if verdict.regular:
            raise RuntimeError("internal error: obstructed measure decided regular")
    return ObstructionReport(obstructed, threshold, alpha0, det)


@dataclass(frozen=True)
class ComposedSystemSolution:
    """Exact description of {beta : A^2 beta = alpha} and its simplex slice.

    particular/nullspace describe the affine solution set (particular is None
    when even the unconstrained system is inconsistent).  feasible_point is a
    probability vector solving the system, or None; sigma = A beta for that
    point is the intermediate one-sided convolution.
    """

    action: ActionMatrix
    squared: RationalMatrix
    particular: tuple[Fraction, ...] | None
    nullspace: tuple[tuple[Fraction, ...], ...]
    feasible: bool
    feasible_point: tuple[Fraction, ...] | None
    sigma: tuple[Fraction, ...] | None


def solve_composed_system(m: ProbMeasure) -> ComposedSystemSolution:
    """Solve A^2 beta = alpha exactly, then intersect with the simplex via LP."""
    am = build_action_matrix(m)
    alpha = am.alpha
    squared = am.matrix @ am.matrix
    particular, nullspace = solve_affine(squared, alpha)
    size = len(alpha)
    rows = list(squared.entries) + [tuple([ONE] * size)]
    rhs = alpha + (ONE,)
    point = lp_feasible(LPProblem(RationalMatrix(tuple(rows)), rhs))
    sigma = am.matrix.matvec(point) if point is not None else None
    return ComposedSystemSolution(
        action=am,
        squared=squared,
        particular=particular,
        nullspace=tuple(nullspace),
        feasible=point is not None,
        feasible_point=point,
        sigma=sigma,
    )
