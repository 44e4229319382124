"""Exact rational linear algebra: matrices, determinants, affine solves, and
LP feasibility for systems {A x = b, x >= 0} via a phase-1 simplex.

Everything here works over fractions.Fraction; no floats enter any decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix of Fractions, immutable."""

    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "RationalMatrix":
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix needs at least one row and one column")
        width = len(rows[0])
        out = []
        for r in rows:
            if len(r) != width:
                raise DimensionMismatch("ragged rows")
            out.append(tuple(Fraction(v) for v in r))
        return RationalMatrix(tuple(out))

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix(tuple(
            tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.entries)))

    def matvec(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector length {len(v)} != cols {self.cols}")
        return tuple(sum(r[j] * v[j] for j in range(self.cols) if v[j]) for r in self.entries)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        bt = other.transpose().entries
        return RationalMatrix(tuple(
            tuple(sum(ra[k] * cb[k] for k in range(self.cols)) for cb in bt)
            for ra in self.entries))

    def det(self) -> Fraction:
        """Exact determinant via fraction-free (Bareiss) elimination.

        Rows are first scaled to integers; the scaling is divided back out.
        """
        if self.rows != self.cols:
            raise DimensionMismatch("determinant needs a square matrix")
        n = self.rows
        scale = ONE
        m: list[list[int]] = []
        for row in self.entries:
            d = lcm(*(f.denominator for f in row)) if n > 0 else 1
            scale *= d
            m.append([int(f * d) for f in row])
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for r in range(k + 1, n):
                    if m[r][k] != 0:
                        m[k], m[r] = m[r], m[k]
                        sign = -sign
                        break
                else:
                    return ZERO
            pkk = m[k][k]
            for i in range(k + 1, n):
                mik = m[i][k]
                mi = m[i]
                mk = m[k]
                for j in range(k + 1, n):
                    mi[j] = (mi[j] * pkk - mik * mk[j]) // prev
                mi[k] = 0
            prev = pkk
        return Fraction(sign * m[n - 1][n - 1], 1) / scale

    def to_json(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.entries]


def solve_affine(a: RationalMatrix, b: Sequence[Fraction]
                 ) -> tuple[tuple[Fraction, ...] | None, list[tuple[Fraction, ...]]]:
    """Describe the solution set of A x = b exactly.

    Returns (particular, nullspace_basis).  particular is None when the system
    is inconsistent; the basis spans {x : A x = 0} either way.
    """
    if len(b) != a.rows:
        raise DimensionMismatch(f"rhs length {len(b)} != rows {a.rows}")
    rows = a.rows
    cols = a.cols
    aug = [list(a.entries[i]) + [Fraction(b[i])] for i in range(rows)]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    inconsistent = any(all(aug[i][j] == 0 for j in range(cols)) and aug[i][cols] != 0
                       for i in range(r, rows))
    free = [c for c in range(cols) if c not in pivots]
    basis: list[tuple[Fraction, ...]] = []
    for f in free:
        vec = [ZERO] * cols
        vec[f] = ONE
        for i, pc in enumerate(pivots):
            vec[pc] = -aug[i][f]
        basis.append(tuple(vec))
    if inconsistent:
        return None, basis
    part = [ZERO] * cols
    for i, pc in enumerate(pivots):
        part[pc] = aug[i][cols]
    return tuple(part), basis


@dataclass(frozen=True)
class LPProblem:
    """Feasibility problem {x : A x = b, x >= 0}; equality constraints only."""

    a: RationalMatrix
    b: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.b) != self.a.rows:
            raise DimensionMismatch(f"rhs length {len(self.b)} != rows {self.a.rows}")


def lp_feasible(problem: LPProblem) -> tuple[Fraction, ...] | None:
    """Exact feasible point of {A x = b, x >= 0}, or None if none exists.

    Phase-1 simplex over Fractions: minimize the sum of artificial variables,
    with Bland's rule (lowest-index entering column; ties in the ratio test
    broken by lowest basis index) so the iteration provably terminates and is
    deterministic.  Feasible iff the optimum is 0.
    """
    m = problem.a.rows
    n = problem.a.cols
    # tableau rows: [x columns | artificial columns | rhs], rhs made nonnegative
    tab: list[list[Fraction]] = []
    for i in range(m):
        row = list(problem.a.entries[i])
        rhs = problem.b[i]
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        row += [ONE if k == i else ZERO for k in range(m)]
        row.append(rhs)
        tab.append(row)
    basis = [n + i for i in range(m)]
    width = n + m
    # Reduced costs for minimizing the artificial sum, starting basis = artificials.
    # Only real columns may enter; a non-basic artificial is equivalent to a
    # dropped column, which is the standard (and sound) phase-1 simplification.
    z = [-sum(tab[i][j] for i in range(m)) for j in range(n)]
    zval = -sum(tab[i][width] for i in range(m))
    while True:
        enter = next((j for j in range(n) if z[j] < 0), None)
        if enter is None:
            break
        leave = None
        best: Fraction | None = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][width] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            # phase-1 objective is bounded below by 0, so this cannot happen
            raise RuntimeError("internal error: unbounded phase-1 objective")
        pivot_row = tab[leave]
        pv = pivot_row[enter]
        if pv != 1:
            tab[leave] = pivot_row = [v / pv for v in pivot_row]
        for i in range(m):
            if i != leave:
                f = tab[i][enter]
                if f:
                    row = tab[i]
                    tab[i] = [vi - f * vp for vi, vp in zip(row, pivot_row)]
        fz = z[enter]
        if fz:
            z = [vi - fz * vp for vi, vp in zip(z, pivot_row[:n])]
            zval -= fz * pivot_row[width]
        basis[leave] = enter
    if zval != 0:
        return None
    x = [ZERO] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = tab[i][width]
    point = tuple(x)
    if problem.a.matvec(point) != tuple(problem.b):
        raise RuntimeError("internal error: simplex returned a non-solution")
    if any(v < 0 for v in point):
        raise RuntimeError("internal error: simplex returned a negative component")
    return point


def vector_str(v: Iterable[Fraction]) -> list[str]:
    return [str(x) for x in v]
