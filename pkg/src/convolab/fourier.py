"""Non-commutative Fourier analysis on the built-in group families.

The transform of a measure is the block tuple mu_hat(pi) = sum_g mu(g) pi(g^-1)
over a unitary dual; convolution becomes blockwise matrix product in reversed
order.  Floats propose candidates here; every affirmative claim about a
measure is re-verified with exact rational arithmetic before being reported.
"""

from __future__ import annotations

import cmath
import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .config import DEFAULT_CONFIG, ToolConfig
from .errors import DimensionMismatch, RationalizationFailed, UnsupportedGroup
from .groups import FiniteGroup
from .measures import ProbMeasure, measure
from .regularity import is_generalized_inverse


@dataclass(frozen=True)
class Irrep:
    """A unitary irreducible representation: one dim x dim matrix per element."""

    label: str
    dim: int
    matrices: tuple[np.ndarray, ...]

    def __call__(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def character(self) -> np.ndarray:
        return np.array([np.trace(m) for m in self.matrices])


@dataclass(frozen=True)
class UnitaryDual:
    """A complete list of irreducibles; sum of squared dimensions is |G| exactly."""

    group: FiniteGroup
    irreps: tuple[Irrep, ...]

    def __iter__(self):
        return iter(self.irreps)

    def __len__(self) -> int:
        return len(self.irreps)


def _validate_irrep(group: FiniteGroup, rep: Irrep, cfg: ToolConfig) -> None:
    n = group.order
    if len(rep.matrices) != n:
        raise DimensionMismatch(f"irrep {rep.label} has {len(rep.matrices)} matrices, wants {n}")
    eye = np.eye(rep.dim)
    if np.max(np.abs(rep.matrices[group.identity] - eye)) > cfg.rep_tol:
        raise RuntimeError(f"irrep {rep.label}: identity does not map to the identity matrix")
    for g in range(n):
        m = rep.matrices[g]
        if m.shape != (rep.dim, rep.dim):
            raise DimensionMismatch(f"irrep {rep.label}: wrong block shape at element {g}")
        if np.max(np.abs(m @ m.conj().T - eye)) > cfg.rep_tol:
            raise RuntimeError(f"irrep {rep.label}: matrix at element {g} is not unitary")
    for a in range(n):
        ma = rep.matrices[a]
        row = group.cayley[a]
        for b in range(n):
            if np.max(np.abs(ma @ rep.matrices[b] - rep.matrices[row[b]])) > cfg.rep_tol:
                raise RuntimeError(f"irrep {rep.label}: homomorphism fails at ({a}, {b})")
    chi = rep.character()
    if abs(float(np.sum(np.abs(chi) ** 2)) - n) > cfg.char_tol:
        raise RuntimeError(f"irrep {rep.label}: character norm says it is reducible")


def _validate_dual(dual: UnitaryDual, cfg: ToolConfig) -> None:
    n = dual.group.order
    if sum(r.dim**2 for r in dual.irreps) != n:
        raise RuntimeError(f"dual of {dual.group.label}: squared dimensions do not sum to {n}")
    for rep in dual.irreps:
        _validate_irrep(dual.group, rep, cfg)
    chars = [r.character() for r in dual.irreps]
    for i, ci in enumerate(chars):
        for j, cj in enumerate(chars):
            inner = complex(np.vdot(cj, ci)) / n
            want = 1.0 if i == j else 0.0
            if abs(inner - want) > cfg.char_tol:
                raise RuntimeError(
                    f"dual of {dual.group.label}: characters {i} and {j} not orthonormal")


def _freeze(a: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(a, dtype=complex)
    out.flags.writeable = False
    return out


def _one_dim(label: str, values) -> Irrep:
    mats = tuple(_freeze(np.array([[v]])) for v in values)
    return Irrep(label, 1, mats)


def _root_of_unity(m: int, n: int) -> complex:
    """exp(2 pi i m / n), exact at quarter turns to avoid imaginary dust."""
    m %= n
    if 4 * m % n == 0:
        return (1.0, 1.0j, -1.0, -1.0j)[4 * m // n]
    return cmath.exp(2j * cmath.pi * m / n)


def _cyclic_dual(n: int) -> list[Irrep]:
    out = []
    for k in range(n):
        out.append(_one_dim(f"chi{k}", [_root_of_unity(k * j, n) for j in range(n)]))
    return out


def _elementary_abelian_2_dual(k: int) -> list[Irrep]:
    n = 2**k
    out = []
    for mask in range(n):
        out.append(_one_dim(f"chi{mask}",
                            [(-1.0) ** bin(mask & g).count("1") for g in range(n)]))
    return out


def _dihedral_dual(n: int) -> list[Irrep]:
    order = 2 * n

    def split(idx: int) -> tuple[int, int]:
        return idx % n, idx // n  # (rotation exponent, reflection flag)

    out = [_one_dim("triv", [1.0] * order),
           _one_dim("sgn_s", [(-1.0) ** f for i, f in map(split, range(order))])]
    if n % 2 == 0:
        out.append(_one_dim("sgn_r", [(-1.0) ** i for i, f in map(split, range(order))]))
        out.append(_one_dim("sgn_rs", [(-1.0) ** (i + f) for i, f in map(split, range(order))]))
    refl = np.array([[1.0, 0.0], [0.0, -1.0]])
    for h in range(1, (n - 1) // 2 + 1):
        mats = []
        for idx in range(order):
            i, f = split(idx)
            t = 2 * math.pi * h * i / n
            rot = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
            mats.append(_freeze(rot @ refl if f else rot))
        out.append(Irrep(f"rho{h}", 2, tuple(mats)))
    return out


def _quaternion8_dual() -> list[Irrep]:
    # element index 2u + s: unit u in (1, i, j, k), sign s; the four linear
    # characters kill -1, so they only depend on the unit
    def signs(plus_units) -> list[float]:
        return [1.0 if g // 2 in plus_units else -1.0 for g in range(8)]

    unit_mats = [np.eye(2, dtype=complex),
                 np.array([[1j, 0], [0, -1j]]),
                 np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex),
                 np.array([[0, 1j], [1j, 0]])]
    two = tuple(_freeze(((-1.0) ** s) * unit_mats[u]) for u, s in (divmod(g, 2) for g in range(8)))
    return [
        _one_dim("triv", signs({0, 1, 2, 3})),
        _one_dim("chi_i", signs({0, 1})),
        _one_dim("chi_j", signs({0, 2})),
        _one_dim("chi_k", signs({0, 3})),
        Irrep("spin", 2, two),
    ]


def _perm_parity(p: tuple[int, ...]) -> int:
    inv = sum(1 for a, b in itertools.combinations(range(len(p)), 2) if p[a] > p[b])
    return -1 if inv % 2 else 1


def _sum_zero_basis(n: int) -> np.ndarray:
    """n x (n-1) orthonormal basis of the subspace where coordinates sum to 0."""
    cols = []
    for k in range(1, n):
        v = np.zeros(n)
        v[:k] = 1.0
        v[k] = -float(k)
        cols.append(v / math.sqrt(k * (k + 1)))
    return np.column_stack(cols)


def _symmetric_dual(n: int) -> list[Irrep]:
    perms = list(itertools.permutations(range(n)))
    order = len(perms)
    out = [_one_dim("triv", [1.0] * order)]
    if n >= 2:
        out.append(_one_dim("sgn", [float(_perm_parity(p)) for p in perms]))
    if n >= 3:
        basis = _sum_zero_basis(n)
        std = []
        for p in perms:
            pm = np.zeros((n, n))
            for j in range(n):
                pm[p[j], j] = 1.0
            std.append(basis.T @ pm @ basis)
        out.append(Irrep("std", n - 1, tuple(_freeze(m) for m in std)))
        if n == 4:
            out.append(Irrep("sgn_std", 3,
                             tuple(_freeze(_perm_parity(p) * m) for p, m in zip(perms, std))))
            out.append(_pairing_quotient_irrep(perms))
    return out


def _pairing_quotient_irrep(perms: list[tuple[int, ...]]) -> Irrep:
    """The 2-dim irrep of S4 pulled back from its action on the three pairings."""
    pairings = [frozenset({frozenset({0, 1}), frozenset({2, 3})}),
                frozenset({frozenset({0, 2}), frozenset({1, 3})}),
                frozenset({frozenset({0, 3}), frozenset({1, 2})})]
    s3 = list(itertools.permutations(range(3)))
    s3_mats = {}
    basis = _sum_zero_basis(3)
    for q in s3:
        pm = np.zeros((3, 3))
        for j in range(3):
            pm[q[j], j] = 1.0
        s3_mats[q] = basis.T @ pm @ basis
    mats = []
    for p in perms:
        image = []
        for t in range(3):
            moved = frozenset(frozenset(p[x] for x in pair) for pair in pairings[t])
            image.append(pairings.index(moved))
        tau = tuple(image)
        mats.append(_freeze(s3_mats[tau]))
    return Irrep("pairs", 2, tuple(mats))


def _product_dual(group: FiniteGroup) -> list[Irrep]:
    assert group.family is not None and group.family[0] == "product"
    from .groups import make_group

    # rebuild the two factors from the family descriptor
    left = make_group(_family_to_spec(group.family[1]))
    right = make_group(_family_to_spec(group.family[2]))
    dl = unitary_dual(left)
    dr = unitary_dual(right)
    nr = right.order
    out = []
    for a in dl.irreps:
        for b in dr.irreps:
            mats = tuple(_freeze(np.kron(a.matrices[i], b.matrices[j]))
                         for i in range(left.order) for j in range(nr))
            out.append(Irrep(f"{a.label}*{b.label}", a.dim * b.dim, mats))
    return out


def _family_to_spec(fam: tuple) -> dict:
    kind = fam[0]
    if kind == "cyclic":
        return {"kind": "cyclic", "n": fam[1]}
    if kind == "elementary_abelian_2":
        return {"kind": "elementary_abelian_2", "k": fam[1]}
    if kind == "dihedral":
        return {"kind": "dihedral", "n": fam[1]}
    if kind == "quaternion8":
        return {"kind": "quaternion8"}
    if kind == "symmetric":
        return {"kind": "symmetric", "n": fam[1]}
    if kind == "product":
        return {"kind": "product", "factors": [_family_to_spec(f) for f in fam[1:]]}
    raise UnsupportedGroup(f"no dual construction for family {fam!r}")


@lru_cache(maxsize=128)
def _dual_cached(group: FiniteGroup) -> UnitaryDual:
    fam = group.family
    if fam is None:
        raise UnsupportedGroup(
            f"{group.label}: no unitary dual construction for raw-table groups")
    kind = fam[0]
    if kind == "cyclic":
        irreps = _cyclic_dual(fam[1])
    elif kind == "elementary_abelian_2":
        irreps = _elementary_abelian_2_dual(fam[1])
    elif kind == "dihedral":
        irreps = _dihedral_dual(fam[1])
    elif kind == "quaternion8":
        irreps = _quaternion8_dual()
    elif kind == "symmetric":
        if fam[1] > 4:
            raise UnsupportedGroup(f"symmetric dual stored only up to S4, got S{fam[1]}")
        irreps = _symmetric_dual(fam[1])
    elif kind == "product":
        irreps = _product_dual(group)
    else:
        raise UnsupportedGroup(f"no dual construction for family {fam!r}")
    dual = UnitaryDual(group, tuple(irreps))
    _validate_dual(dual, DEFAULT_CONFIG)
    return dual


def unitary_dual(group: FiniteGroup) -> UnitaryDual:
    """A validated unitary dual for any built-in family (raw tables unsupported)."""
    return _dual_cached(group)


@dataclass(frozen=True)
class CompatibleFunction:
    """One complex dim x dim block per irrep of a dual."""

    dual: UnitaryDual
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.blocks) != len(self.dual.irreps):
            raise DimensionMismatch("one block per irrep required")
        for rep, blk in zip(self.dual.irreps, self.blocks):
            if blk.shape != (rep.dim, rep.dim):
                raise DimensionMismatch(
                    f"block for {rep.label} has shape {blk.shape}, wants ({rep.dim}, {rep.dim})")

    def to_json(self) -> dict:
        out = []
        for rep, blk in zip(self.dual.irreps, self.blocks):
            entries = [[[float(v.real), float(v.imag)] for v in row] for row in blk]
            out.append({"label": rep.label, "dim": rep.dim, "entries": entries})
        return {"group": self.dual.group.label, "blocks": out}


def fourier_transform(m: ProbMeasure, dual: UnitaryDual | None = None) -> CompatibleFunction:
    """mu_hat(pi) = sum_g mu(g) pi(g^-1)."""
    if dual is None:
        dual = unitary_dual(m.group)
    inv = m.group.inverse
    supp = [(g, float(w)) for g, w in enumerate(m.weights) if w]
    blocks = []
    for rep in dual.irreps:
        acc = np.zeros((rep.dim, rep.dim), dtype=complex)
        for g, w in supp:
            acc += w * rep.matrices[inv[g]]
        blocks.append(_freeze(acc))
    return CompatibleFunction(dual, tuple(blocks))


def inverse_fourier(cf: CompatibleFunction) -> np.ndarray:
    """f(g) = (1/|G|) sum_pi d_pi trace(pi(g) gamma(pi)); exact inverse of the transform."""
    group = cf.dual.group
    n = group.order
    out = np.zeros(n, dtype=complex)
    for rep, blk in zip(cf.dual.irreps, cf.blocks):
        for g in range(n):
            out[g] += rep.dim * np.trace(rep.matrices[g] @ blk)
    return out / n


def _pinv_with_cutoff(blk: np.ndarray, cutoff: float) -> np.ndarray:
    u, s, vh = np.linalg.svd(blk)
    inv = np.array([1.0 / v if v > cutoff else 0.0 for v in s])
    return vh.conj().T @ np.diag(inv) @ u.conj().T


def pseudo_inverse_blockwise(cf: CompatibleFunction,
                             cfg: ToolConfig = DEFAULT_CONFIG) -> CompatibleFunction:
    """Moore-Penrose pseudoinverse of every block, with a relative singular cutoff.

    Singular values below pinv_rtol times the largest singular value across
    the whole block tuple count as zero, so blocks made of float dust invert
    to zero instead of noise.  The two product Penrose identities are
    re-checked within penrose_tol before returning.
    """
    svals = [np.linalg.svd(blk, compute_uv=False) for blk in cf.blocks]
    global_max = max((float(s.max()) for s in svals if s.size), default=0.0)
    cutoff = cfg.pinv_rtol * global_max
    blocks = []
    for rep, blk in zip(cf.dual.irreps, cf.blocks):
        p = _pinv_with_cutoff(blk, cutoff)
        scale = max(1.0, float(np.linalg.norm(blk)))
        if float(np.linalg.norm(blk @ p @ blk - blk)) > cfg.penrose_tol * scale:
            raise RuntimeError(f"pseudoinverse of block {rep.label} fails g*p*g = g")
        if float(np.linalg.norm(p @ blk @ p - p)) > cfg.penrose_tol * max(1.0, float(np.linalg.norm(p))):
            raise RuntimeError(f"pseudoinverse of block {rep.label} fails p*g*p = p")
        blocks.append(_freeze(p))
    return CompatibleFunction(cf.dual, tuple(blocks))


def check_delta_regularity(cf: CompatibleFunction,
                           candidate: CompatibleFunction | None = None,
                           cfg: ToolConfig = DEFAULT_CONFIG) -> bool:
    """True when gamma * candidate * gamma = gamma blockwise within penrose_tol.

    With no explicit candidate the blockwise pseudoinverse is used, which
    always passes; the parameter exists so foreign candidates can be tested.
    """
    cand = candidate if candidate is not None else pseudo_inverse_blockwise(cf, cfg)
    for blk, p in zip(cf.blocks, cand.blocks):
        scale = max(1.0, float(np.linalg.norm(blk)))
        if float(np.linalg.norm(blk @ p @ blk - blk)) > cfg.penrose_tol * scale:
            return False
    return True


class CandidateVerdict(str, enum.Enum):
    REGULAR_WITH_WITNESS = "REGULAR_WITH_WITNESS"
    NOT_REGULAR_CERTIFIED = "NOT_REGULAR_CERTIFIED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class FourierCandidate:
    """Result of proposing a generalized inverse through the transform."""

    verdict: CandidateVerdict
    candidate: ProbMeasure | None
    vector: np.ndarray
    min_singular: float
    detail: str


def _rationalize(values: np.ndarray, max_den: int) -> list[Fraction]:
    return [Fraction(float(v)).limit_denominator(max_den) for v in values]


def fourier_ginverse_candidate(m: ProbMeasure,
                               cfg: ToolConfig = DEFAULT_CONFIG) -> FourierCandidate:
    """Propose a generalized inverse of m via blockwise pseudoinversion.

    The inverse transform f of pinv(mu_hat) is examined: if it looks like a
    probability vector it is rounded to rationals and verified exactly (a
    failed verification raises RationalizationFailed rather than passing
    silently); if every block is comfortably invertible, f is the unique
    candidate, so a failed positivity check certifies non-regularity; in all
    other cases the result is inconclusive.
    """
    dual = unitary_dual(m.group)
    gamma = fourier_transform(m, dual)
    pinv = pseudo_inverse_blockwise(gamma, cfg)
    f = inverse_fourier(pinv)
    min_sv = min(float(np.linalg.svd(b, compute_uv=False).min()) for b in gamma.blocks)
    imag_ok = float(np.max(np.abs(f.imag))) <= cfg.positivity_tol
    re = f.real
    nonneg_ok = float(re.min()) >= -cfg.positivity_tol
    sum_ok = abs(float(re.sum()) - 1.0) <= cfg.positivity_tol
    if imag_ok and nonneg_ok and sum_ok:
        weights = _rationalize(re, cfg.rationalize_max_den)
        weights = [w if w > 0 else Fraction(0) for w in weights]
        deficit = 1 - sum(weights)
        if deficit:
            bump = max(range(len(weights)), key=lambda i: weights[i])
            weights[bump] += deficit
        if any(w < 0 for w in weights):
            raise RationalizationFailed(
                "rounded candidate is not a probability vector")
        cand = measure(m.group, weights)
        if not is_generalized_inverse(m, cand):
            raise RationalizationFailed(
                "rounded candidate fails exact verification of m * x * m = m")
        return FourierCandidate(CandidateVerdict.REGULAR_WITH_WITNESS, cand, f, min_sv,
                                "inverse transform of the blockwise pseudoinverse rounds to "
                                "an exactly verified witness")
    if min_sv > cfg.min_singular and imag_ok:
        return FourierCandidate(CandidateVerdict.NOT_REGULAR_CERTIFIED, None, f, min_sv,
                                f"all blocks invertible (min singular value {min_sv:.3e}); the "
                                "unique candidate has a negative entry, so no witness exists")
    return FourierCandidate(CandidateVerdict.INCONCLUSIVE, None, f, min_sv,
                            "some block is near-singular and the candidate fails positivity; "
                            "the transform alone cannot decide")


def dual_to_json(dual: UnitaryDual) -> dict:
    reps = []
    for rep in dual.irreps:
        mats = [[[[float(v.real), float(v.imag)] for v in row] for row in mat]
                for mat in rep.matrices]
        reps.append({"label": rep.label, "dim": rep.dim, "matrices": mats})
    return {"group": dual.group.label, "order": dual.group.order, "irreps": reps}
