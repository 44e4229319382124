"""Finite groups as fully validated Cayley tables over 0-based element indices.

Built-in families (cyclic, elementary abelian 2-groups, dihedral, quaternion,
symmetric, direct products) all place the identity at index 0.  Raw tables may
put it anywhere; validation locates it.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .config import ENV_MAX_ORDER, DEFAULT_CONFIG
from .errors import GroupMismatch, SpecOutOfRange, TableInvalid


def _effective_max_order(max_order: int | None) -> int:
    if max_order is not None:
        return max_order
    env = os.environ.get(ENV_MAX_ORDER)
    if env is not None:
        return int(env)
    return DEFAULT_CONFIG.max_order


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table.

    cayley[a][b] is the index of a*b.  The table is validated on construction,
    so instances always satisfy the group axioms.
    """

    order: int
    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    label: str
    family: tuple | None = field(default=None, compare=False, repr=False)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def is_abelian(self) -> bool:
        c = self.cayley
        n = self.order
        return all(c[a][b] == c[b][a] for a in range(n) for b in range(a))

    @cached_property
    def is_involutive(self) -> bool:
        """True when every element is its own inverse."""
        c = self.cayley
        return all(c[a][a] == self.identity for a in range(self.order))

    def __repr__(self) -> str:  # keep reprs short; tables can be large
        return f"FiniteGroup({self.label}, order={self.order})"


def _validate_table(table: Sequence[Sequence[int]]) -> tuple[int, tuple[int, ...]]:
    """Check all group axioms on a square table; return (identity, inverses).

    Raises TableInvalid naming the failed axiom and the offending indices.
    """
    n = len(table)
    if n == 0:
        raise TableInvalid("empty table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise TableInvalid(f"table is not square: row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise TableInvalid(f"entry out of range: table[{i}][{j}] = {v!r}")
    # Latin square: rows and columns are permutations (cancellation laws)
    full = set(range(n))
    for i in range(n):
        if set(table[i]) != full:
            raise TableInvalid(f"row {i} is not a permutation of 0..{n - 1}")
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            raise TableInvalid(f"column {j} is not a permutation of 0..{n - 1}")
    # two-sided identity
    identity = None
    for e in range(n):
        if all(table[e][j] == j for j in range(n)) and all(table[i][e] == i for i in range(n)):
            identity = e
            break
    if identity is None:
        raise TableInvalid("no two-sided identity element")
    # associativity, O(n^3)
    for a in range(n):
        ra = table[a]
        for b in range(n):
            ab = ra[b]
            rab = table[ab]
            rb = table[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise TableInvalid(f"associativity fails at indices ({a}, {b}, {c})")
    # two-sided inverses (guaranteed by the above, but compute and confirm)
    inverse = []
    for a in range(n):
        b = table[a].index(identity)
        if table[b][a] != identity:
            raise TableInvalid(f"element {a} has no two-sided inverse")
        inverse.append(b)
    return identity, tuple(inverse)


def _build(table: Sequence[Sequence[int]], label: str, family: tuple | None,
           max_order: int | None) -> FiniteGroup:
    cap = _effective_max_order(max_order)
    if len(table) > cap:
        raise SpecOutOfRange(f"group order {len(table)} exceeds cap {cap}")
    identity, inverse = _validate_table(table)
    cayley = tuple(tuple(row) for row in table)
    return FiniteGroup(len(table), cayley, identity, inverse, label, family)


def cyclic(n: int, max_order: int | None = None) -> FiniteGroup:
    """Integers mod n under addition."""
    if n < 1:
        raise SpecOutOfRange(f"cyclic group needs n >= 1, got {n}")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return _build(table, f"Z{n}", ("cyclic", n), max_order)


def elementary_abelian_2(k: int, max_order: int | None = None) -> FiniteGroup:
    """(Z2)^k: k-bit vectors under XOR."""
    if k < 1:
        raise SpecOutOfRange(f"elementary abelian 2-group needs k >= 1, got {k}")
    n = 2**k
    table = [[i ^ j for j in range(n)] for i in range(n)]
    return _build(table, f"Z2^{k}", ("elementary_abelian_2", k), max_order)


def dihedral(n: int, max_order: int | None = None) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n.

    Index i < n is the rotation r^i; index n+i is the reflection r^i * s.
    """
    if n < 1:
        raise SpecOutOfRange(f"dihedral group needs n >= 1, got {n}")
    order = 2 * n

    def idx(i: int, f: int) -> int:
        return f * n + (i % n)

    table = [[0] * order for _ in range(order)]
    for i in range(n):
        for f in (0, 1):
            for j in range(n):
                for g in (0, 1):
                    # (r^i s^f)(r^j s^g) = r^(i + (-1)^f j) s^(f xor g)
                    jj = j if f == 0 else -j
                    table[idx(i, f)][idx(j, g)] = idx(i + jj, f ^ g)
    return _build(table, f"D{n}", ("dihedral", n), max_order)


_QUAT_UNIT_MUL = {
    # (u, v) -> (sign, unit) for units 0:1, 1:i, 2:j, 3:k
    (1, 1): (1, 0), (2, 2): (1, 0), (3, 3): (1, 0),
    (1, 2): (0, 3), (2, 3): (0, 1), (3, 1): (0, 2),
    (2, 1): (1, 3), (3, 2): (1, 1), (1, 3): (1, 2),
}


def quaternion8(max_order: int | None = None) -> FiniteGroup:
    """The quaternion group {+-1, +-i, +-j, +-k}; index 2u+s for unit u, sign s."""
    def mul(a: int, b: int) -> int:
        ua, sa = divmod(a, 2)
        ub, sb = divmod(b, 2)
        if ua == 0:
            s, u = 0, ub
        elif ub == 0:
            s, u = 0, ua
        else:
            s, u = _QUAT_UNIT_MUL[(ua, ub)]
        return 2 * u + (sa ^ sb ^ s)

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    return _build(table, "Q8", ("quaternion8",), max_order)


def symmetric(n: int, max_order: int | None = None) -> FiniteGroup:
    """All permutations of n points, ordered lexicographically as tuples."""
    if n < 1:
        raise SpecOutOfRange(f"symmetric group needs n >= 1, got {n}")
    perms = list(itertools.permutations(range(n)))
    if len(perms) > _effective_max_order(max_order):
        raise SpecOutOfRange(f"group order {len(perms)} exceeds cap {_effective_max_order(max_order)}")
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x)): apply q first
    table = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return _build(table, f"S{n}", ("symmetric", n), max_order)


def direct_product(*factors: FiniteGroup, max_order: int | None = None) -> FiniteGroup:
    """Componentwise product; element index is lexicographic, (i, j) -> i*|H| + j."""
    if len(factors) < 2:
        raise SpecOutOfRange("direct product needs at least two factors")
    result = factors[0]
    for other in factors[1:]:
        n1, n2 = result.order, other.order
        table = [[0] * (n1 * n2) for _ in range(n1 * n2)]
        for i1 in range(n1):
            for j1 in range(n2):
                a = i1 * n2 + j1
                for i2 in range(n1):
                    for j2 in range(n2):
                        table[a][i2 * n2 + j2] = result.cayley[i1][i2] * n2 + other.cayley[j1][j2]
        fam = None
        if result.family is not None and other.family is not None:
            fam = ("product", result.family, other.family)
        result = _build(table, f"{result.label}x{other.label}", fam, max_order)
    return result


def from_table(table: Sequence[Sequence[int]], label: str = "table",
               max_order: int | None = None) -> FiniteGroup:
    """Group from a raw multiplication table; all axioms are checked."""
    return _build(table, label, None, max_order)


def make_group(spec: Mapping, max_order: int | None = None) -> FiniteGroup:
    """Build a group from a JSON-style spec dict keyed by "kind"."""
    if not isinstance(spec, Mapping) or "kind" not in spec:
        raise ValueError("group spec must be a mapping with a 'kind' key")
    kind = spec["kind"]
    if kind == "cyclic":
        return cyclic(int(spec["n"]), max_order)
    if kind == "elementary_abelian_2":
        return elementary_abelian_2(int(spec["k"]), max_order)
    if kind == "dihedral":
        return dihedral(int(spec["n"]), max_order)
    if kind == "quaternion8":
        return quaternion8(max_order)
    if kind == "symmetric":
        return symmetric(int(spec["n"]), max_order)
    if kind == "product":
        factors = [make_group(f, max_order) for f in spec["factors"]]
        return direct_product(*factors, max_order=max_order)
    if kind == "table":
        return from_table(spec["table"], str(spec.get("label", "table")), max_order)
    raise ValueError(f"unknown group kind: {kind!r}")


def group_spec(group: FiniteGroup) -> dict:
    """JSON-ready spec dict that reconstructs the group via make_group."""
    def from_family(fam: tuple) -> dict:
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
            return {"kind": "product", "factors": [from_family(f) for f in fam[1:]]}
        raise ValueError(f"unknown family {fam!r}")

    if group.family is not None:
        return from_family(group.family)
    return {"kind": "table", "table": [list(row) for row in group.cayley], "label": group.label}


def element_order(group: FiniteGroup, g: int) -> int:
    """Smallest k >= 1 with g^k = identity."""
    if not 0 <= g < group.order:
        raise ValueError(f"element index {g} out of range for order {group.order}")
    k, x = 1, g
    while x != group.identity:
        x = group.mul(x, g)
        k += 1
    return k


@dataclass(frozen=True)
class ElementSet:
    """A subset of a group's elements, stored as sorted unique indices."""

    group: FiniteGroup
    indices: tuple[int, ...]

    def __contains__(self, g: int) -> bool:
        return g in self.indices

    def __len__(self) -> int:
        return len(self.indices)


def element_set(group: FiniteGroup, indices: Iterable[int]) -> ElementSet:
    idx = sorted(set(indices))
    for g in idx:
        if not 0 <= g < group.order:
            raise ValueError(f"element index {g} out of range for order {group.order}")
    return ElementSet(group, tuple(idx))


def set_product(group: FiniteGroup, a: ElementSet, b: ElementSet) -> ElementSet:
    """The product set {x*y : x in a, y in b}."""
    if a.group is not group and a.group != group:
        raise GroupMismatch("first set lives on a different group")
    if b.group is not group and b.group != group:
        raise GroupMismatch("second set lives on a different group")
    out = {group.cayley[x][y] for x in a.indices for y in b.indices}
    return ElementSet(group, tuple(sorted(out)))


@dataclass(frozen=True)
class Subgroup:
    """An ElementSet verified to be closed and to contain the identity."""

    members: ElementSet

    @property
    def group(self) -> FiniteGroup:
        return self.members.group

    @property
    def indices(self) -> tuple[int, ...]:
        return self.members.indices

    def __len__(self) -> int:
        return len(self.members)


def closure_of(group: FiniteGroup, generators: Iterable[int]) -> tuple[int, ...]:
    """Smallest subgroup containing the generators, as sorted indices.

    Closure under multiplication suffices: a finite subset of a group closed
    under products and containing the identity is a subgroup.
    """
    cay = group.cayley
    members = {group.identity} | set(generators)
    frontier = list(members)
    while frontier:
        snapshot = list(members)
        fresh = set()
        for x in frontier:
            for y in snapshot:
                for z in (cay[x][y], cay[y][x]):
                    if z not in members and z not in fresh:
                        fresh.add(z)
        members |= fresh
        frontier = list(fresh)
    return tuple(sorted(members))


def as_subgroup(group: FiniteGroup, indices: Iterable[int]) -> Subgroup:
    """Wrap indices as a Subgroup, verifying closure and identity membership."""
    members = element_set(group, indices)
    if group.identity not in members.indices:
        raise ValueError("subgroup must contain the identity")
    idx = set(members.indices)
    for x in members.indices:
        for y in members.indices:
            if group.cayley[x][y] not in idx:
                raise ValueError(f"set not closed: {x}*{y} falls outside")
    return Subgroup(members)


def enumerate_subgroups(group: FiniteGroup, max_order: int | None = None) -> list[Subgroup]:
    """All subgroups, sorted by size then lexicographically by element indices.

    Works by closing generator sets: every subgroup is reached by repeatedly
    adjoining one outside element to a known subgroup.
    """
    cap = max_order if max_order is not None else DEFAULT_CONFIG.subgroup_max_order
    if group.order > cap:
        raise SpecOutOfRange(f"subgroup enumeration capped at order {cap}, group has {group.order}")
    trivial = (group.identity,)
    found = {trivial}
    queue = [trivial]
    while queue:
        h = queue.pop()
        hset = set(h)
        for g in group.elements():
            if g in hset:
                continue
            k = closure_of(group, h + (g,))
            if k not in found:
                found.add(k)
                queue.append(k)
    order = group.order
    for h in found:
        if order % len(h) != 0:
            raise RuntimeError(f"internal error: subgroup size {len(h)} does not divide {order}")
    ordered = sorted(found, key=lambda t: (len(t), t))
    return [Subgroup(ElementSet(group, t)) for t in ordered]


def builtin_groups(max_order: int, include_products: bool = False) -> list[FiniteGroup]:
    """The canonical built-in families instantiated at every order <= max_order."""
    out: list[FiniteGroup] = []
    n = 1
    while n <= max_order:
        out.append(cyclic(n))
        n += 1
    k = 1
    while 2**k <= max_order:
        out.append(elementary_abelian_2(k))
        k += 1
    n = 1
    while 2 * n <= max_order:
        out.append(dihedral(n))
        n += 1
    if max_order >= 8:
        out.append(quaternion8())
    n = 1
    f = 1
    while f <= max_order:
        out.append(symmetric(n))
        n += 1
        f *= n
    if include_products and max_order >= 8:
        out.append(direct_product(cyclic(2), cyclic(4)))
    return out
