"""Finite groups given by full multiplication tables, and their subgroups."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import gcd
from typing import Iterable, Sequence


class GroupAxiomError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Elements are the indices ``0..size-1``; ``mul[a][b]`` is the index of ``a*b``."""

    size: int
    mul: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    _hash: int = field(default=0, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(self.mul))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.mul == other.mul

    def __hash__(self):
        return self._hash

    def __len__(self):
        return self.size

    @property
    def elements(self) -> range:
        return range(self.size)

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        r = self.identity
        for _ in range(k):
            r = self.mul[r][a]
        return r

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul[x][a]
            k += 1
        return k

    def exponent(self) -> int:
        e = 1
        for a in self.elements:
            o = self.element_order(a)
            e = e * o // gcd(e, o)
        return e

    def is_abelian(self) -> bool:
        m = self.mul
        return all(m[a][b] == m[b][a] for a in self.elements for b in range(a))

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(self.elements))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        """Validated subgroup from an explicit element list."""
        elems = tuple(sorted(set(elements)))
        for x in elems:
            if not 0 <= x < self.size:
                raise GroupAxiomError(f"element {x} is not in the group")
        s = set(elems)
        if self.identity not in s:
            raise GroupAxiomError("subset does not contain the identity")
        for a in elems:
            if self.inv[a] not in s:
                raise GroupAxiomError(f"subset not closed under inverses at {a}")
            for b in elems:
                if self.mul[a][b] not in s:
                    raise GroupAxiomError(f"subset not closed under products at ({a}, {b})")
        return Subgroup(self, elems)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def __iter__(self):
        return iter(self.elements)

    @property
    def _set(self) -> frozenset[int]:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_cached_set", s)
        return s

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def issubset(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in index order."""
        G = self.parent
        gens: list[int] = []
        span = {G.identity}
        for x in self.elements:
            if x not in span:
                gens.append(x)
                span = set(subgroup_generated(G, gens).elements)
                if len(span) == len(self.elements):
                    break
        return tuple(gens)


def from_table(mul: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> FiniteGroup:
    """Validate a multiplication table and build the group.

    Raises :class:`GroupAxiomError` naming the first violated axiom.
    """
    n = len(mul)
    if n == 0:
        raise GroupAxiomError("empty table")
    table = tuple(tuple(int(x) for x in row) for row in mul)
    for i, row in enumerate(table):
        if len(row) != n:
            raise GroupAxiomError(f"table is not square: row {i} has length {len(row)}")
        for x in row:
            if not 0 <= x < n:
                raise GroupAxiomError(f"row {i} contains out-of-range entry {x}")
    e = next((a for a in range(n)
              if all(table[a][b] == b and table[b][a] == b for b in range(n))), None)
    if e is None:
        raise GroupAxiomError("no identity element")
    inv = []
    for a in range(n):
        b = next((b for b in range(n) if table[a][b] == e and table[b][a] == e), None)
        if b is None:
            raise GroupAxiomError(f"element {a} has no inverse")
        inv.append(b)
    for a in range(n):
        ra = table[a]
        for b in range(n):
            ab = ra[b]
            rb = table[b]
            rab = table[ab]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise GroupAxiomError(f"not associative on triple ({a}, {b}, {c})")
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise GroupAxiomError(f"{len(labels)} labels for {n} elements")
    return FiniteGroup(n, table, e, tuple(inv), labels)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    return FiniteGroup(n, tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
                       0, tuple((-a) % n for a in range(n)), tuple(str(a) for a in range(n)))


def unit_group_mod(m: int) -> FiniteGroup:
    """(Z/m)^*, labelled by residues in increasing order."""
    if m < 2:
        raise ValueError("m must be at least 2")
    units = [a for a in range(m) if gcd(a, m) == 1]
    index = {u: i for i, u in enumerate(units)}
    table = tuple(tuple(index[(a * b) % m] for b in units) for a in units)
    inv = tuple(index[pow(a, -1, m)] for a in units)
    return FiniteGroup(len(units), table, index[1], inv, tuple(str(u) for u in units))


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with (g, h) at index g*|H| + h."""
    m = H.size
    n = G.size * m
    table = tuple(
        tuple(G.mul[a // m][b // m] * m + H.mul[a % m][b % m] for b in range(n))
        for a in range(n))
    inv = tuple(G.inv[a // m] * m + H.inv[a % m] for a in range(n))
    labels = tuple(f"({G.label(a // m)},{H.label(a % m)})" for a in range(n))
    return FiniteGroup(n, table, G.identity * m + H.identity, inv, labels)


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on {0..n-1}, composition (s*t)(x) = s(t(x)); identity is index 0."""
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(s[t[x]] for x in range(n))] for t in perms] for s in perms]
    labels = ["".join(str(x) for x in p) for p in perms]
    return from_table(table, labels)


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    span = {G.identity}
    frontier = [G.identity]
    gens = list(gens)
    for g in gens:
        if not 0 <= g < G.size:
            raise GroupAxiomError(f"generator {g} is not in the group")
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul[x][g]
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(span)))


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    gens = G.whole().generators() or (G.identity,)
    return all(G.conj(g, h) in H for g in gens for h in H.generators())


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """G/N with cosets numbered by their smallest element; returns (group, projection)."""
    if not is_normal(G, N):
        raise GroupAxiomError("cannot form the quotient by a non-normal subgroup")
    proj = [-1] * G.size
    reps: list[int] = []
    for g in G.elements:
        if proj[g] == -1:
            k = len(reps)
            reps.append(g)
            for n in N:
                proj[G.mul[g][n]] = k
    table = tuple(tuple(proj[G.mul[a][b]] for b in reps) for a in reps)
    inv = tuple(proj[G.inv[a]] for a in reps)
    labels = tuple(G.label(a) + "N" for a in reps) if G.labels else None
    Q = FiniteGroup(len(reps), table, proj[G.identity], inv, labels)
    return Q, tuple(proj)


def image(H: Subgroup, target: FiniteGroup, proj: Sequence[int]) -> Subgroup:
    return Subgroup(target, tuple(sorted({proj[h] for h in H})))


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    seen = [False] * G.size
    classes = []
    for x in G.elements:
        if not seen[x]:
            cls = sorted({G.conj(g, x) for g in G.elements})
            for y in cls:
                seen[y] = True
            classes.append(tuple(cls))
    return classes
