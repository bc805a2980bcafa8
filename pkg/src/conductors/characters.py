"""Characters on ramified groups and the finite-image conductor formulas.

Every quantity here depends on a representation only through dimensions of
fixed spaces, and ``dim V^H`` is the average of the character over ``H``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Callable, Sequence

from .exactnum import Cyclotomic, as_rational, common_order, embed
from .groups import Subgroup, conjugacy_classes, subgroup_generated
from .ramification import (RamifiedGroup, lower_group, lower_to_upper, upper_group)


class NotACharacterError(ValueError):
    pass


class IntegralityError(ArithmeticError):
    pass


class PreconditionError(ValueError):
    pass


@total_ordering
class _NegativeInfinity:
    """Depth of an unramified character; below every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-oo")

    def __repr__(self):
        return "NegativeInfinity"

    def __str__(self):
        return "-oo"


NegativeInfinity = _NegativeInfinity()


class ClassFunction:
    """Cyclotomic-valued class function, stored per element."""

    def __init__(self, rg: RamifiedGroup, values: Sequence[Cyclotomic | Fraction | int],
                 order: int | None = None):
        G = rg.G
        if len(values) != G.size:
            raise ValueError(f"need {G.size} values, got {len(values)}")
        if order is None:
            order = common_order(v for v in values if isinstance(v, Cyclotomic))
        vals = tuple(embed(v, order) for v in values)
        for cls in conjugacy_classes(G):
            v0 = vals[cls[0]]
            for g in cls[1:]:
                if vals[g] != v0:
                    raise ValueError(
                        f"not a class function: values differ at conjugate elements {cls[0]}, {g}")
        self.rg = rg
        self.order = order
        self.values = vals

    @classmethod
    def from_classes(cls, rg: RamifiedGroup, class_values: Sequence, order: int | None = None):
        """Build from one value per conjugacy class (in :func:`conjugacy_classes` order)."""
        classes = conjugacy_classes(rg.G)
        if len(class_values) != len(classes):
            raise ValueError(f"need {len(classes)} class values, got {len(class_values)}")
        values = [None] * rg.G.size
        for c, v in zip(classes, class_values):
            for g in c:
                values[g] = v
        return cls(rg, values, order)

    def __call__(self, g: int) -> Cyclotomic:
        return self.values[g]

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        if self.rg.G != other.rg.G:
            return False
        n = self.order * other.order // gcd(self.order, other.order)
        return all(embed(a, n) == embed(b, n) for a, b in zip(self.values, other.values))

    def __hash__(self):
        return hash(tuple(self.values))

    @property
    def degree(self) -> Cyclotomic:
        return self.values[self.rg.G.identity]

    def class_values(self) -> list[Cyclotomic]:
        return [self.values[c[0]] for c in conjugacy_classes(self.rg.G)]

    def _combine(self, other: "ClassFunction", op: Callable) -> tuple[int, list[Cyclotomic]]:
        if self.rg.G != other.rg.G:
            raise ValueError("class functions live on different groups")
        n = self.order * other.order // gcd(self.order, other.order)
        return n, [op(embed(a, n), embed(b, n)) for a, b in zip(self.values, other.values)]

    def __add__(self, other):
        n, vals = self._combine(other, lambda a, b: a + b)
        return ClassFunction(self.rg, vals, n)

    def __sub__(self, other):
        n, vals = self._combine(other, lambda a, b: a - b)
        return ClassFunction(self.rg, vals, n)

    def scale(self, c) -> "ClassFunction":
        return ClassFunction(self.rg, [v * c for v in self.values], self.order)

    def __repr__(self):
        return f"{type(self).__name__}({list(self.values)})"


class Character(ClassFunction):
    """A class function claimed to be the trace of a representation."""

    claimed_character = True

    def __init__(self, rg, values, order=None):
        super().__init__(rg, values, order)
        d = self.degree
        if not d.is_rational() or as_rational(d).denominator != 1 or as_rational(d) < 1:
            raise NotACharacterError(f"degree {d!r} is not a positive integer")

    @property
    def dim(self) -> int:
        return int(as_rational(self.degree))

    def __add__(self, other):
        n, vals = self._combine(other, lambda a, b: a + b)
        cls = Character if isinstance(other, Character) else ClassFunction
        return cls(self.rg, vals, n)


def trivial_character(rg: RamifiedGroup, dim: int = 1) -> Character:
    return Character(rg, [dim] * rg.G.size)


def regular_character(rg: RamifiedGroup) -> Character:
    G = rg.G
    return Character(rg, [G.size if g == G.identity else 0 for g in G.elements])


def linear_characters(rg: RamifiedGroup) -> list[Character]:
    """All degree-1 characters, valued in Q(zeta_e) for e the exponent.

    Found by assigning roots of unity to a generating set and keeping the
    assignments that extend consistently to a homomorphism.
    """
    G = rg.G
    e = G.exponent()
    gens = G.whole().generators()
    out = []

    def extend(assign):
        val = {G.identity: 0}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, k in zip(gens, assign):
                    y = G.mul[x][g]
                    v = (val[x] + k) % e
                    if y in val:
                        if val[y] != v:
                            return None
                    else:
                        val[y] = v
                        nxt.append(y)
            frontier = nxt
        return val

    def search(i, assign):
        if i == len(gens):
            val = extend(assign)
            if val is not None:
                out.append(Character(rg, [Cyclotomic.zeta(e, val[g]) for g in G.elements], e))
            return
        o = G.element_order(gens[i])
        for j in range(o):
            search(i + 1, assign + [j * (e // o)])

    search(0, [])
    return out


def fixed_dim(chi: ClassFunction, H: Subgroup) -> int:
    """dim V^H as the average of chi over H."""
    cache = chi.__dict__.setdefault("_fixed_dims", {})
    if H.elements in cache:
        return cache[H.elements]
    total = Cyclotomic.zero(chi.order)
    for h in H:
        total = total + chi.values[h]
    try:
        avg = as_rational(total) / len(H)
    except ValueError as exc:
        raise NotACharacterError(f"average over a subgroup of order {len(H)} is not rational") from exc
    if avg.denominator != 1 or avg < 0:
        raise NotACharacterError(f"average over a subgroup of order {len(H)} is {avg}")
    cache[H.elements] = int(avg)
    return int(avg)


def codim(chi: Character, H: Subgroup) -> int:
    return chi.dim - fixed_dim(chi, H)


def _check_integral(rg: RamifiedGroup, value: Fraction, what: str, strict: bool | None):
    if strict is None:
        strict = rg.realizable
    if strict and (value.denominator != 1 or value < 0):
        raise IntegralityError(f"{what} = {value} is not a nonnegative integer on a realizable instance")


def artin_conductor_sum(chi: Character, strict: bool | None = None) -> Fraction:
    """Sum over i >= 0 of codim V^{G_i} / [G_0 : G_i]."""
    rg = chi.rg
    a = sum((Fraction(codim(chi, H), rg.index_in_inertia(H)) for H in rg.chain), Fraction(0))
    _check_integral(rg, a, "Artin conductor", strict)
    return a


def _segments_lower(rg: RamifiedGroup):
    # Integrand is constant on each (i-1, i); beyond M it vanishes.
    return [(Fraction(i - 1), Fraction(i)) for i in range(0, rg.length + 1)]


def _segments_upper(rg: RamifiedGroup):
    f = rg.phi()
    cuts = [Fraction(-1), Fraction(0)] + [f(i) for i in range(1, rg.length + 1)]
    return list(zip(cuts, cuts[1:]))


def lower_integral_parts(chi: Character) -> tuple[Fraction, Fraction]:
    """(integral over [-1,0], integral over [0,oo)) of codim V^{G_r} / [G_0:G_r] dr."""
    rg = chi.rg
    parts = [Fraction(0), Fraction(0)]
    for lo, hi in _segments_lower(rg):
        H = lower_group(rg, (lo + hi) / 2)
        parts[lo >= 0] += (hi - lo) * Fraction(codim(chi, H), rg.index_in_inertia(H))
    return parts[0], parts[1]


def upper_integral_parts(chi: Character) -> tuple[Fraction, Fraction]:
    """(integral over [-1,0], integral over [0,oo)) of codim V^{G^s} ds."""
    rg = chi.rg
    parts = [Fraction(0), Fraction(0)]
    for lo, hi in _segments_upper(rg):
        H = upper_group(rg, (lo + hi) / 2)
        parts[lo >= 0] += (hi - lo) * codim(chi, H)
    return parts[0], parts[1]


def conductor_lower_integral(chi: Character) -> Fraction:
    return sum(lower_integral_parts(chi))


def conductor_upper_integral(chi: Character) -> Fraction:
    return sum(upper_integral_parts(chi))


def tame_part(chi: Character) -> int:
    return codim(chi, chi.rg.inertia)


def swan_part(chi: Character, strict: bool | None = None) -> Fraction:
    delta = artin_conductor_sum(chi, strict=False) - tame_part(chi)
    _check_integral(chi.rg, delta, "Swan conductor", strict)
    return delta


def induce(f: ClassFunction | Callable[[int], Fraction], H: Subgroup, rg: RamifiedGroup,
           order: int = 1) -> ClassFunction:
    """Ind_H^G of a class function on H (given as a function on H's elements)."""
    G = rg.G
    vals = []
    for g in G.elements:
        total = Cyclotomic.zero(order)
        for x in G.elements:
            c = G.conj(x, g)
            if c in H:
                total = total + embed(f(c), order)
        vals.append(total / len(H))
    return ClassFunction(rg, vals, order)


def _aug_regular_induced(rg: RamifiedGroup, H: Subgroup) -> ClassFunction:
    # Ind_H^G(r_H - 1_H)
    e = rg.G.identity
    n = len(H)
    return induce(lambda h: Fraction(n - 1) if h == e else Fraction(-1), H, rg)


def artin_class_function(rg: RamifiedGroup) -> ClassFunction:
    total = ClassFunction(rg, [0] * rg.G.size)
    for H in rg.chain:
        if not H.is_trivial():
            total = total + _aug_regular_induced(rg, H).scale(Fraction(1, rg.index_in_inertia(H)))
    return total


def swan_class_function(rg: RamifiedGroup) -> ClassFunction:
    a = artin_class_function(rg)
    if rg.inertia.is_trivial():
        return a
    return a - _aug_regular_induced(rg, rg.inertia)


def inner_product(f: ClassFunction, g: ClassFunction) -> Fraction:
    """(1/|G|) sum f(x) g(x^-1).  Raises if the result is not rational."""
    G = f.rg.G
    if G != g.rg.G:
        raise ValueError("class functions live on different groups")
    n = f.order * g.order // gcd(f.order, g.order)
    total = Cyclotomic.zero(n)
    for x in G.elements:
        total = total + embed(f.values[x], n) * embed(g.values[G.inv[x]], n)
    return as_rational(total) / G.size


def tensor(chi1: Character, chi2: Character) -> Character:
    n, vals = chi1._combine(chi2, lambda a, b: a * b)
    return Character(chi1.rg, vals, n)


def is_ramified(chi: Character) -> bool:
    return fixed_dim(chi, chi.rg.inertia) < chi.dim


def depth(chi: Character):
    """sup{s : chi nontrivial on G^s}, or NegativeInfinity if chi is unramified."""
    if not is_ramified(chi):
        return NegativeInfinity
    m = Fraction(0)
    for s, H in lower_to_upper(chi.rg):
        if fixed_dim(chi, H) < chi.dim:
            m = max(m, s)
    return m


def is_irreducible(chi: Character) -> bool:
    return inner_product(chi, chi) == 1


@dataclass(frozen=True)
class DepthReport:
    irreducible: bool
    ramified: bool
    conductor: Fraction
    depth: object
    predicted: Fraction | None
    holds: bool


def check_irreducible_depth_formula(chi: Character) -> DepthReport:
    """For irreducible ramified chi, a(chi) = deg(chi) * (depth + 1)."""
    irr = is_irreducible(chi)
    ram = is_ramified(chi)
    a = artin_conductor_sum(chi)
    m = depth(chi)
    if irr and ram:
        predicted = chi.dim * (m + 1)
        if a != predicted:
            raise AssertionError(f"irreducible depth formula fails: a = {a}, deg*(m+1) = {predicted}")
        return DepthReport(irr, ram, a, m, predicted, True)
    return DepthReport(irr, ram, a, m, None, True)


@dataclass(frozen=True)
class TwistReport:
    lhs: Fraction
    rhs: Fraction
    depth_rho: object
    depth_chi: object

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def more_deeply_ramified(chi_depth, rho_depth) -> bool:
    return chi_depth is not NegativeInfinity and chi_depth > rho_depth


def check_twisting(rho: Character, chi: Character) -> TwistReport:
    """a(rho x chi) = deg(rho) a(chi) when chi is more deeply ramified than rho."""
    if chi.dim != 1:
        raise PreconditionError("twisting character must have degree 1")
    d_rho, d_chi = depth(rho), depth(chi)
    if not more_deeply_ramified(d_chi, d_rho):
        raise PreconditionError(f"not more deeply ramified: depth(chi) = {d_chi}, depth(rho) = {d_rho}")
    lhs = artin_conductor_sum(tensor(rho, chi))
    rhs = rho.dim * artin_conductor_sum(chi)
    return TwistReport(lhs, rhs, d_rho, d_chi)


def character_from_function(rg: RamifiedGroup, f: Callable[[int], object], order: int | None = None):
    return Character(rg, [f(g) for g in rg.G.elements], order)


def inflate(chi: Character, rg: RamifiedGroup, proj) -> Character:
    """Pull chi back along the projection ``proj`` from rg.G onto chi's group."""
    return Character(rg, [chi.values[proj[g]] for g in rg.G.elements], chi.order)


def kernel(chi: Character) -> Subgroup:
    d = chi.degree
    return subgroup_generated(chi.rg.G, [g for g in chi.rg.G.elements if chi.values[g] == d])
