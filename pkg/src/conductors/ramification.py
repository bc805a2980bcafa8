"""Lower/upper ramification filtrations and the Herbrand functions.

A :class:`RamifiedGroup` stores the lower-numbering chain ``G_0 >= G_1 >= ...
>= G_M = 1``; ``G`` itself plays ``G_{-1}``.  For real ``r`` we use
``G_r = G_{ceil(r)}``.  Upper numbering is always derived through ``psi``.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .groups import FiniteGroup, GroupAxiomError, Subgroup, image, is_normal, quotient


class FiltrationError(ValueError):
    pass


@dataclass(frozen=True)
class HerbrandFunction:
    """Continuous increasing piecewise-linear map on [-1, oo).

    ``breakpoints[k] = (x_k, y_k)``; on ``[x_k, x_{k+1}]`` the slope is
    ``slopes[k]`` and the last slope continues to infinity.
    """

    breakpoints: tuple[tuple[Fraction, Fraction], ...]
    slopes: tuple[Fraction, ...]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if x < self.breakpoints[0][0]:
            raise ValueError(f"argument {x} below the domain start {self.breakpoints[0][0]}")
        k = bisect_right([b[0] for b in self.breakpoints], x) - 1
        x0, y0 = self.breakpoints[k]
        return y0 + self.slopes[k] * (x - x0)

    def inverse(self) -> "HerbrandFunction":
        return HerbrandFunction(tuple((y, x) for x, y in self.breakpoints),
                                tuple(1 / s for s in self.slopes))

    def is_concave(self) -> bool:
        return all(a >= b for a, b in zip(self.slopes, self.slopes[1:]))

    def is_convex(self) -> bool:
        return all(a <= b for a, b in zip(self.slopes, self.slopes[1:]))


class RamifiedGroup:
    """A finite group with a lower-numbering ramification filtration."""

    def __init__(self, G: FiniteGroup, chain: Sequence[Subgroup], realizable: bool = False):
        chain = list(chain)
        if not chain:
            chain = [G.trivial()]
        for i, H in enumerate(chain):
            if H.parent != G:
                raise FiltrationError(f"G_{i} is not a subgroup of the given group")
            if not is_normal(G, H):
                raise FiltrationError(f"G_{i} is not normal in G")
        for i in range(len(chain) - 1):
            if not chain[i + 1].issubset(chain[i]):
                raise FiltrationError(f"chain not descending at indices {i}, {i + 1}")
        # canonical form: stop at the first trivial group (the rest would repeat it)
        k = next((i for i, H in enumerate(chain) if H.is_trivial()), None)
        chain = chain[:k + 1] if k is not None else chain + [G.trivial()]
        self.G = G
        self.chain: tuple[Subgroup, ...] = tuple(chain)
        self.realizable = bool(realizable)
        self._phi = None

    @classmethod
    def from_indices(cls, G: FiniteGroup, chain: Sequence[Sequence[int]], realizable=False):
        subs = []
        for i, elems in enumerate(chain):
            try:
                subs.append(G.subgroup(elems))
            except GroupAxiomError as exc:
                raise FiltrationError(f"G_{i}: {exc}") from exc
        return cls(G, subs, realizable)

    def __eq__(self, other):
        if not isinstance(other, RamifiedGroup):
            return NotImplemented
        return self.G == other.G and self.chain == other.chain

    def __hash__(self):
        return hash((self.G, self.chain))

    def __repr__(self):
        orders = ",".join(str(len(H)) for H in self.chain)
        return f"RamifiedGroup(|G|={self.G.size}, lower orders=({orders}), realizable={self.realizable})"

    @property
    def length(self) -> int:
        """M, the index of the first trivial group in the normalized chain."""
        return len(self.chain) - 1

    @property
    def inertia(self) -> Subgroup:
        return self.chain[0]

    def orders(self) -> tuple[int, ...]:
        return tuple(len(H) for H in self.chain)

    def lower(self, i: int) -> Subgroup:
        if i == -1:
            return self.G.whole()
        if i < -1:
            raise ValueError(f"lower index {i} < -1")
        return self.chain[i] if i < len(self.chain) else self.chain[-1]

    def index_in_inertia(self, H: Subgroup) -> int:
        return len(self.inertia) // len(H)

    def phi(self) -> HerbrandFunction:
        if self._phi is None:
            self._phi = _build_phi(self)
        return self._phi

    def psi(self) -> HerbrandFunction:
        return self.phi().inverse()


def _build_phi(rg: RamifiedGroup) -> HerbrandFunction:
    # Slope on (i-1, i) is 1/[G_0:G_i]; merge runs of equal slope.
    points = [(Fraction(-1), Fraction(-1))]
    slopes = [Fraction(1)]
    y = Fraction(0)
    x = Fraction(0)
    for i in range(1, rg.length + 2):
        s = Fraction(1, rg.index_in_inertia(rg.lower(i)))
        if s != slopes[-1]:
            points.append((x, y))
            slopes.append(s)
        x += 1
        y += s
    return HerbrandFunction(tuple(points), tuple(slopes))


def lower_group(rg: RamifiedGroup, r) -> Subgroup:
    r = Fraction(r)
    if r < -1:
        raise ValueError(f"r = {r} is below -1")
    return rg.lower(math.ceil(r))


def phi(rg: RamifiedGroup) -> HerbrandFunction:
    return rg.phi()


def psi(rg: RamifiedGroup) -> HerbrandFunction:
    return rg.psi()


def upper_group(rg: RamifiedGroup, s) -> Subgroup:
    s = Fraction(s)
    if s < -1:
        raise ValueError(f"s = {s} is below -1")
    return lower_group(rg, rg.psi()(s))


def lower_breaks(rg: RamifiedGroup) -> list[int]:
    """Integers i >= 0 with G_i != G_{i+1}."""
    return [i for i in range(rg.length) if rg.chain[i] != rg.chain[i + 1]]


def upper_breaks(rg: RamifiedGroup) -> list[Fraction]:
    f = rg.phi()
    return [f(i) for i in lower_breaks(rg)]


def lower_to_upper(rg: RamifiedGroup) -> list[tuple[Fraction, Subgroup]]:
    """Upper filtration as jumps ``[(s_k, H_k)]``: ``G^t = H_k`` for
    ``s_{k-1} < t <= s_k`` (``s_{-1} = -1``) and ``G^t = 1`` beyond the last."""
    f = rg.phi()
    return [(f(i), rg.chain[i]) for i in lower_breaks(rg)]


def upper_to_lower(G: FiniteGroup, upper: Sequence[tuple[Fraction, Subgroup]],
                   realizable: bool = False) -> RamifiedGroup:
    """Rebuild the lower chain whose upper numbering is ``upper`` (see :func:`lower_to_upper`).

    Consecutive equal groups are merged and trailing trivial groups dropped.
    Raises :class:`FiltrationError` when a jump does not land on an integer
    lower index.
    """
    jumps: list[tuple[Fraction, Subgroup]] = []
    for s, H in upper:
        s = Fraction(s)
        if jumps and s <= jumps[-1][0]:
            raise FiltrationError(f"upper jumps not ascending at s = {s}")
        if jumps and not H.issubset(jumps[-1][1]):
            raise FiltrationError(f"upper groups not descending at s = {s}")
        if jumps and jumps[-1][1] == H:
            jumps[-1] = (s, H)
        else:
            jumps.append((s, H))
    jumps = [(s, H) for s, H in jumps if not H.is_trivial()]
    if not jumps:
        return RamifiedGroup(G, [G.trivial()], realizable)
    inertia = jumps[0][1]
    chain: list[Subgroup] = []
    r_prev, s_prev = Fraction(-1), Fraction(-1)
    for k, (s, H) in enumerate(jumps):
        if k == 0:
            if s < 0:
                raise FiltrationError(f"first upper jump {s} is negative")
            r = s
        else:
            r = r_prev + (s - s_prev) * (len(inertia) // len(H))
        if r.denominator != 1:
            raise FiltrationError(
                f"upper jump at s = {s} maps to non-integral lower index {r}; "
                "not realizable as a step function of psi")
        chain.extend([H] * (int(r) - int(r_prev)))
        r_prev, s_prev = r, s
    return RamifiedGroup(G, chain, realizable)


def quotient_filtration(rg: RamifiedGroup, N: Subgroup) -> tuple[RamifiedGroup, tuple[int, ...]]:
    """Filtration on G/N whose upper groups are the images of those of G.

    Returns the filtered quotient and the projection map.
    """
    if not is_normal(rg.G, N):
        raise FiltrationError("quotient by a non-normal subgroup")
    Q, proj = quotient(rg.G, N)
    upper = [(s, image(H, Q, proj)) for s, H in lower_to_upper(rg)]
    return upper_to_lower(Q, upper, rg.realizable), proj
