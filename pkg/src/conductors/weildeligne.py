"""Matrix-level model of l-adic representations through Weil-Deligne data.

An instance is a representation ``rep`` of a finite inertia quotient (with its
ramification filtration), a nilpotent ``N`` commuting with it, and optional
Frobenius data ``(F, theta)``.  The l-adic representation attached to it is

    rho_l(Frob^m sigma) = F^m rep(sigma) exp(t(sigma) N)

where ``t`` is the tame l-adic parameter.  ``t`` is never materialized; the
conductors need only ``ker N`` and the finite filtration.  Where a value of
``rho_l`` is needed, ``t`` is a free rational argument of :func:`ell_adic_sample`.

The semi-simplification is not computed.  Its fixed-space dimensions come
from the trace of ``rep``: ``rep(sigma)`` is the semisimple part of
``rho_l(sigma)`` (it commutes with the unipotent factor), so both have the
same trace, and the semi-simplification has that trace too.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .characters import (Character, NegativeInfinity, PreconditionError, artin_conductor_sum,
                         depth, fixed_dim, is_ramified, more_deeply_ramified, swan_part)
from .exactnum import Cyclotomic, embed
from .groups import Subgroup
from .linalg import Matrix, Subspace
from .ramification import RamifiedGroup, lower_to_upper, upper_group


class RepresentationError(ValueError):
    pass


class TheoremViolation(AssertionError):
    pass


class MatrixRep:
    """Homomorphism from ``rg.G`` to invertible matrices over Q(zeta_order)."""

    def __init__(self, rg: RamifiedGroup, mats: Sequence[Sequence[Sequence]], order: int | None = None):
        G = rg.G
        if len(mats) != G.size:
            raise RepresentationError(f"need {G.size} matrices, got {len(mats)}")
        if order is None:
            order = 1
            for M in mats:
                for row in M:
                    for x in row:
                        if isinstance(x, Cyclotomic):
                            order = order * x.order // _gcd(order, x.order)
        self.rg = rg
        self.order = order
        self.mats: tuple[Matrix, ...] = tuple(la.to_matrix(M, order) for M in mats)
        self.dim = len(self.mats[0])
        for g, M in enumerate(self.mats):
            if len(M) != self.dim or any(len(row) != self.dim for row in M):
                raise RepresentationError(f"matrix of element {g} is not {self.dim}x{self.dim}")
        if self.mats[G.identity] != la.identity(self.dim, order):
            raise RepresentationError("identity element does not act as the identity matrix")
        # rep(g s) = rep(g) rep(s) for all g and generators s is equivalent to
        # the homomorphism property on all pairs.
        for s in G.whole().generators():
            Ms = self.mats[s]
            for g in G.elements:
                if la.matmul(self.mats[g], Ms) != self.mats[G.mul[g][s]]:
                    raise RepresentationError(f"not a homomorphism at pair ({g}, {s})")

    def __call__(self, g: int) -> Matrix:
        return self.mats[g]

    def character(self) -> Character:
        return Character(self.rg, [la.trace(M) for M in self.mats], self.order)

    def embedded(self, order: int) -> "MatrixRep":
        return MatrixRep(self.rg, [la.embed_matrix(M, order) for M in self.mats], order)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _lcm(a, b):
    return a * b // _gcd(a, b)


def invariant_subspace(rep: MatrixRep, H: Subgroup) -> Subspace:
    """V^H as the kernel of the stacked (rep(h) - I) over generators h of H."""
    I = la.identity(rep.dim, rep.order)
    rows = []
    for h in H.generators():
        rows.extend(list(r) for r in la.sub(rep(h), I))
    return Subspace.solutions(rows, rep.dim, rep.order)


def kernel(N: Matrix) -> Subspace:
    return la.kernel(N)


is_nilpotent = la.is_nilpotent
exp_nilpotent = la.exp_nilpotent


@dataclass(frozen=True)
class Frobenius:
    F: Matrix
    theta: tuple[int, ...]


class WeilDeligneRep:
    def __init__(self, rep: MatrixRep, N, q: int, frobenius: Frobenius | None = None):
        order = rep.order
        for x in [x for row in N for x in row] + (
                [x for row in frobenius.F for x in row] if frobenius else []):
            if isinstance(x, Cyclotomic):
                order = _lcm(order, x.order)
        if order != rep.order:
            rep = rep.embedded(order)
        self.rep = rep
        self.order = order
        self.N: Matrix = la.to_matrix(N, order)
        self.q = int(q)
        if self.q < 2:
            raise RepresentationError(f"q = {q} is not a prime power")
        d = rep.dim
        if len(self.N) != d or any(len(r) != d for r in self.N):
            raise RepresentationError(f"N is not {d}x{d}")
        if not la.is_nilpotent(self.N):
            raise RepresentationError("N is not nilpotent")
        G = rep.rg.G
        for s in G.whole().generators():
            M = rep(s)
            if la.matmul(M, self.N) != la.matmul(self.N, M):
                raise RepresentationError(f"N does not commute with the action of element {s}")
        self.frobenius = None
        if frobenius is not None:
            F = la.to_matrix(frobenius.F, order)
            theta = tuple(int(x) for x in frobenius.theta)
            if sorted(theta) != list(G.elements):
                raise RepresentationError("theta is not a permutation of the group elements")
            Finv = la.inverse(F)
            for g in G.elements:
                if la.matmul(la.matmul(F, rep(g)), Finv) != rep(theta[g]):
                    raise RepresentationError(f"F rep(g) F^-1 != rep(theta g) at g = {g}")
            if la.matmul(la.matmul(F, self.N), Finv) != la.scale(self.N, Fraction(1, self.q)):
                raise RepresentationError("F N F^-1 != N/q")
            self.frobenius = Frobenius(F, theta)

    @property
    def rg(self) -> RamifiedGroup:
        return self.rep.rg

    @property
    def dim(self) -> int:
        return self.rep.dim


def ell_adic_sample(wd: WeilDeligneRep, sigma: int, m: int = 0, t=0) -> Matrix:
    """rho_l(Frob^m sigma) for an inertia element with image sigma and tame parameter t."""
    if m and wd.frobenius is None:
        raise RepresentationError("Frobenius data is required for m != 0")
    M = la.matmul(wd.rep(sigma), la.exp_nilpotent(wd.N, t))
    if m:
        M = la.matmul(la.matpow(wd.frobenius.F, m), M)
    return M


def monodromy_invariants(wd: WeilDeligneRep) -> Subspace:
    """V_N^{I} = V^{I} intersected with ker N."""
    return invariant_subspace(wd.rep, wd.rg.inertia).intersect(la.kernel(wd.N))


def ell_adic_invariants(wd: WeilDeligneRep) -> Subspace:
    """Fixed space of rho_l(I).

    Inertia elements realize every image in G_0 with t = 0 (on the finite-index
    subgroup where rep is trivial t is still free), and t = 1 over the
    identity; those samples generate the image of inertia up to finite index.
    """
    I = la.identity(wd.dim, wd.order)
    rows = []
    for h in wd.rg.inertia.generators():
        rows.extend(list(r) for r in la.sub(ell_adic_sample(wd, h, 0, 0), I))
    rows.extend(list(r) for r in la.sub(ell_adic_sample(wd, wd.rg.G.identity, 0, 1), I))
    return Subspace.solutions(rows, wd.dim, wd.order)


def semisimple_character(wd: WeilDeligneRep) -> Character:
    """Trace of rho_l on inertia (read at t = 1), which is the character of rho_ss."""
    G = wd.rg.G
    return Character(wd.rg, [la.trace(ell_adic_sample(wd, g, 0, 1)) for g in G.elements], wd.order)


def deligne_conductor(wd: WeilDeligneRep, strict: bool | None = None) -> Fraction:
    """a(rho) + dim V^I - dim V_N^I."""
    a_rho = artin_conductor_sum(wd.rep.character(), strict=strict)
    v_inv = invariant_subspace(wd.rep, wd.rg.inertia)
    return a_rho + v_inv.dim - v_inv.intersect(la.kernel(wd.N)).dim


def serre_conductor(wd: WeilDeligneRep, strict: bool | None = None) -> Fraction:
    """codim V_l^I + Swan conductor of the semi-simplification."""
    eps = ell_adic_invariants(wd).codim
    return eps + swan_part(semisimple_character(wd), strict=strict)


def _upper_segments(rg: RamifiedGroup):
    f = rg.phi()
    cuts = [Fraction(0)] + [f(i) for i in range(1, rg.length + 1)]
    return list(zip(cuts, cuts[1:]))


def integral_parts(wd: WeilDeligneRep) -> tuple[Fraction, Fraction]:
    """(integral over [-1,0], integral over [0,oo)) of codim V_l^{G^s} ds."""
    tame = Fraction(monodromy_invariants(wd).codim)
    wild = Fraction(0)
    for lo, hi in _upper_segments(wd.rg):
        H = upper_group(wd.rg, (lo + hi) / 2)
        wild += (hi - lo) * invariant_subspace(wd.rep, H).codim
    return tame, wild


def integral_conductor(wd: WeilDeligneRep) -> Fraction:
    return sum(integral_parts(wd))


@dataclass(frozen=True)
class TheoremReport:
    integral: Fraction
    serre: Fraction
    deligne: Fraction

    @property
    def agree(self) -> bool:
        return self.integral == self.serre == self.deligne

    def as_dict(self) -> dict:
        return {"integral": self.integral, "serre": self.serre, "deligne": self.deligne}


def theorem_check(wd: WeilDeligneRep, strict: bool | None = None, raise_on_failure=True) -> TheoremReport:
    report = TheoremReport(integral_conductor(wd), serre_conductor(wd, strict),
                           deligne_conductor(wd, strict))
    if raise_on_failure and not report.agree:
        raise TheoremViolation(
            f"conductors disagree: integral={report.integral} serre={report.serre} "
            f"deligne={report.deligne}")
    return report


@dataclass(frozen=True)
class TateReport:
    conductor: Fraction
    dim_ss_inv: int
    dim_ell_inv: int
    dim: int
    a_ss: Fraction

    @property
    def corrected(self) -> Fraction:
        return self.dim_ss_inv - self.dim_ell_inv + self.a_ss

    @property
    def uncorrected(self) -> Fraction:
        return self.dim_ss_inv - self.dim + self.a_ss

    @property
    def corrected_holds(self) -> bool:
        return self.corrected == self.conductor

    @property
    def uncorrected_holds(self) -> bool:
        return self.uncorrected == self.conductor


def tate_424_check(wd: WeilDeligneRep, strict: bool | None = None,
                   raise_on_failure: bool = True) -> TateReport:
    """a(rho_l) = dim V_ss^I - dim V_l^I + a(rho_ss); the variant without the
    inertia exponent on V_l is also evaluated."""
    chi = wd.rep.character()
    report = TateReport(serre_conductor(wd, strict), fixed_dim(chi, wd.rg.inertia),
                        ell_adic_invariants(wd).dim, wd.dim,
                        artin_conductor_sum(chi, strict=strict))
    if raise_on_failure and not report.corrected_holds:
        raise TheoremViolation(f"corrected identity fails: {report}")
    return report


def wd_depth(wd: WeilDeligneRep):
    """Largest s with rho_l nontrivial on G^s; N != 0 counts as nontrivial on (-1, 0]."""
    m = NegativeInfinity
    nilp = not la.is_zero(wd.N)
    chi = wd.rep.character()
    if nilp:
        m = Fraction(0)
    if is_ramified(chi):
        for s, H in lower_to_upper(wd.rg):
            if fixed_dim(chi, H) < chi.dim:
                m = s if m is NegativeInfinity else max(m, s)
    return m


def twist_wd(wd: WeilDeligneRep, chi: Character) -> WeilDeligneRep:
    """Scale rep pointwise by the degree-1 character chi; N is unchanged."""
    if chi.dim != 1:
        raise PreconditionError("twisting character must have degree 1")
    if chi.rg.G != wd.rg.G:
        raise PreconditionError("character lives on a different group")
    order = _lcm(wd.order, chi.order)
    mats = [la.scale(la.embed_matrix(wd.rep(g), order), embed(chi(g), order))
            for g in wd.rg.G.elements]
    rep = MatrixRep(wd.rg, mats, order)
    frob = None
    if wd.frobenius is not None:
        theta = wd.frobenius.theta
        if any(embed(chi(theta[g]), order) != embed(chi(g), order) for g in wd.rg.G.elements):
            raise PreconditionError("character is not invariant under the Frobenius action theta")
        frob = Frobenius(la.embed_matrix(wd.frobenius.F, order), theta)
    return WeilDeligneRep(rep, la.embed_matrix(wd.N, order), wd.q, frob)


@dataclass(frozen=True)
class WDTwistReport:
    lhs: Fraction
    rhs: Fraction
    depth_wd: object
    depth_chi: object

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def check_wd_twisting(wd: WeilDeligneRep, chi: Character) -> WDTwistReport:
    d_wd, d_chi = wd_depth(wd), depth(chi)
    if not more_deeply_ramified(d_chi, d_wd):
        raise PreconditionError(f"not more deeply ramified: depth(chi) = {d_chi}, depth(wd) = {d_wd}")
    lhs = integral_conductor(twist_wd(wd, chi))
    return WDTwistReport(lhs, wd.dim * artin_conductor_sum(chi), d_wd, d_chi)


def conjugate(wd: WeilDeligneRep, P: Matrix) -> WeilDeligneRep:
    """The same representation expressed in another basis: X -> P X P^-1."""
    order = _lcm(wd.order, la.order_of(P))
    P = la.embed_matrix(P, order)
    Pinv = la.inverse(P)

    def c(X):
        return la.matmul(la.matmul(P, la.embed_matrix(X, order)), Pinv)

    rep = MatrixRep(wd.rg, [c(M) for M in wd.rep.mats], order)
    frob = Frobenius(c(wd.frobenius.F), wd.frobenius.theta) if wd.frobenius else None
    return WeilDeligneRep(rep, c(wd.N), wd.q, frob)


def scalar_rep(chi: Character) -> MatrixRep:
    """A degree-1 character as a 1x1 matrix representation."""
    if chi.dim != 1:
        raise PreconditionError("scalar_rep needs a degree-1 character")
    return MatrixRep(chi.rg, [((v,),) for v in chi.values], chi.order)


def diagonal_rep(chars: Sequence[Character]) -> MatrixRep:
    rg = chars[0].rg
    order = 1
    for c in chars:
        order = _lcm(order, c.order)
    zero = Cyclotomic.zero(order)
    mats = []
    for g in rg.G.elements:
        diag = [embed(c(g), order) for c in chars]
        mats.append(tuple(tuple(diag[i] if i == j else zero for j in range(len(chars)))
                          for i in range(len(chars))))
    return MatrixRep(rg, mats, order)


def direct_sum(a: WeilDeligneRep, b: WeilDeligneRep) -> WeilDeligneRep:
    """Block-diagonal sum of two Weil-Deligne representations on the same filtered group."""
    if a.rg != b.rg:
        raise RepresentationError("direct sum needs a common filtered group")
    if a.q != b.q:
        raise RepresentationError("direct sum needs a common q")
    order = _lcm(a.order, b.order)
    zero = Cyclotomic.zero(order)

    def block(X, Y):
        X, Y = la.embed_matrix(X, order), la.embed_matrix(Y, order)
        da, db = len(X), len(Y)
        return tuple(tuple(X[i][j] if j < da else zero for j in range(da + db)) for i in range(da)) + \
            tuple(tuple(Y[i][j - da] if j >= da else zero for j in range(da + db)) for i in range(db))

    rep = MatrixRep(a.rg, [block(a.rep(g), b.rep(g)) for g in a.rg.G.elements], order)
    frob = None
    if a.frobenius and b.frobenius and a.frobenius.theta == b.frobenius.theta:
        frob = Frobenius(block(a.frobenius.F, b.frobenius.F), a.frobenius.theta)
    return WeilDeligneRep(rep, block(a.N, b.N), a.q, frob)
