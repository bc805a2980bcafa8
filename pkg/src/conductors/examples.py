"""Realizable and random instances, and independent oracles for them.

Realizable instances come from genuine local-field arithmetic: the cyclotomic
extensions Q_p(zeta_{p^n})/Q_p and tame cyclic extensions.  Random instances
are abstract and never flagged realizable.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .characters import Character, ClassFunction, linear_characters, tensor
from .exactnum import Cyclotomic, as_rational, galois_apply
from .groups import (FiniteGroup, Subgroup, cyclic, direct_product, subgroup_generated,
                     symmetric_group, unit_group_mod)
from .ramification import RamifiedGroup, lower_to_upper, upper_to_lower
from .weildeligne import (Frobenius, MatrixRep, WeilDeligneRep, conjugate, direct_sum,
                          scalar_rep, twist_wd)


@dataclass(frozen=True)
class LocalFieldParams:
    p: int
    n: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.n < 1:
            raise ValueError("n must be at least 1")

    @property
    def q(self) -> int:
        return self.p


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def p_valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0")
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def _phi_pk(p: int, k: int) -> int:
    return 1 if k == 0 else (p - 1) * p ** (k - 1)


def cyclotomic_lower_index(p: int, n: int, a: int) -> int | None:
    """i_G(sigma_a) = v_K(sigma_a(pi) - pi) for pi = zeta - 1, closed form; None for a = 1."""
    pn = p ** n
    if a % pn == 1:
        return None
    k = p_valuation((a - 1) % pn, p)
    return _phi_pk(p, n) // _phi_pk(p, n - k)


def valuation_by_norm(p: int, n: int, x: Cyclotomic) -> int:
    """v_K(x) for K = Q_p(zeta_{p^n}), from the p-adic valuation of the norm.

    K/Q_p is totally ramified with residue degree 1, so v_K = v_p o N.
    """
    pn = p ** n
    norm = Cyclotomic.one(pn)
    for c in range(1, pn):
        if c % p:
            norm = norm * galois_apply(x, c)
    N = as_rational(norm)
    return p_valuation(N.numerator, p) - p_valuation(N.denominator, p)


def cyclotomic_lower_index_by_norm(p: int, n: int, a: int) -> int | None:
    """Same quantity as :func:`cyclotomic_lower_index`, via v_K(zeta^a - zeta)."""
    pn = p ** n
    if a % pn == 1:
        return None
    x = Cyclotomic.zeta(pn, a) - Cyclotomic.zeta(pn, 1)
    return valuation_by_norm(p, n, x)


def _chain_from_indices(G: FiniteGroup, index_of) -> list[Subgroup]:
    top = max((index_of(g) or 0) for g in G.elements)
    chain = []
    for i in range(top):
        elems = [g for g in G.elements if index_of(g) is None or index_of(g) >= i + 1]
        chain.append(G.subgroup(elems))
    return chain


def cyclotomic_extension(p: int, n: int, oracle: str = "closed") -> RamifiedGroup:
    """Gal(Q_p(zeta_{p^n})/Q_p) = (Z/p^n)^* with its lower filtration.

    ``sigma_a`` lies in ``G_i`` iff ``i_G(sigma_a) >= i + 1``.  ``oracle`` picks
    the closed form ("closed") or the norm computation ("norm").
    """
    LocalFieldParams(p, n)
    G = unit_group_mod(p ** n)
    f = cyclotomic_lower_index if oracle == "closed" else cyclotomic_lower_index_by_norm
    residues = [int(s) for s in G.labels]
    chain = _chain_from_indices(G, lambda g: f(p, n, residues[g]))
    return RamifiedGroup(G, chain, realizable=True)


def tame_cyclic(e: int) -> RamifiedGroup:
    """Totally tamely ramified cyclic extension of degree e: G_0 = C_e, G_1 = 1."""
    if e < 1:
        raise ValueError("e must be at least 1")
    G = cyclic(e)
    return RamifiedGroup(G, [G.whole()], realizable=True)


def s3_tame() -> RamifiedGroup:
    """S_3 with G_0 = A_3 and G_1 = 1 (e.g. a tame S_3 extension with e = 3, f = 2)."""
    G = symmetric_group(3)
    a3 = subgroup_generated(G, [g for g in G.elements if G.element_order(g) == 3])
    return RamifiedGroup(G, [a3], realizable=True)


def s3_characters(rg: RamifiedGroup) -> dict[str, Character]:
    G = rg.G
    ords = [G.element_order(g) for g in G.elements]
    sign = [1 if o != 2 else -1 for o in ords]
    std = [2 if o == 1 else (-1 if o == 3 else 0) for o in ords]
    return {"trivial": Character(rg, [1] * 6), "sign": Character(rg, sign),
            "standard": Character(rg, std)}


def residue_of(rg: RamifiedGroup, g: int) -> int:
    return int(rg.G.labels[g])


def dirichlet_conductor_oracle(chi: Character, p: int, n: int) -> int:
    """Smallest m with chi trivial on {a = 1 mod p^m} in (Z/p^n)^*."""
    if chi.dim != 1:
        raise ValueError("the Dirichlet oracle takes degree-1 characters")
    labels = [int(s) for s in chi.rg.G.labels]
    one = chi.degree
    for m in range(0, n + 1):
        pm = p ** m
        if all(chi(g) == one for g, a in enumerate(labels) if a % pm == 1 % pm):
            return m
    raise AssertionError("unreachable: chi is trivial on the identity")


def level_kernel(rg: RamifiedGroup, p: int, m: int) -> Subgroup:
    """Kernel of (Z/p^n)^* -> (Z/p^m)^*."""
    pm = p ** m
    return rg.G.subgroup(g for g in rg.G.elements if int(rg.G.labels[g]) % pm == 1 % pm)


def realizable_corpus(max_tame: int = 12) -> list[tuple[str, RamifiedGroup]]:
    out = []
    for p in (2, 3, 5):
        for n in (1, 2, 3):
            out.append((f"cyclotomic({p},{n})", cyclotomic_extension(p, n)))
    for e in range(1, max_tame + 1):
        out.append((f"tame({e})", tame_cyclic(e)))
    out.append(("s3_tame", s3_tame()))
    return out


def corpus_characters(rg: RamifiedGroup) -> list[Character]:
    if rg.G.is_abelian():
        return linear_characters(rg)
    return list(s3_characters(rg).values())


# -- random abstract instances ---------------------------------------------

def random_abelian_group(rng: random.Random, max_size: int = 12) -> FiniteGroup:
    G = cyclic(1)
    while True:
        k = rng.randint(1, 6)
        if G.size * k > max_size:
            break
        G = direct_product(G, cyclic(k)) if G.size > 1 else cyclic(k)
        if rng.random() < 0.4:
            break
    return G


def random_group(rng: random.Random, max_size: int = 12) -> FiniteGroup:
    """Mostly abelian; sometimes S_3 or S_3 x C_2 when they fit."""
    nonabelian = [G for G in (symmetric_group(3), direct_product(symmetric_group(3), cyclic(2)))
                  if G.size <= max_size]
    if nonabelian and rng.random() < 0.25:
        return rng.choice(nonabelian)
    return random_abelian_group(rng, max_size)


def normal_closure(G: FiniteGroup, gens) -> Subgroup:
    return subgroup_generated(G, {G.conj(g, x) for g in G.elements for x in gens})


def random_chain(rng: random.Random, G: FiniteGroup, max_length: int = 5) -> list[Subgroup]:
    """Random descending chain G_0 >= ... of normal subgroups."""
    elems = list(G.elements)
    top = normal_closure(G, rng.sample(elems, rng.randint(0, min(3, len(elems)))))
    chain = [top]
    for _ in range(rng.randint(0, max_length)):
        H = chain[-1]
        if rng.random() < 0.35:
            chain.append(H)
            continue
        gens = [h for h in H if rng.random() < 0.4]
        nxt = normal_closure(G, gens)
        if not nxt.issubset(H):
            nxt = H
        chain.append(nxt)
        if chain[-1].is_trivial():
            break
    return chain


def permutation_character(rg: RamifiedGroup, K: Subgroup) -> Character:
    """Character of G acting on the cosets G/K: the number of fixed cosets."""
    G = rg.G
    cosets = []
    seen = set()
    for x in G.elements:
        if x not in seen:
            c = frozenset(G.op(x, k) for k in K)
            seen |= c
            cosets.append(c)
    where = {y: i for i, c in enumerate(cosets) for y in c}
    vals = []
    for g in G.elements:
        vals.append(sum(1 for c in cosets if where[G.op(g, next(iter(c)))] == where[next(iter(c))]))
    return Character(rg, vals)


def random_character(rng: random.Random, rg: RamifiedGroup) -> Character:
    """A linear character, a sum of them, or a permutation character on cosets."""
    lin = linear_characters(rg)
    kind = rng.random()
    if kind < 0.4:
        return rng.choice(lin)
    if kind < 0.7:
        K = subgroup_generated(rg.G, rng.sample(list(rg.G.elements), rng.randint(0, min(2, rg.G.size))))
        chi = permutation_character(rg, K)
        if rng.random() < 0.5:
            chi = tensor(chi, rng.choice(lin))
        return chi
    chi = rng.choice(lin)
    for _ in range(rng.randint(1, 3)):
        chi = chi + rng.choice(lin)
    return chi


def random_instance(seed: int, max_size: int = 12, max_length: int = 5
                    ) -> tuple[RamifiedGroup, Character]:
    rng = random.Random(seed)
    G = random_group(rng, max_size)
    rg = RamifiedGroup(G, random_chain(rng, G, max_length), realizable=False)
    return rg, random_character(rng, rg)


def _random_invertible(rng: random.Random, d: int) -> la.Matrix:
    while True:
        P = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]
        M = la.to_matrix(P, 1)
        if la.rank([list(r) for r in M]) == d:
            return M


def random_wd_instance(seed: int, max_size: int = 8, max_dim: int = 4,
                       conjugate_basis: bool = True) -> WeilDeligneRep:
    """Random Weil-Deligne data with N in the commutant by construction.

    Each basis vector gets a linear character and an integer weight; rep acts
    diagonally by the characters, N may only map weight w+1 to weight w inside
    one character's block, and F = diag(q^w) then satisfies F N F^-1 = N/q.
    """
    rng = random.Random(seed)
    G = random_abelian_group(rng, max_size)
    rg = RamifiedGroup(G, random_chain(rng, G), realizable=False)
    lin = linear_characters(rg)
    d = rng.randint(1, max_dim)
    pool = rng.sample(lin, min(len(lin), rng.randint(1, 3)))
    labels = [rng.choice(pool) for _ in range(d)]
    weights = [rng.randint(0, 2) for _ in range(d)]
    order = lin[0].order
    zero = Cyclotomic.zero(order)
    mats = []
    for g in G.elements:
        mats.append(tuple(tuple(labels[i](g) if i == j else zero for j in range(d)) for i in range(d)))
    rep = MatrixRep(rg, mats, order)
    N = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            if labels[i] is labels[j] and weights[j] == weights[i] + 1 and rng.random() < 0.7:
                N[i][j] = Fraction(rng.choice([-2, -1, 1, 2, 3]))
    q = rng.choice([2, 3, 4, 5, 7, 9])
    frob = None
    if rng.random() < 0.5:
        F = [[Fraction(q) ** weights[i] if i == j else Fraction(0) for j in range(d)]
             for i in range(d)]
        frob = Frobenius(la.to_matrix(F, order), tuple(G.elements))
    wd = WeilDeligneRep(rep, la.to_matrix(N, order), q, frob)
    if conjugate_basis and rng.random() < 0.5:
        wd = conjugate(wd, _random_invertible(rng, d))
    return wd


def split_multiplicative(q: int = 5, rg: RamifiedGroup | None = None) -> WeilDeligneRep:
    """Tate-curve shape: inertia acts unipotently through N = [[0,1],[0,0]], F = diag(1, q)."""
    if rg is None:
        G = cyclic(1)
        rg = RamifiedGroup(G, [G.trivial()], realizable=True)
    I = la.identity(2)
    rep = MatrixRep(rg, [I] * rg.G.size, 1)
    N = la.to_matrix([[0, 1], [0, 0]], 1)
    F = la.to_matrix([[1, 0], [0, q]], 1)
    return WeilDeligneRep(rep, N, q, Frobenius(F, tuple(rg.G.elements)))


def primitive_characters(rg: RamifiedGroup, p: int, n: int) -> list[Character]:
    return [c for c in linear_characters(rg) if dirichlet_conductor_oracle(c, p, n) == n]


def as_class_function(chi: Character) -> ClassFunction:
    return ClassFunction(chi.rg, chi.values, chi.order)


def s3_standard_rep(rg: RamifiedGroup) -> MatrixRep:
    """The 2-dimensional irreducible representation of S_3 on the sum-zero plane.

    Basis b1 = e0 - e1, b2 = e1 - e2; a sum-zero vector v equals v0*b1 - v2*b2.
    """
    G = rg.G
    mats = []
    for g in G.elements:
        perm = [int(c) for c in G.labels[g]]
        cols = []
        for b in ((1, -1, 0), (0, 1, -1)):
            v = [0, 0, 0]
            for i, c in enumerate(b):
                v[perm[i]] += c
            cols.append((v[0], -v[2]))
        mats.append(la.to_matrix([[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]], 1))
    return MatrixRep(rg, mats, 1)


def product_filtration(a: RamifiedGroup, b: RamifiedGroup, realizable: bool = False
                       ) -> tuple[RamifiedGroup, tuple[int, ...], tuple[int, ...]]:
    """Filtration on a.G x b.G with upper groups the products of the factors' upper groups.

    Returns the filtered product and the two coordinate projections.
    """
    G = direct_product(a.G, b.G)
    m = b.G.size
    pa = tuple(g // m for g in G.elements)
    pb = tuple(g % m for g in G.elements)
    ua, ub = lower_to_upper(a), lower_to_upper(b)
    cuts = sorted({s for s, _ in ua} | {s for s, _ in ub})

    def at(upper, factor, s):
        for t, H in upper:
            if s <= t:
                return H
        return factor.G.trivial()

    upper = []
    for s in cuts:
        Ha, Hb = at(ua, a, s), at(ub, b, s)
        upper.append((s, G.subgroup(x * m + y for x in Ha for y in Hb)))
    return upper_to_lower(G, upper, realizable), pa, pb


def wd_corpus(q: int = 5) -> list[tuple[str, WeilDeligneRep]]:
    """Weil-Deligne instances on realizable filtrations, with and without monodromy."""
    out = []
    for p, n in ((2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)):
        rg = cyclotomic_extension(p, n)
        for k, chi in enumerate(linear_characters(rg)):
            out.append((f"scalar cyclotomic({p},{n}) #{k}", _with_q(scalar_rep(chi), q)))
    for e in (2, 3, 6):
        rg = tame_cyclic(e)
        for k, chi in enumerate(linear_characters(rg)):
            out.append((f"scalar tame({e}) #{k}", _with_q(scalar_rep(chi), q)))
    s3 = s3_tame()
    out.append(("s3 standard", _with_q(s3_standard_rep(s3), q)))
    out.append(("s3 standard with Frobenius", s3_with_frobenius(q)))
    out.append(("split multiplicative", split_multiplicative(q)))
    for p, n in ((2, 3), (3, 2), (5, 2)):
        rg = cyclotomic_extension(p, n)
        sm = split_multiplicative(q, rg)
        out.append((f"split multiplicative on cyclotomic({p},{n})", sm))
        for k, chi in enumerate(linear_characters(rg)):
            tw = twist_wd(sm, chi)
            out.append((f"twisted split multiplicative cyclotomic({p},{n}) #{k}", tw))
            if k % 2:
                out.append((f"split multiplicative + scalar cyclotomic({p},{n}) #{k}",
                            direct_sum(sm, _with_q(scalar_rep(chi), q, frobenius=True))))
    return out


def s3_with_frobenius(q: int = 5) -> WeilDeligneRep:
    """S_3 standard representation; Frobenius lifts to a transposition t, so
    F = rep(t) and theta is conjugation by t."""
    rg = s3_tame()
    rep = s3_standard_rep(rg)
    G = rg.G
    t = G.labels.index("102")
    theta = tuple(G.conj(t, g) for g in G.elements)
    return WeilDeligneRep(rep, la.zeros(2, order=rep.order), q, Frobenius(rep(t), theta))


def _with_q(rep: MatrixRep, q: int, frobenius: bool = False) -> WeilDeligneRep:
    d = rep.dim
    N = la.zeros(d, order=rep.order)
    frob = Frobenius(la.identity(d, rep.order), tuple(rep.rg.G.elements)) if frobenius else None
    return WeilDeligneRep(rep, N, q, frob)
