"""Dense exact matrices over Q(zeta_n): lists of rows of Cyclotomic entries.

Elimination pivots on the first nonzero entry; exact arithmetic needs no
magnitude-based pivoting.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactnum import Cyclotomic, embed

Matrix = tuple  # tuple of row tuples


def to_matrix(rows: Sequence[Sequence], order: int) -> Matrix:
    return tuple(tuple(embed(x, order) for x in row) for row in rows)


def identity(n: int, order: int = 1) -> Matrix:
    one, zero = Cyclotomic.one(order), Cyclotomic.zero(order)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(n: int, m: int | None = None, order: int = 1) -> Matrix:
    zero = Cyclotomic.zero(order)
    return tuple(tuple(zero for _ in range(n if m is None else m)) for _ in range(n))


def order_of(A: Matrix) -> int:
    return A[0][0].order


def matmul(A: Matrix, B: Matrix) -> Matrix:
    m = len(B[0])
    zero = Cyclotomic.zero(B[0][0].order)
    out = []
    for row in A:
        acc = [zero] * m
        for k, a in enumerate(row):
            if a:
                Bk = B[k]
                for j in range(m):
                    b = Bk[j]
                    if b:
                        acc[j] = acc[j] + a * b
        out.append(tuple(acc))
    return tuple(out)


def add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def sub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def scale(A: Matrix, c) -> Matrix:
    return tuple(tuple(a * c for a in row) for row in A)


def is_zero(A: Matrix) -> bool:
    return all(not x for row in A for x in row)


def matpow(A: Matrix, k: int) -> Matrix:
    if k < 0:
        return matpow(inverse(A), -k)
    result = identity(len(A), order_of(A))
    for _ in range(k):
        result = matmul(result, A)
    return result


def trace(A: Matrix) -> Cyclotomic:
    t = A[0][0]
    for i in range(1, len(A)):
        t = t + A[i][i]
    return t


def rref(rows: Sequence[Sequence[Cyclotomic]]) -> tuple[list[list[Cyclotomic]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Cyclotomic]], ncols: int, order: int) -> list[list[Cyclotomic]]:
    """Basis of {x : A x = 0}."""
    R, pivots = rref(rows)
    one, zero = Cyclotomic.one(order), Cyclotomic.zero(order)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    order = order_of(A)
    I = identity(n, order)
    aug = [list(A[i]) + list(I[i]) for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


@dataclass(frozen=True)
class Subspace:
    """Subspace of K^dim with a canonical (RREF) basis, so equality is exact."""

    dim_ambient: int
    order: int
    basis: tuple[tuple[Cyclotomic, ...], ...]

    @classmethod
    def span(cls, vectors, dim_ambient: int, order: int) -> "Subspace":
        R, _ = rref([[embed(x, order) for x in v] for v in vectors])
        return cls(dim_ambient, order, tuple(tuple(r) for r in R))

    @classmethod
    def solutions(cls, rows, dim_ambient: int, order: int) -> "Subspace":
        """Kernel of the stacked constraint rows."""
        if not rows:
            return cls.full(dim_ambient, order)
        return cls.span(nullspace(rows, dim_ambient, order), dim_ambient, order)

    @classmethod
    def full(cls, dim_ambient: int, order: int) -> "Subspace":
        return cls(dim_ambient, order, identity(dim_ambient, order))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.dim_ambient - self.dim

    def constraints(self) -> list[list[Cyclotomic]]:
        """Rows c with c.v = 0 exactly on this subspace."""
        if not self.basis:
            return [list(r) for r in identity(self.dim_ambient, self.order)]
        return nullspace(self.basis, self.dim_ambient, self.order)

    def intersect(self, other: "Subspace") -> "Subspace":
        return Subspace.solutions(self.constraints() + other.constraints(),
                                  self.dim_ambient, self.order)

    def contains(self, v) -> bool:
        return rank(list(self.basis) + [[embed(x, self.order) for x in v]]) == self.dim


def kernel(A: Matrix) -> Subspace:
    return Subspace.solutions([list(r) for r in A], len(A[0]), order_of(A))


def nilpotent_index(A: Matrix) -> int | None:
    P = A
    for k in range(1, len(A) + 1):
        if is_zero(P):
            return k
        P = matmul(P, A)
    return None


def is_nilpotent(A: Matrix) -> bool:
    return nilpotent_index(A) is not None


def exp_nilpotent(N: Matrix, t=1) -> Matrix:
    """sum_{k < dim} (tN)^k / k!"""
    if not is_nilpotent(N):
        raise ValueError("exp_nilpotent needs a nilpotent matrix")
    n = len(N)
    order = order_of(N)
    tN = scale(N, Fraction(t))
    result = identity(n, order)
    term = identity(n, order)
    for k in range(1, n):
        term = scale(matmul(term, tN), Fraction(1, k))
        if is_zero(term):
            break
        result = add(result, term)
    return result


def embed_matrix(A: Matrix, order: int) -> Matrix:
    return tuple(tuple(embed(x, order) for x in row) for row in A)
