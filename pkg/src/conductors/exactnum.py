"""Exact scalars: rationals and elements of cyclotomic fields Q(zeta_n).

Rationals are :class:`fractions.Fraction`.  A :class:`Cyclotomic` stores its
coordinates in the power basis ``1, z, ..., z^(phi(n)-1)`` of ``Q[x]/(Phi_n)``
as integer numerators over one positive common denominator, which keeps
arithmetic on integers and gives a unique representation per order.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction, "Cyclotomic"]


class OrderMismatchError(ValueError):
    pass


class NotRationalError(ValueError):
    def __init__(self, index: int, value: Fraction):
        super().__init__(f"element is not rational: coefficient of z^{index} is {value}")
        self.index = index
        self.value = value


def parse_rational(text: str | int) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (ints pass through)."""
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"rational must be a 'p/q' string, got {type(text).__name__}")
    return Fraction(text.strip())


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- integer polynomials, coefficient lists lowest degree first -------------

def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Exact division by a monic polynomial; raises if there is a remainder."""
    num = list(num)
    dn = len(den) - 1
    assert den[-1] == 1
    quot = [0] * (len(num) - dn)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + dn]
        quot[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("polynomial division is not exact")
    return quot


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n as integer coefficients, constant term first.

    Obtained by exact division of x^n - 1 by Phi_d for the proper divisors d.
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in divisors(n)[:-1]:
        den = _poly_mul(den, cyclotomic_polynomial(d))
    return tuple(_poly_divexact(num, den))


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    # Row j holds z^j (0 <= j < n) in the power basis.
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    rows = []
    cur = [1] + [0] * (d - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(d):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = [-x for x in nums]
        den = -den
    g = den
    for x in nums:
        if g == 1:
            break
        g = gcd(g, x)
    if g > 1:
        nums = [x // g for x in nums]
        den //= g
    if not any(nums):
        den = 1
    return tuple(nums), den


class Cyclotomic:
    """Immutable element of Q(zeta_order).

    >>> z = Cyclotomic.zeta(4)
    >>> z * z == -1
    True
    """

    __slots__ = ("order", "_nums", "_den", "_hash")

    def __init__(self, order: int, coeffs: Iterable[Fraction | int]):
        if order < 1:
            raise ValueError("order must be positive")
        coeffs = [Fraction(c) for c in coeffs]
        d = euler_phi(order)
        if len(coeffs) != d:
            raise ValueError(f"Q(zeta_{order}) needs {d} coefficients, got {len(coeffs)}")
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in coeffs]
        self._set(order, *_normalize(nums, den))

    def _set(self, order, nums, den):
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_nums", nums)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    @classmethod
    def _raw(cls, order: int, nums: list[int] | tuple[int, ...], den: int) -> "Cyclotomic":
        obj = object.__new__(cls)
        obj._set(order, *_normalize(list(nums), den))
        return obj

    # -- constructors ----------------------------------------------------

    @classmethod
    def rational(cls, value: Fraction | int, order: int = 1) -> "Cyclotomic":
        value = Fraction(value)
        nums = [0] * euler_phi(order)
        nums[0] = value.numerator
        return cls._raw(order, nums, value.denominator)

    @classmethod
    def zero(cls, order: int = 1) -> "Cyclotomic":
        return cls.rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "Cyclotomic":
        return cls.rational(1, order)

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "Cyclotomic":
        """The root of unity zeta_order**power."""
        return cls._raw(order, _power_table(order)[power % order], 1)

    # -- coordinates -----------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._nums)

    @property
    def degree(self) -> int:
        return len(self._nums)

    def is_zero(self) -> bool:
        return not any(self._nums)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise OrderMismatchError(
                    f"order mismatch: Q(zeta_{self.order}) vs Q(zeta_{other.order})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Cyclotomic.rational(other, self.order)
        return NotImplemented

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            nums = [a + b for a, b in zip(self._nums, other._nums)]
            return Cyclotomic._raw(self.order, nums, d1)
        nums = [a * d2 + b * d1 for a, b in zip(self._nums, other._nums)]
        return Cyclotomic._raw(self.order, nums, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, [-a for a in self._nums], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.order
        a, b = self._nums, other._nums
        if not any(a[1:]):
            nums = [a[0] * y for y in b]
        elif not any(b[1:]):
            nums = [b[0] * x for x in a]
        else:
            acc = [0] * n
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            acc[(i + j) % n] += x * y
            table = _power_table(n)
            nums = [0] * len(a)
            for j, c in enumerate(acc):
                if c:
                    for k, t in enumerate(table[j]):
                        if t:
                            nums[k] += c * t
        return Cyclotomic._raw(n, nums, self._den * other._den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        return cyc_inverse(self)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_rational():
            if other.is_zero():
                raise ZeroDivisionError("division by zero in Q(zeta_n)")
            c = other._nums[0]
            return Cyclotomic._raw(self.order, [x * other._den for x in self._nums], self._den * c)
        return self * cyc_inverse(other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return cyc_inverse(self) ** (-k)
        result = Cyclotomic.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            if self.order != other.order:
                n = self.order * other.order // gcd(self.order, other.order)
                return embed(self, n) == embed(other, n)
            return self._den == other._den and self._nums == other._nums
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and Fraction(self._nums[0], self._den) == other
        return NotImplemented

    def __hash__(self):
        # Tr(x)/[Q(zeta_n):Q] does not change under embedding, so values that
        # compare equal across orders hash equal; for rationals it is the value.
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(normalized_trace(self)))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(format_rational(c) if i == 0 else f"{format_rational(c)}*z{self.order}^{i}")
        return " + ".join(terms) if terms else "0"

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc) -> "Cyclotomic":
        if isinstance(doc, dict):
            return cls(int(doc["order"]), [parse_rational(c) for c in doc["coeffs"]])
        return cls.rational(parse_rational(doc))


# -- functional surface ----------------------------------------------------

def cyc_add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    if a.order != b.order:
        raise OrderMismatchError(f"order mismatch: {a.order} vs {b.order}")
    return a + b


def cyc_mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    if a.order != b.order:
        raise OrderMismatchError(f"order mismatch: {a.order} vs {b.order}")
    return a * b


def cyc_neg(a: Cyclotomic) -> Cyclotomic:
    return -a


def _solve_rational(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(matrix)
    aug = [row[:] + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n] for row in aug]


def cyc_inverse(a: Cyclotomic) -> Cyclotomic:
    """Multiplicative inverse, by solving (mult-by-a) x = 1 over Q."""
    if a.is_zero():
        raise ZeroDivisionError("zero has no inverse")
    return _inverse_cached(a.order, a._nums, a._den)


@lru_cache(maxsize=4096)
def _inverse_cached(n: int, nums: tuple[int, ...], den: int) -> Cyclotomic:
    # keyed on the representation: equal values of different orders must not share
    a = Cyclotomic._raw(n, nums, den)
    d = a.degree
    if a.is_rational():
        return Cyclotomic.rational(1 / a.coeffs[0], n)
    # Column j of the multiplication matrix is a * z^j.
    cols = [(a * Cyclotomic.zeta(n, j)).coeffs for j in range(d)]
    matrix = [[cols[j][i] for j in range(d)] for i in range(d)]
    rhs = [Fraction(1)] + [Fraction(0)] * (d - 1)
    return Cyclotomic(n, _solve_rational(matrix, rhs))


def galois_apply(a: Cyclotomic, k: int) -> Cyclotomic:
    """Apply the automorphism z -> z^k."""
    n = a.order
    if gcd(k, n) != 1:
        raise ValueError(f"k={k} is not coprime to the order {n}")
    table = _power_table(n)
    nums = [0] * a.degree
    for j, c in enumerate(a._nums):
        if c:
            for i, t in enumerate(table[(j * k) % n]):
                nums[i] += c * t
    return Cyclotomic._raw(n, nums, a._den)


def embed(a: Cyclotomic | Fraction | int, order: int) -> Cyclotomic:
    """Embed Q(zeta_m) into Q(zeta_order) for m | order via zeta_m -> zeta_order^(order/m)."""
    if not isinstance(a, Cyclotomic):
        return Cyclotomic.rational(a, order)
    m = a.order
    if m == order:
        return a
    if order % m:
        raise OrderMismatchError(f"cannot embed Q(zeta_{m}) into Q(zeta_{order})")
    step = order // m
    table = _power_table(order)
    nums = [0] * euler_phi(order)
    for j, c in enumerate(a._nums):
        if c:
            for i, t in enumerate(table[j * step]):
                nums[i] += c * t
    return Cyclotomic._raw(order, nums, a._den)


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


@lru_cache(maxsize=None)
def _normalized_traces(n: int) -> tuple[Fraction, ...]:
    # Tr(zeta_n^j) / phi(n) = mu(m) / phi(m) with m = n / gcd(n, j)
    out = []
    for j in range(euler_phi(n)):
        m = n // gcd(n, j)
        out.append(Fraction(_mobius(m), euler_phi(m)))
    return tuple(out)


def normalized_trace(a: Cyclotomic) -> Fraction:
    """Tr_{Q(zeta_n)/Q}(a) / phi(n), which is independent of the chosen n."""
    t = _normalized_traces(a.order)
    return sum((t[j] * c for j, c in enumerate(a._nums) if c), Fraction(0)) / a._den


def as_rational(a: Cyclotomic | Fraction | int) -> Fraction:
    if not isinstance(a, Cyclotomic):
        return Fraction(a)
    for i, x in enumerate(a._nums[1:], start=1):
        if x:
            raise NotRationalError(i, Fraction(x, a._den))
    return Fraction(a._nums[0], a._den)


def common_order(values: Iterable[Cyclotomic]) -> int:
    n = 1
    for v in values:
        n = n * v.order // gcd(n, v.order)
    return n
