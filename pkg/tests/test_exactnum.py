import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conductors.exactnum import (Cyclotomic, OrderMismatchError, as_rational, cyclotomic_polynomial,
                                 divisors, embed, euler_phi, format_rational, galois_apply,
                                 normalized_trace, parse_rational)


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def numeric(x: Cyclotomic) -> complex:
    """Complex embedding zeta_n -> exp(2 pi i / n); an independent evaluation path."""
    z = cmath.exp(2j * cmath.pi / x.order)
    return sum(float(c) * z ** k for k, c in enumerate(x.coeffs))


ORDERS = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12])


@st.composite
def cyclotomics(draw, order=None):
    n = draw(ORDERS) if order is None else order
    d = euler_phi(n)
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6),
                           min_size=d, max_size=d))
    return Cyclotomic(n, coeffs)


@st.composite
def pairs(draw):
    n = draw(ORDERS)
    return draw(cyclotomics(n)), draw(cyclotomics(n))


def test_small_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_polynomial(9) == (1, 0, 0, 1, 0, 0, 1)


@pytest.mark.parametrize("n", range(1, 41))
def test_product_of_cyclotomic_polynomials_is_x_n_minus_1(n):
    prod = [1]
    for d in divisors(n):
        prod = poly_mul(prod, cyclotomic_polynomial(d))
    assert prod == [-1] + [0] * (n - 1) + [1]
    assert len(cyclotomic_polynomial(n)) - 1 == euler_phi(n)


@pytest.mark.parametrize("n", range(1, 65))
def test_zeta_satisfies_its_minimal_polynomial(n):
    z = Cyclotomic.zeta(n)
    total = Cyclotomic.zero(n)
    for k, c in enumerate(cyclotomic_polynomial(n)):
        total = total + (z ** k) * c
    assert total.is_zero()
    assert z ** n == 1
    assert all(z ** k != 1 for k in range(1, n))


def test_basis_dimension_is_euler_phi():
    for n in (1, 2, 3, 4, 5, 8, 12, 16, 27):
        assert Cyclotomic.zeta(n).degree == euler_phi(n)


def test_known_inverse():
    z = Cyclotomic.zeta(4)
    assert (1 + z).inverse() == Fraction(1, 2) - z / 2
    assert (1 + z) * (1 + z).inverse() == 1


def test_sum_of_roots_of_unity_vanishes():
    for n in (2, 3, 5, 8, 9, 12):
        total = sum((Cyclotomic.zeta(n, k) for k in range(n)), Cyclotomic.zero(n))
        assert total.is_zero()


@given(pairs())
def test_ring_operations_match_complex_embedding(ab):
    a, b = ab
    assert abs(numeric(a + b) - (numeric(a) + numeric(b))) < 1e-9
    assert abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-8
    assert abs(numeric(a - b) - (numeric(a) - numeric(b))) < 1e-9


@given(pairs(), cyclotomics())
def test_field_axioms(ab, c0):
    a, b = ab
    c = embed(c0, a.order) if a.order % c0.order == 0 else Cyclotomic.rational(3, a.order)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(cyclotomics())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
        return
    assert a * a.inverse() == 1
    assert abs(numeric(a.inverse()) * numeric(a) - 1) < 1e-6


@given(pairs(), st.integers(min_value=1, max_value=40))
def test_galois_action_is_a_ring_homomorphism(ab, k):
    a, b = ab
    n = a.order
    from math import gcd
    if gcd(k, n) != 1:
        with pytest.raises(ValueError):
            galois_apply(a, k)
        return
    assert galois_apply(a + b, k) == galois_apply(a, k) + galois_apply(b, k)
    assert galois_apply(a * b, k) == galois_apply(a, k) * galois_apply(b, k)
    assert galois_apply(Cyclotomic.zeta(n), k) == Cyclotomic.zeta(n, k)


def test_complex_conjugation_of_zeta():
    z = Cyclotomic.zeta(8)
    assert galois_apply(z, -1) == z ** 7
    assert z * galois_apply(z, -1) == 1


@given(cyclotomics(), st.sampled_from([2, 3, 4]))
def test_embedding_preserves_value(a, m):
    big = embed(a, a.order * m)
    assert abs(numeric(big) - numeric(a)) < 1e-9
    assert big == a


def test_rational_extraction():
    assert as_rational(Cyclotomic.rational(Fraction(3, 4), 8)) == Fraction(3, 4)
    assert as_rational(Cyclotomic.zeta(3) + Cyclotomic.zeta(3, 2)) == -1
    with pytest.raises(ValueError):
        as_rational(Cyclotomic.zeta(4))


def test_mixing_orders_raises():
    with pytest.raises(OrderMismatchError):
        Cyclotomic.zeta(4) + Cyclotomic.zeta(3)


def test_json_round_trip():
    x = Cyclotomic(8, [Fraction(1, 3), 0, -2, Fraction(5, 7)])
    assert Cyclotomic.from_json(x.to_json()) == x
    assert x.to_json()["coeffs"] == ["1/3", "0", "-2", "5/7"]
    assert Cyclotomic.from_json("-3/4") == Fraction(-3, 4)


def test_rational_parsing():
    assert parse_rational("6/4") == Fraction(3, 2)
    assert parse_rational(-2) == -2
    assert format_rational(Fraction(3, 2)) == "3/2"
    assert format_rational(Fraction(4, 2)) == "2"
    with pytest.raises(ValueError):
        parse_rational("one half")


@given(cyclotomics(), st.sampled_from([2, 3, 5]))
def test_equal_values_across_orders_hash_equal(a, m):
    big = embed(a, a.order * m)
    assert big == a and hash(big) == hash(a)


@given(cyclotomics())
def test_normalized_trace_is_mean_of_conjugates(a):
    from math import gcd
    n = a.order
    conj = [numeric(galois_apply(a, k)) for k in range(1, n + 1) if gcd(k, n) == 1]
    assert abs(float(normalized_trace(a)) - sum(conj).real / len(conj)) < 1e-9


def test_zeta4_equals_zeta8_squared():
    assert Cyclotomic.zeta(4) == Cyclotomic.zeta(8, 2)
    assert Cyclotomic.zeta(4) != Cyclotomic.zeta(8)
    assert hash(Cyclotomic.zeta(3)) == hash(Cyclotomic.zeta(6, 2))
