"""Tests for exact cyclotomic arithmetic."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from bcwheel.cyclotomic import (
    Cyclotomic,
    CyclotomicField,
    RationalField,
    cyclotomic_polynomial,
    euler_phi,
    scalar_field,
)


def test_cyclotomic_polynomials_small_orders():
    # frozen from the recursive x^n - 1 factorization
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_coordinate_length_is_euler_phi():
    for order in (1, 2, 3, 4, 5, 6, 8, 12):
        x = Cyclotomic.zeta(order)
        assert len(x.coords) == euler_phi(order)


def test_zeta4_squares_to_minus_one():
    i = Cyclotomic.zeta(4)
    assert i * i == Cyclotomic.from_rational(4, -1)


def test_zeta2_squares_to_one():
    m = Cyclotomic.zeta(2)
    assert m * m == Cyclotomic.from_rational(2, 1)


def test_one_plus_zeta3_times_one_plus_zeta3_squared():
    # oracle: zeta3^2 = -1 - zeta3, so (1+z)(1+z^2) = (1+z)(-z) = -z - z^2 = 1
    one = Cyclotomic.from_rational(3, 1)
    z = Cyclotomic.zeta(3)
    lhs = (one + z) * (one + z * z)
    assert lhs == one


def test_mismatched_orders_raise():
    with pytest.raises(ValueError):
        Cyclotomic.zeta(3) * Cyclotomic.zeta(4)


def test_embedding_preserves_products():
    # zeta_3 inside Q(zeta_12)
    z3 = Cyclotomic.zeta(3).embed(12)
    z12 = Cyclotomic.zeta(12)
    assert z3 == z12 ** 4
    assert z3 ** 3 == Cyclotomic.from_rational(12, 1)


def test_root_powers_have_exact_order():
    for order in (3, 4, 5, 6, 8):
        z = Cyclotomic.zeta(order)
        acc = Cyclotomic.from_rational(order, 1)
        for k in range(1, order):
            acc = acc * z
            assert bool(acc - Cyclotomic.from_rational(order, 1)) == (k != order)
        assert z ** order == Cyclotomic.from_rational(order, 1)


def test_field_axioms_sampled():
    rng = random.Random(20260816)
    for order in (1, 2, 3, 4, 6, 8):
        deg = euler_phi(order)
        def rand():
            return Cyclotomic(order, tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                                           for _ in range(deg)))
        for _ in range(25):
            a, b, c = rand(), rand(), rand()
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            if a:
                assert a * a.inverse() == Cyclotomic.from_rational(order, 1)
                assert (a * b) / a == b


def test_pow_negative_uses_inverse():
    z = Cyclotomic.zeta(8)
    assert z ** -1 == z ** 7
    assert z ** -3 == (z ** 3).inverse()


def test_scalar_field_dispatch():
    assert isinstance(scalar_field(1), RationalField)
    assert isinstance(scalar_field(2), RationalField)
    assert isinstance(scalar_field(4), CyclotomicField)
    assert scalar_field(2).root() == Fraction(-1)
    assert scalar_field(1).root() == Fraction(1)
    f4 = scalar_field(4)
    assert f4.root() * f4.root() == f4.coerce(-1)


def test_rational_field_coerces_degenerate_cyclotomic():
    f = scalar_field(2)
    assert f.coerce(Cyclotomic.from_rational(2, 3)) == Fraction(3)
    assert f.coerce(5) == Fraction(5)
