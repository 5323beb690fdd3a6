"""Base-field arithmetic: rationals and prime fields."""

import random
from fractions import Fraction

import pytest

from scrollalg.fields import (
    GF,
    QQ,
    FieldError,
    PrimeField,
    field_from_descriptor,
)


def test_rationals_basic():
    F = QQ
    a = F.of("3/4")
    b = F.of(-2)
    assert F.add(a, b) == Fraction(-5, 4)
    assert F.mul(a, F.inv(a)) == F.one()
    assert F.is_zero(F.sub(a, a))
    assert F.parse(F.fmt(a)) == a


def test_rationals_reject_floats():
    with pytest.raises(FieldError):
        QQ.of(0.5)


def test_rationals_division_by_zero():
    with pytest.raises(FieldError):
        QQ.inv(QQ.zero())


def test_prime_field_basic():
    F = GF(7)
    assert F.of(10) == 3
    assert F.of("3/4") == F.div(3, 4)
    assert F.mul(F.of(3), F.inv(F.of(3))) == 1
    assert list(F.elements()) == list(range(7))


def test_prime_field_characteristic_two():
    # the smallest field must be constructible for the exhaustive census
    F = GF(2)
    assert F.add(1, 1) == 0
    assert F.inv(1) == 1


def test_non_prime_modulus_rejected():
    for n in (0, 1, 4, 9, 15):
        with pytest.raises(FieldError):
            PrimeField(n)


def test_field_descriptors():
    assert field_from_descriptor("Q") == QQ
    assert field_from_descriptor("Fp:101") == GF(101)
    for bad in ("R", "Fp:", "Fp:6", "fp:5"):
        with pytest.raises(FieldError):
            field_from_descriptor(bad)


def test_field_axioms_random():
    rng = random.Random(0)
    for F in (QQ, GF(5), GF(101)):
        for _ in range(50):
            a, b, c = (F.random(rng) for _ in range(3))
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            if not F.is_zero(a):
                assert F.mul(a, F.inv(a)) == F.one()
