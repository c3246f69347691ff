import random

from fractions import Fraction

import pytest

from braceflow.errors import CharacteristicTooSmall, FieldMismatch
from braceflow.scalars import GF, Fp, Q, ScalarField


def test_field_construction():
    assert Q.characteristic == 0
    assert GF(7).characteristic == 7
    assert GF(7) == ScalarField(7)
    assert GF(7) != Q
    with pytest.raises(ValueError):
        ScalarField(6)
    with pytest.raises(ValueError):
        ScalarField(1)


def test_rational_canonical_form():
    x = Q.of("4/6")
    assert x == Fraction(2, 3)
    assert Q.to_str(x) == "2/3"
    assert Q.to_str(Q.of(-3)) == "-3"
    assert Q.of("-4/8") == Fraction(-1, 2)
    assert Q.from_str("7/3") == Fraction(7, 3)


def test_floats_rejected():
    with pytest.raises(TypeError):
        Q.of(0.5)
    with pytest.raises(TypeError):
        GF(7).of(0.5)


def test_prime_field_arithmetic():
    F = GF(7)
    a, b = F.of(3), F.of(5)
    assert a + b == F.of(1)
    assert a - b == F.of(-2) == F.of(5)
    assert a * b == F.of(1)
    assert a / b == a * F.of(3)  # 1/5 = 3 mod 7
    assert -a == F.of(4)
    assert F.of(Fraction(1, 2)) == F.of(4)
    assert bool(F.of(0)) is False
    with pytest.raises(ZeroDivisionError):
        a / F.of(0)


def test_prime_field_mismatch():
    with pytest.raises(FieldMismatch):
        GF(7).of(3) + GF(11).of(3)
    with pytest.raises(FieldMismatch):
        Q.of(Fp(7, 3))


def test_inverse_helpers():
    assert Q.inv_int(4) == Fraction(1, 4)
    assert Q.inv_factorial(4) == Fraction(1, 24)
    F = GF(7)
    assert F.inv_int(3) * F.of(3) == F.one
    assert F.inv_factorial(3) * F.of(6) == F.one
    with pytest.raises(CharacteristicTooSmall):
        F.inv_int(14)
    with pytest.raises(CharacteristicTooSmall):
        F.inv_factorial(7)
    with pytest.raises(CharacteristicTooSmall):
        F.of(Fraction(1, 7))


def test_division_round_trip_exact():
    rng = random.Random(7)
    for _ in range(200):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
        b = Fraction(rng.randint(1, 50), rng.randint(1, 30))
        assert (a / b) * b == a


def test_prime_field_string_round_trip():
    F = GF(11)
    for r in range(11):
        assert F.from_str(F.to_str(F.of(r))) == F.of(r)
