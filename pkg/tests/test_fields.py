from fractions import Fraction
from random import Random

import pytest

from invarcoh.errors import (
    DivisionByZero,
    FieldMismatch,
    NotPrime,
    OrderNotInvertible,
)
from invarcoh.fields import (
    QQ,
    PrimeField,
    check_group_order_invertible,
    field_from_json,
    is_prime,
    scalar_arith,
)


def test_rational_examples():
    assert scalar_arith(QQ, Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)
    a = Fraction(-7, 3)
    assert scalar_arith(QQ, a, a, "div") == 1


def test_prime_field_examples():
    F7 = PrimeField(7)
    assert scalar_arith(F7, 3, 5, "mul") == 1
    assert scalar_arith(F7, 3, 3, "div") == 1
    assert F7.inv(3) == 5  # 3 * 5 = 15 = 1 mod 7


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        scalar_arith(QQ, Fraction(1), Fraction(0), "div")
    with pytest.raises(DivisionByZero):
        scalar_arith(PrimeField(5), 1, 0, "div")


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        scalar_arith(PrimeField(5), Fraction(1, 2), 1, "add")


def test_primality():
    assert is_prime(2) and is_prime(7) and is_prime(101) and is_prime(2**61 - 1)
    assert not is_prime(1) and not is_prime(9) and not is_prime(561)  # Carmichael
    with pytest.raises(NotPrime):
        PrimeField(6)


def test_order_invertibility():
    check_group_order_invertible(QQ, 4)
    check_group_order_invertible(PrimeField(7), 4)
    with pytest.raises(OrderNotInvertible):
        check_group_order_invertible(PrimeField(2), 4)


def test_field_from_json():
    assert field_from_json({"kind": "Q"}) is QQ
    f = field_from_json({"kind": "GFp", "p": 7})
    assert f.p == 7
    assert f == PrimeField(7)


def test_field_axioms_randomized():
    rng = Random(0)
    for field in (QQ, PrimeField(13)):
        for _ in range(200):
            if field is QQ:
                a, b, c = (
                    Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3)
                )
            else:
                a, b, c = (rng.randrange(13) for _ in range(3))
            assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
            assert field.mul(a, b) == field.mul(b, a)
            assert field.mul(a, field.add(b, c)) == field.add(
                field.mul(a, b), field.mul(a, c)
            )


def test_canonical_normalization():
    # equal values have identical stored representations
    assert QQ.parse("2/4") == QQ.parse("1/2") == Fraction(1, 2)
    assert QQ.parse("-2/4") == Fraction(-1, 2)
    F7 = PrimeField(7)
    assert F7.parse("-1") == 6
    assert F7.from_int(15) == 1
