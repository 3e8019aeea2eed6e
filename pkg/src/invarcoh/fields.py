"""Exact scalar arithmetic over the rationals and prime fields GF(p).

Every number the engine touches is either a ``fractions.Fraction`` (over Q)
or an ``int`` residue in ``[0, p)`` (over GF(p)).  A ``Field`` object mediates
all arithmetic so that higher layers stay generic.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import (
    DivisionByZero,
    FieldMismatch,
    NotPrime,
    OrderNotInvertible,
    ParseError,
    UnsupportedField,
)

# Deterministic Miller-Rabin witnesses for n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Abstract base for the two scalar fields the engine supports."""

    kind: str

    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.describe()

    def describe(self) -> str:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    # arithmetic
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def div(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        return self.div(self.one, a)

    def from_int(self, k: int):
        raise NotImplementedError

    def contains(self, a) -> bool:
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    def to_str(self, a) -> str:
        raise NotImplementedError


class RationalField(Field):
    kind = "Q"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def key(self):
        return ("Q",)

    def describe(self):
        return "Q"

    def to_json(self):
        return {"kind": "Q"}

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero in Q")
        return a / b

    def neg(self, a):
        return -a

    def from_int(self, k):
        return Fraction(k)

    def contains(self, a):
        return isinstance(a, (Fraction, int)) and not isinstance(a, bool)

    def parse(self, s):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"invalid rational scalar {s!r}: {exc}") from None

    def to_str(self, a):
        return str(a)


class PrimeField(Field):
    kind = "GFp"

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def key(self):
        return ("GFp", self.p)

    def describe(self):
        return f"GF({self.p})"

    def to_json(self):
        return {"kind": "GFp", "p": self.p}

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def div(self, a, b):
        b %= self.p
        if b == 0:
            raise DivisionByZero(f"division by zero in GF({self.p})")
        return a * pow(b, self.p - 2, self.p) % self.p

    def neg(self, a):
        return -a % self.p

    def from_int(self, k):
        return k % self.p

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.p

    def parse(self, s):
        s = s.strip()
        try:
            q = Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"invalid scalar {s!r}: {exc}") from None
        return self.div(self.from_int(q.numerator), self.from_int(q.denominator))

    def to_str(self, a):
        return str(a % self.p)


QQ = RationalField()


def field_from_json(spec: dict) -> Field:
    """Build a field from its job-file form, {"kind": "Q"} or {"kind": "GFp", "p": 7}."""
    kind = spec.get("kind")
    if kind == "Q":
        return QQ
    if kind == "GFp":
        if "p" not in spec:
            raise ParseError('field spec {"kind": "GFp"} requires "p"')
        return PrimeField(int(spec["p"]))
    raise UnsupportedField(f"unknown field kind {kind!r}")


def scalar_arith(field: Field, a, b, op: str):
    """Single exact field operation; op is one of add, sub, mul, div."""
    for x in (a, b):
        if not field.contains(x):
            raise FieldMismatch(f"{x!r} is not an element of {field.describe()}")
    try:
        return {"add": field.add, "sub": field.sub, "mul": field.mul, "div": field.div}[op](a, b)
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None


def check_group_order_invertible(field: Field, order: int) -> None:
    """Raise OrderNotInvertible unless |G| is a unit in the field."""
    if order < 1:
        raise ValueError("group order must be positive")
    if isinstance(field, PrimeField) and order % field.p == 0:
        raise OrderNotInvertible(
            f"group order {order} is divisible by the characteristic {field.p}"
        )
