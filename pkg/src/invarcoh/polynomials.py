"""Sparse multivariate polynomials with exact coefficients and graded bookkeeping.

Monomials are exponent tuples.  The canonical term order is graded-lex:
ascending total degree, and within a degree descending lexicographic on the
exponent tuple, so for n = 2, d = 2 the order is x^2, x*y, y^2.  All
coordinate vectors and matrices elsewhere in the package are taken against
this order.
"""
from __future__ import annotations

from math import comb

from .errors import NotHomogeneous, ParseError, RingMismatch
from .fields import Field

Monomial = tuple  # exponent tuple of length n


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_key(m: Monomial):
    """Sort key realizing the graded-lex order."""
    return (sum(m), tuple(-e for e in m))


def monomials_of_degree(n: int, d: int):
    """All exponent tuples of total degree d, in canonical (graded-lex) order."""
    if n == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - e):
            yield (e,) + rest


class PolyRing:
    """The polynomial ring K[x_1, ..., x_n] with a fixed variable order."""

    def __init__(self, field: Field, n: int, var_names: list[str] | None = None):
        if n < 1:
            raise ValueError("need at least one variable")
        self.field = field
        self.n = n
        if var_names is None:
            var_names = list("xyz"[:n]) if n <= 3 else [f"x{i + 1}" for i in range(n)]
        if len(var_names) != n:
            raise ValueError("wrong number of variable names")
        self.var_names = list(var_names)
        self._name_to_index = {name: i for i, name in enumerate(var_names)}
        for i in range(n):
            self._name_to_index.setdefault(f"x{i + 1}", i)
        self._basis_cache: dict[int, list[Monomial]] = {}

    def key(self):
        return (self.field.key(), self.n)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"{self.field.describe()}[{', '.join(self.var_names)}]"

    # --- constructors ---------------------------------------------------
    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(self.field.one)

    def constant(self, c):
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {(0,) * self.n: c})

    def variable(self, i: int):
        e = [0] * self.n
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def term(self, c, exps: Monomial):
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {tuple(exps): c})

    def from_terms(self, terms: dict):
        return Polynomial(self, {m: c for m, c in terms.items() if c != self.field.zero})

    def monomial_basis(self, d: int) -> list[Monomial]:
        """All monomials of total degree d in canonical order; length C(n+d-1, d)."""
        if d < 0:
            raise ValueError("degree must be non-negative")
        if d not in self._basis_cache:
            basis = list(monomials_of_degree(self.n, d))
            assert len(basis) == comb(self.n + d - 1, d)
            self._basis_cache[d] = basis
        return self._basis_cache[d]

    def from_coords(self, d: int, vec):
        basis = self.monomial_basis(d)
        return self.from_terms({m: c for m, c in zip(basis, vec)})

    def parse(self, text: str):
        return _parse_polynomial(self, text)


class Polynomial:
    """Immutable sparse polynomial.  ``terms`` maps exponent tuple -> nonzero scalar."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(mono_degree(m) for m in self.terms)

    @property
    def homogeneous_degree(self):
        """The common total degree of all terms, or None if not homogeneous/zero."""
        degs = {mono_degree(m) for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]))

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"cannot combine {self.ring!r} with {other.ring!r}")

    def __add__(self, other):
        self._check_ring(other)
        field = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = field.add(out.get(m, field.zero), c)
            if s == field.zero:
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.ring, out)

    def __neg__(self):
        field = self.ring.field
        return Polynomial(self.ring, {m: field.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_ring(other)
        field = self.ring.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = field.add(out.get(m, field.zero), field.mul(c1, c2))
                if s == field.zero:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(self.ring, out)

    def scale(self, c):
        field = self.ring.field
        if c == field.zero:
            return self.ring.zero()
        return Polynomial(self.ring, {m: field.mul(c, x) for m, x in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring.key(), frozenset(self.terms.items())))

    def coords(self, d: int):
        """Coordinate vector against monomial_basis(d); requires homogeneity."""
        if not self.terms:
            return [self.ring.field.zero] * len(self.ring.monomial_basis(d))
        if self.homogeneous_degree != d:
            raise NotHomogeneous(f"{self} is not homogeneous of degree {d}")
        field = self.ring.field
        return [self.terms.get(m, field.zero) for m in self.ring.monomial_basis(d)]

    def partial(self, i: int):
        """Partial derivative with respect to the i-th variable."""
        field = self.ring.field
        out: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            new = list(m)
            new[i] = e - 1
            coeff = field.mul(c, field.from_int(e))
            if coeff != field.zero:
                out[tuple(new)] = coeff
        return Polynomial(self.ring, out)

    def __str__(self):
        if not self.terms:
            return "0"
        field = self.ring.field
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.var_names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            cs = field.to_str(c)
            if factors:
                body = "*".join(factors)
                if cs == "1":
                    parts.append(body)
                elif cs == "-1":
                    parts.append(f"-{body}")
                else:
                    parts.append(f"{cs}*{body}")
            else:
                parts.append(cs)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def coords(f: Polynomial, d: int):
    return f.coords(d)


# --- parser -------------------------------------------------------------
#
# Grammar: integer or rational coefficients, ring variables, + - * ^ and
# parentheses; juxtaposition also multiplies.  '/' is only valid inside an
# integer/integer literal, so "1/2*x" parses and "x/2" does not.

_OPS = set("+-*^()")


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = text[i:j]
            if j < n and text[j] == "/":
                k = j + 1
                if k >= n or not text[k].isdigit():
                    raise ParseError("expected digits after '/'", column=j + 2)
                m = k
                while m < n and text[m].isdigit():
                    m += 1
                tokens.append(("num", num + "/" + text[k:m], col))
                i = m
            else:
                tokens.append(("num", num, col))
                i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], col))
            i = j
        elif ch in _OPS:
            tokens.append(("op", ch, col))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", column=col)
    return tokens


class _Parser:
    def __init__(self, ring: PolyRing, tokens):
        self.ring = ring
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expr(self) -> Polynomial:
        sign = 1
        tok = self.peek()
        if tok and tok[:2] in (("op", "+"), ("op", "-")):
            self.next()
            sign = -1 if tok[1] == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.next()
                rhs = self.term()
                result = result + rhs if tok[1] == "+" else result - rhs
            else:
                return result

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            tok = self.peek()
            if tok and tok[:2] == ("op", "*"):
                self.next()
                result = result * self.factor()
            elif tok and (tok[0] in ("num", "name") or tok[:2] == ("op", "(")):
                # implicit multiplication by juxtaposition
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Polynomial:
        base = self.atom()
        while True:
            tok = self.peek()
            if tok and tok[:2] == ("op", "^"):
                self.next()
                etok = self.peek()
                if etok is None or etok[0] != "num" or "/" in etok[1]:
                    col = etok[2] if etok else None
                    raise ParseError("expected a non-negative integer exponent", column=col)
                self.next()
                base = base ** int(etok[1])
            else:
                return base

    def atom(self) -> Polynomial:
        tok = self.next()
        kind, value, col = tok
        if kind == "num":
            return self.ring.constant(self.ring.field.parse(value))
        if kind == "name":
            idx = self.ring._name_to_index.get(value)
            if idx is None:
                raise ParseError(f"unknown variable {value!r}", column=col)
            return self.ring.variable(idx)
        if (kind, value) == ("op", "("):
            inner = self.expr()
            closing = self.next()
            if closing[:2] != ("op", ")"):
                raise ParseError("expected ')'", column=closing[2])
            return inner
        if (kind, value) == ("op", "-"):
            return -self.atom()
        raise ParseError(f"unexpected token {value!r}", column=col)


def _parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial")
    parser = _Parser(ring, tokens)
    result = parser.expr()
    tok = parser.peek()
    if tok is not None:
        raise ParseError(f"unexpected token {tok[1]!r}", column=tok[2])
    return result
