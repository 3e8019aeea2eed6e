"""Finite matrix groups, their linear action on polynomials, the Reynolds
operator, Molien series, the SL predicate, and the induced action on
first-order differential operators.

Action convention: a matrix T sends the variable x_j to sum_i T[i][j] x_i
(column convention), which makes act(sigma) o act(tau) = act(sigma tau) with
the ordinary matrix product.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .errors import (
    FieldMismatch,
    NotFiniteWithinBound,
    UnsupportedField,
    ValidationError,
)
from .fields import Field, QQ, RationalField, check_group_order_invertible
from .polynomials import PolyRing, Polynomial


class SquareMatrix:
    """An invertible n x n matrix over a field.  Immutable; det is cached."""

    __slots__ = ("field", "n", "entries", "det")

    def __init__(self, field: Field, rows):
        self.field = field
        self.n = len(rows)
        entries = tuple(tuple(row) for row in rows)
        if any(len(row) != self.n for row in entries):
            raise ValidationError("matrix is not square")
        for row in entries:
            for x in row:
                if not field.contains(x):
                    raise FieldMismatch(f"entry {x!r} not in {field.describe()}")
        self.entries = entries
        self.det = linalg.det(field, [list(row) for row in entries])
        if self.det == field.zero:
            raise ValidationError("matrix is singular")

    def key(self):
        return self.entries

    def __eq__(self, other):
        return (
            isinstance(other, SquareMatrix)
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field.key(), self.entries))

    def __matmul__(self, other):
        if self.field != other.field:
            raise FieldMismatch("matrix product over different fields")
        rows = linalg.mat_mul(
            self.field, [list(r) for r in self.entries], [list(r) for r in other.entries]
        )
        return SquareMatrix(self.field, rows)

    def inverse(self):
        inv = linalg.inverse(self.field, [list(r) for r in self.entries])
        return SquareMatrix(self.field, inv)

    def is_identity(self) -> bool:
        f = self.field
        return all(
            x == (f.one if i == j else f.zero)
            for i, row in enumerate(self.entries)
            for j, x in enumerate(row)
        )

    def __repr__(self):
        rows = "; ".join(
            ", ".join(self.field.to_str(x) for x in row) for row in self.entries
        )
        return f"[{rows}]"


def identity_matrix(field: Field, n: int) -> SquareMatrix:
    return SquareMatrix(field, linalg.identity(field, n))


def matrix_from_strings(field: Field, rows: list[list[str]]) -> SquareMatrix:
    return SquareMatrix(field, [[field.parse(x) for x in row] for row in rows])


class FiniteMatrixGroup:
    """A closed finite subgroup of GL_n(K), elements in a canonical order.

    The identity is element 0; the rest follow in BFS-from-generators order
    with ties broken by the entry tuple.
    """

    def __init__(self, elements: list[SquareMatrix], generator_indices: list[int]):
        self.elements = elements
        self.order = len(elements)
        self.field = elements[0].field
        self.n = elements[0].n
        self.generator_indices = generator_indices
        self._index = {m.key(): i for i, m in enumerate(elements)}
        if len(self._index) != self.order:
            raise ValidationError("duplicate group elements")
        if not elements[0].is_identity():
            raise ValidationError("element 0 must be the identity")
        self._mult_cache: dict[tuple[int, int], int] = {}
        self._inv_cache: dict[int, int] = {}

    def index_of(self, m: SquareMatrix) -> int:
        try:
            return self._index[m.key()]
        except KeyError:
            raise ValidationError("matrix is not a group element") from None

    def mult(self, i: int, j: int) -> int:
        key = (i, j)
        if key not in self._mult_cache:
            self._mult_cache[key] = self.index_of(self.elements[i] @ self.elements[j])
        return self._mult_cache[key]

    def inv(self, i: int) -> int:
        if i not in self._inv_cache:
            self._inv_cache[i] = self.index_of(self.elements[i].inverse())
        return self._inv_cache[i]

    def verify_closed(self) -> bool:
        """Exhaustive closure check (products and inverses stay inside)."""
        for i in range(self.order):
            self.inv(i)
            for j in range(self.order):
                self.mult(i, j)
        return True

    def determinants(self):
        return [m.det for m in self.elements]


def close_group(generators: list[SquareMatrix], max_order: int = 10000) -> FiniteMatrixGroup:
    """Close a generator list under multiplication, breadth-first.

    Raises NotFiniteWithinBound if more than max_order elements appear.
    """
    if not generators:
        raise ValidationError("need at least one generator")
    field = generators[0].field
    n = generators[0].n
    for g in generators:
        if g.field != field or g.n != n:
            raise FieldMismatch("generators must share a field and size")
    ident = identity_matrix(field, n)
    elements = [ident]
    seen = {ident.key()}
    frontier = [ident]
    while frontier:
        new = []
        for a in frontier:
            for g in generators:
                prod = a @ g
                if prod.key() not in seen:
                    seen.add(prod.key())
                    new.append(prod)
        new.sort(key=lambda m: m.key())
        elements.extend(new)
        if len(elements) > max_order:
            raise NotFiniteWithinBound(
                f"closure exceeded {max_order} elements; the group may be infinite"
            )
        frontier = new
    check_group_order_invertible(field, len(elements))
    index = {m.key(): i for i, m in enumerate(elements)}
    gen_indices = [index[g.key()] for g in generators]
    return FiniteMatrixGroup(elements, gen_indices)


def default_ring(group: FiniteMatrixGroup) -> PolyRing:
    return PolyRing(group.field, group.n)


def act(sigma: SquareMatrix, f: Polynomial) -> Polynomial:
    """The ring automorphism substituting x_j -> sum_i T[i][j] x_i."""
    ring = f.ring
    if sigma.field != ring.field:
        raise FieldMismatch("matrix and polynomial over different fields")
    if sigma.n != ring.n:
        raise ValidationError("matrix size does not match the ring")
    images = _variable_images(sigma, ring)
    out = ring.zero()
    for m, c in f.terms.items():
        term = ring.constant(c)
        for j, e in enumerate(m):
            if e:
                term = term * images[j] ** e
        out = out + term
    return out


def _variable_images(sigma: SquareMatrix, ring: PolyRing):
    field = ring.field
    images = []
    for j in range(ring.n):
        terms = {}
        for i in range(ring.n):
            c = sigma.entries[i][j]
            if c != field.zero:
                e = [0] * ring.n
                e[i] = 1
                terms[tuple(e)] = c
        images.append(Polynomial(ring, terms))
    return images


def reynolds(group: FiniteMatrixGroup, f: Polynomial) -> Polynomial:
    """(1/|G|) sum over sigma of act(sigma, f); the averaging projector."""
    ring = f.ring
    total = ring.zero()
    for sigma in group.elements:
        total = total + act(sigma, f)
    inv_order = ring.field.inv(ring.field.from_int(group.order))
    return total.scale(inv_order)


def is_invariant(group: FiniteMatrixGroup, f: Polynomial) -> bool:
    return all(act(sigma, f) == f for sigma in group.elements)


def is_in_SL(group: FiniteMatrixGroup) -> bool:
    """Whether every group element has determinant one (forces a Gorenstein invariant ring)."""
    one = group.field.one
    return all(d == one for d in group.determinants())


# --- Molien series --------------------------------------------------------

def _det_one_minus_t(field, mat_entries):
    """det(I - t*T) as a coefficient list in t, by Leibniz expansion."""
    from itertools import permutations

    n = len(mat_entries)
    # entry polynomials e_{ij}(t) = delta_ij - T_ij * t, as (const, linear)
    ent = [
        [
            (field.one if i == j else field.zero, field.neg(mat_entries[i][j]))
            for j in range(n)
        ]
        for i in range(n)
    ]
    total = [field.zero] * (n + 1)
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        prod = [field.one]
        for i in range(n):
            c0, c1 = ent[i][perm[i]]
            new = [field.zero] * (len(prod) + 1)
            for k, a in enumerate(prod):
                if a != field.zero:
                    new[k] = field.add(new[k], field.mul(a, c0))
                    new[k + 1] = field.add(new[k + 1], field.mul(a, c1))
            prod = new
        for k, a in enumerate(prod):
            total[k] = field.add(total[k], a if sign > 0 else field.neg(a))
    return total


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _series_reciprocal(field, coeffs, order):
    """Power-series inverse of sum coeffs[k] t^k up to t^order."""
    c0 = coeffs[0]
    inv0 = field.inv(c0)
    out = [inv0]
    for k in range(1, order + 1):
        acc = field.zero
        for j in range(1, min(k, len(coeffs) - 1) + 1):
            acc = field.add(acc, field.mul(coeffs[j], out[k - j]))
        out.append(field.neg(field.mul(inv0, acc)))
    return out


def molien_coefficients(group: FiniteMatrixGroup, max_degree: int) -> list[int]:
    """Coefficients a_0..a_D of (1/|G|) sum_sigma 1/det(I - t*sigma).

    a_d equals the dimension of the degree-d invariants.  Rational base field
    only; over GF(p) use direct Reynolds rank computation instead.
    """
    if not isinstance(group.field, RationalField):
        raise UnsupportedField("Molien series requires the rational base field")
    field = group.field
    total = [field.zero] * (max_degree + 1)
    for sigma in group.elements:
        denom = _det_one_minus_t(field, [list(r) for r in sigma.entries])
        series = _series_reciprocal(field, denom, max_degree)
        total = [field.add(a, b) for a, b in zip(total, series)]
    inv_order = field.inv(field.from_int(group.order))
    out = []
    for a in total:
        v = field.mul(inv_order, a)
        if v.denominator != 1:
            raise ValidationError("Molien coefficient is not an integer")
        out.append(int(v))
    return out


# --- first-order differential operators -----------------------------------

@dataclass(frozen=True)
class FirstOrderOperator:
    """p_0 + sum_i p_i d/dx_i with polynomial coefficients."""

    ring: PolyRing
    coefficients: tuple  # length n + 1: (p_0, p_1, ..., p_n)

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if len(self.coefficients) != self.ring.n + 1:
            raise ValidationError("operator needs n + 1 coefficient polynomials")

    def apply(self, f: Polynomial) -> Polynomial:
        out = self.coefficients[0] * f
        for i in range(self.ring.n):
            out = out + self.coefficients[i + 1] * f.partial(i)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, FirstOrderOperator)
            and self.ring == other.ring
            and self.coefficients == other.coefficients
        )


def partial_operator(ring: PolyRing, i: int) -> FirstOrderOperator:
    coeffs = [ring.zero()] * (ring.n + 1)
    coeffs[i + 1] = ring.one()
    return FirstOrderOperator(ring, tuple(coeffs))


def act_on_operator(sigma: SquareMatrix, theta: FirstOrderOperator) -> FirstOrderOperator:
    """Conjugation action: the new operator takes f to sigma(theta(sigma^{-1} f)).

    The derivation part transforms by the inverse-transpose of the matrix.
    """
    ring = theta.ring
    if sigma.field != ring.field:
        raise FieldMismatch("matrix and operator over different fields")
    inv = sigma.inverse()
    p0 = act(sigma, theta.coefficients[0])
    moved = [act(sigma, theta.coefficients[i + 1]) for i in range(ring.n)]
    new_parts = []
    for k in range(ring.n):
        acc = ring.zero()
        for i in range(ring.n):
            c = inv.entries[i][k]
            if c != ring.field.zero:
                acc = acc + moved[i].scale(c)
        new_parts.append(acc)
    return FirstOrderOperator(ring, tuple([p0] + new_parts))


# --- stock groups used by tests and the oracle suite ----------------------

@lru_cache(maxsize=None)
def stock_group(name: str) -> FiniteMatrixGroup:
    """Small rational groups used across the test and verification suites."""
    f = QQ
    one, minus = f.one, f.neg(f.one)
    zero = f.zero
    gens = {
        "trivial": [identity_matrix(f, 2)],
        "minus_identity": [SquareMatrix(f, [[minus, zero], [zero, minus]])],
        "swap": [SquareMatrix(f, [[zero, one], [one, zero]])],
        "c3": [SquareMatrix(f, [[zero, minus], [one, minus]])],
        "c4": [SquareMatrix(f, [[zero, minus], [one, zero]])],
        "d4": [
            SquareMatrix(f, [[zero, minus], [one, zero]]),
            SquareMatrix(f, [[zero, one], [one, zero]]),
        ],
    }
    if name not in gens:
        raise KeyError(name)
    return close_group(gens[name])
