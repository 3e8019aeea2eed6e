"""Graded pieces and minimal generators of the invariant ring R^G.

Everything stays inside R: a degree-d invariant piece is the echelonized
image of the Reynolds operator on the degree-d monomial basis, and minimal
generators are extracted degree by degree modulo products of earlier ones.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .groups import FiniteMatrixGroup, default_ring, reynolds
from .polynomials import PolyRing, Polynomial


@dataclass
class InvariantPiece:
    degree: int
    basis: list  # homogeneous invariant Polynomials, echelonized
    dim: int


@dataclass
class InvariantPresentation:
    generators: list  # (degree, Polynomial)
    degree_bound: int
    hilbert_numerator: list = dc_field(default_factory=list)


def invariant_basis(group: FiniteMatrixGroup, d: int, ring: PolyRing | None = None) -> InvariantPiece:
    """Echelonized basis of the degree-d invariants (R^G)_d."""
    if ring is None:
        ring = default_ring(group)
    if d == 0:
        return InvariantPiece(0, [ring.one()], 1)
    monos = ring.monomial_basis(d)
    rows = []
    for m in monos:
        img = reynolds(group, ring.term(ring.field.one, m))
        if not img.is_zero:
            rows.append(img.coords(d))
    if not rows:
        return InvariantPiece(d, [], 0)
    red, pivots = linalg.rref(ring.field, rows)
    basis = [ring.from_coords(d, red[i]) for i in range(len(pivots))]
    return InvariantPiece(d, basis, len(pivots))


def hilbert_series(group: FiniteMatrixGroup, max_degree: int, ring: PolyRing | None = None) -> list[int]:
    """dim (R^G)_d for d = 0..max_degree."""
    if ring is None:
        ring = default_ring(group)
    return [invariant_basis(group, d, ring).dim for d in range(max_degree + 1)]


def minimal_generators(
    group: FiniteMatrixGroup, degree_bound: int, ring: PolyRing | None = None
) -> InvariantPresentation:
    """Minimal algebra generators of R^G up to the degree bound.

    In each degree d, new generators are the invariant-piece basis vectors not
    spanned by products of previously found generators, preferring echelon
    vectors in graded-lex coordinate order.
    """
    if ring is None:
        ring = default_ring(group)
    field = ring.field
    generators: list[tuple[int, Polynomial]] = []
    algebra_basis: dict[int, list[Polynomial]] = {0: [ring.one()]}
    hilb = [1]
    for d in range(1, degree_bound + 1):
        piece = invariant_basis(group, d, ring)
        hilb.append(piece.dim)
        products = []
        for deg_g, g in generators:
            if deg_g <= d:
                for b in algebra_basis.get(d - deg_g, []):
                    products.append((g * b).coords(d))
        tracker = linalg.EchelonTracker(field)
        for v in products:
            tracker.add(v)
        for b in piece.basis:
            if tracker.add(b.coords(d)):
                generators.append((d, b))
        algebra_basis[d] = piece.basis
    numerator = _hilbert_numerator(hilb, [deg for deg, _ in generators], degree_bound)
    return InvariantPresentation(generators, degree_bound, numerator)


def _hilbert_numerator(hilb: list[int], gen_degrees: list[int], bound: int) -> list[int]:
    """Coefficients of H(t) * prod (1 - t^{d_i}), truncated at the bound."""
    num = list(hilb)
    for d in gen_degrees:
        new = num[:]
        for k in range(d, bound + 1):
            new[k] -= num[k - d]
        num = new
    return num
