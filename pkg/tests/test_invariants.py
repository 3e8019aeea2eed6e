from random import Random

from invarcoh import linalg
from invarcoh.fields import QQ, PrimeField
from invarcoh.groups import (
    SquareMatrix,
    act,
    close_group,
    default_ring,
    molien_coefficients,
    stock_group,
)
from invarcoh.invariants import hilbert_series, invariant_basis, minimal_generators
from invarcoh.polynomials import PolyRing


def test_invariant_basis_examples():
    minus = stock_group("minus_identity")
    assert invariant_basis(minus, 1).dim == 0
    piece = invariant_basis(minus, 2)
    ring = default_ring(minus)
    assert piece.dim == 3
    assert piece.basis == [ring.parse("x^2"), ring.parse("x*y"), ring.parse("y^2")]


def test_invariant_basis_over_gf7():
    F7 = PrimeField(7)
    g = close_group([SquareMatrix(F7, [[2, 0], [0, 2]])])  # 2 has order 3 mod 7
    assert g.order == 3
    assert invariant_basis(g, 3).dim == 4
    assert invariant_basis(g, 1).dim == 0
    assert invariant_basis(g, 2).dim == 0


def test_basis_elements_are_invariant_and_independent():
    for name in ("minus_identity", "c3", "c4", "d4"):
        g = stock_group(name)
        for d in range(0, 7):
            piece = invariant_basis(g, d)
            for b in piece.basis:
                assert all(act(s, b) == b for s in g.elements)
            if piece.dim:
                coords = [b.coords(d) for b in piece.basis]
                assert linalg.rank(g.field, coords) == piece.dim


def test_hilbert_series_examples():
    assert hilbert_series(stock_group("minus_identity"), 4) == [1, 0, 3, 0, 5]
    trivial1 = close_group([SquareMatrix(QQ, [[1]])])
    assert hilbert_series(trivial1, 3, PolyRing(QQ, 1)) == [1, 1, 1, 1]
    c4 = stock_group("c4")
    series = hilbert_series(c4, 4)
    assert series == molien_coefficients(c4, 4)
    assert series[4] >= 2  # contains (x^2+y^2)^2 and x^3 y - x y^3


def test_minimal_generators_second_veronese():
    minus = stock_group("minus_identity")
    pres = minimal_generators(minus, 4)
    ring = default_ring(minus)
    assert [(d, g) for d, g in pres.generators] == [
        (2, ring.parse("x^2")),
        (2, ring.parse("x*y")),
        (2, ring.parse("y^2")),
    ]


def test_minimal_generators_trivial_group():
    trivial = stock_group("trivial")
    pres = minimal_generators(trivial, 3)
    ring = default_ring(trivial)
    assert pres.generators == [(1, ring.parse("x")), (1, ring.parse("y"))]


def test_minimal_generators_third_veronese_gf7():
    F7 = PrimeField(7)
    g = close_group([SquareMatrix(F7, [[2, 0], [0, 2]])])
    pres = minimal_generators(g, 4)
    assert [d for d, _ in pres.generators] == [3, 3, 3, 3]


def test_generators_span_each_piece():
    g = stock_group("c4")
    pres = minimal_generators(g, 8)
    ring = default_ring(g)
    # rebuild each degree piece from generator products and compare dims
    algebra = {0: [ring.one()]}
    for d in range(1, 9):
        tracker = linalg.EchelonTracker(QQ)
        products = []
        for deg_g, gen in pres.generators:
            if deg_g <= d:
                for b in algebra.get(d - deg_g, []):
                    products.append(gen * b)
        for p in products:
            tracker.add(p.coords(d))
        piece = invariant_basis(g, d)
        assert tracker.rank == piece.dim
        algebra[d] = piece.basis


def test_multiplicativity_of_invariant_pieces():
    rng = Random(13)
    g = stock_group("c3")
    for _ in range(10):
        a, b = rng.randint(1, 3), rng.randint(1, 3)
        pa, pb = invariant_basis(g, a), invariant_basis(g, b)
        pab = invariant_basis(g, a + b)
        span = [v.coords(a + b) for v in pab.basis]
        for f in pa.basis:
            for h in pb.basis:
                prod = (f * h).coords(a + b)
                assert linalg.solve(QQ, linalg.transpose(span), prod) is not None
