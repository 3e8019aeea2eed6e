"""Finite-dimensional equivariant chain complexes and their homology.

Terms carry a G-action through explicit matrices; differentials must commute
with the action.  Taking fixed points term by term yields a plain complex,
and the headline check is that its homology dimensions agree with the fixed
subspaces of the homology of the original complex.
"""
from __future__ import annotations

from dataclasses import dataclass
from random import Random

from . import linalg
from .errors import NotAComplex, NotEquivariant, ValidationError
from .fields import QQ
from .groups import FiniteMatrixGroup


@dataclass
class GRepresentation:
    """A finite-dimensional representation: one invertible matrix per element."""

    group: FiniteMatrixGroup
    mats: list  # indexed parallel to group.elements
    dim: int

    def check(self):
        g = self.group
        field = g.field
        ident = linalg.identity(field, self.dim)
        if self.mats[0] != ident:
            raise ValidationError("rho(identity) != I")
        for i in range(g.order):
            for j in range(g.order):
                lhs = linalg.mat_mul(field, self.mats[i], self.mats[j])
                if lhs != self.mats[g.mult(i, j)]:
                    raise ValidationError("rho is not a homomorphism")
        return True

    def mat(self, idx: int):
        return self.mats[idx]


def trivial_representation(group: FiniteMatrixGroup, dim: int = 1) -> GRepresentation:
    ident = linalg.identity(group.field, dim)
    return GRepresentation(group, [ident] * group.order, dim)


def regular_representation(group: FiniteMatrixGroup) -> GRepresentation:
    """Permutation matrices of left translation on the group itself."""
    field = group.field
    n = group.order
    mats = []
    for i in range(n):
        m = linalg.zeros(field, n, n)
        for j in range(n):
            m[group.mult(i, j)][j] = field.one
        mats.append(m)
    return GRepresentation(group, mats, n)


def direct_sum(reps: list[GRepresentation]) -> GRepresentation:
    group = reps[0].group
    field = group.field
    dim = sum(r.dim for r in reps)
    mats = []
    for idx in range(group.order):
        m = linalg.zeros(field, dim, dim)
        off = 0
        for r in reps:
            block = r.mats[idx]
            for i in range(r.dim):
                for j in range(r.dim):
                    m[off + i][off + j] = block[i][j]
            off += r.dim
        mats.append(m)
    return GRepresentation(group, mats, dim)


def conjugate(rep: GRepresentation, p) -> GRepresentation:
    field = rep.group.field
    pinv = linalg.inverse(field, p)
    if pinv is None:
        raise ValidationError("change of basis must be invertible")
    mats = [linalg.mat_mul(field, linalg.mat_mul(field, p, m), pinv) for m in rep.mats]
    return GRepresentation(rep.group, mats, rep.dim)


def reynolds_projector(rep: GRepresentation):
    """P = (1/|G|) sum rho(sigma): idempotent with image the fixed subspace."""
    group = rep.group
    field = group.field
    total = linalg.zeros(field, rep.dim, rep.dim)
    for m in rep.mats:
        total = [
            [field.add(a, b) for a, b in zip(tr, mr)] for tr, mr in zip(total, m)
        ]
    inv = field.inv(field.from_int(group.order))
    return [[field.mul(inv, x) for x in row] for row in total]


def fixed_subspace_dim(rep: GRepresentation) -> int:
    return linalg.rank(rep.group.field, reynolds_projector(rep))


@dataclass
class PlainComplex:
    """Terms 0..L with differentials diffs[k] : term_{k+1} -> term_k."""

    field: object
    dims: list
    diffs: list  # len(dims) - 1 matrices

    def check(self):
        for k in range(len(self.diffs) - 1):
            prod = linalg.mat_mul(self.field, self.diffs[k], self.diffs[k + 1])
            if not linalg.is_zero_matrix(self.field, prod):
                raise NotAComplex(f"d_{k + 1} o d_{k + 2} != 0")
        return True


@dataclass
class EquivariantComplex:
    """A PlainComplex together with a commuting G-action on every term."""

    reps: list  # GRepresentation per term
    diffs: list  # diffs[k] : term_{k+1} -> term_k

    @property
    def field(self):
        return self.reps[0].group.field

    @property
    def group(self):
        return self.reps[0].group

    def plain(self) -> PlainComplex:
        return PlainComplex(self.field, [r.dim for r in self.reps], self.diffs)

    def check(self):
        self.plain().check()
        field = self.field
        for k, d in enumerate(self.diffs):
            tgt, src = self.reps[k], self.reps[k + 1]
            for idx in range(self.group.order):
                lhs = linalg.mat_mul(field, tgt.mats[idx], d)
                rhs = linalg.mat_mul(field, d, src.mats[idx])
                if lhs != rhs:
                    raise NotEquivariant(f"differential {k + 1} does not commute with G")
        return True


def homology_dims(complex_: PlainComplex) -> list[int]:
    """dim H_n for n = 0..L, by exact rank-nullity."""
    complex_.check()
    field = complex_.field
    dims, diffs = complex_.dims, complex_.diffs
    out = []
    for n in range(len(dims)):
        if n == 0:
            cycle_dim = dims[0]
        else:
            cycle_dim = dims[n] - linalg.rank(field, diffs[n - 1])
        boundary_rank = linalg.rank(field, diffs[n]) if n < len(diffs) else 0
        out.append(cycle_dim - boundary_rank)
    return out


def fixed_subcomplex(complex_: EquivariantComplex):
    """The termwise fixed complex; returns (PlainComplex, inclusion matrices).

    Inclusion matrix columns are a basis of each fixed subspace.
    """
    complex_.check()
    field = complex_.field
    fixed_bases = []  # per term: list of basis vectors of the fixed subspace
    for rep in complex_.reps:
        proj = reynolds_projector(rep)
        fixed_bases.append(linalg.column_space_basis(field, proj))
    fixed_dims = [len(b) for b in fixed_bases]
    inclusions = [
        linalg.transpose(basis) if basis else linalg.zeros(field, dim, 0)
        for basis, dim in zip(fixed_bases, [r.dim for r in complex_.reps])
    ]
    restricted = []
    for k, d in enumerate(complex_.diffs):
        src_dim, tgt_dim = fixed_dims[k + 1], fixed_dims[k]
        cols = []
        for v in fixed_bases[k + 1]:
            image = linalg.mat_vec(field, d, v)
            if tgt_dim == 0:
                if any(x != field.zero for x in image):
                    raise NotEquivariant("differential leaves the fixed subcomplex")
                cols.append([])
            else:
                x = linalg.solve(field, inclusions[k], image)
                if x is None:
                    raise NotEquivariant("differential leaves the fixed subcomplex")
                cols.append(x)
        restricted.append(
            linalg.transpose(cols) if (cols and tgt_dim) else linalg.zeros(field, tgt_dim, src_dim)
        )
    plain = PlainComplex(field, fixed_dims, restricted)
    return plain, inclusions


def homology_quotients(complex_: PlainComplex) -> list[linalg.QuotientSpace]:
    field = complex_.field
    dims, diffs = complex_.dims, complex_.diffs
    out = []
    for n in range(len(dims)):
        if n == 0:
            cycles = [linalg.basis_vector(field, dims[0], j) for j in range(dims[0])]
        else:
            cycles = linalg.nullspace(field, diffs[n - 1], ncols=dims[n])
        if n < len(diffs):
            boundaries = [
                [diffs[n][i][j] for i in range(dims[n])] for j in range(dims[n + 1])
            ]
        else:
            boundaries = []
        out.append(linalg.QuotientSpace(field, dims[n], cycles, boundaries))
    return out


def induced_homology_action(complex_: EquivariantComplex):
    """Per homology degree, the matrices of the induced G-action."""
    field = complex_.field
    quotients = homology_quotients(complex_.plain())
    actions = []
    for n, q in enumerate(quotients):
        rep_mats = complex_.reps[n].mats
        mats = []
        for m in rep_mats:
            cols = []
            for rv in q.rep_vectors:
                img = linalg.mat_vec(field, m, rv)
                c = q.coords(img)
                if c is None:
                    raise NotEquivariant("action does not preserve cycles")
                cols.append(c)
            mats.append(linalg.transpose(cols) if q.dim else [])
        actions.append(mats)
    return quotients, actions


def check_fixed_commutes_with_homology(complex_: EquivariantComplex):
    """Compare dim H_n(C^G) with dim H_n(C)^G for every n.

    Also verifies that the inclusion of fixed homology classes into the
    ambient homology has full column rank.  Returns a list of row dicts.
    """
    group = complex_.group
    field = complex_.field
    fixed_plain, inclusions = fixed_subcomplex(complex_)
    fixed_hom = homology_dims(fixed_plain)
    quotients, actions = induced_homology_action(complex_)
    fixed_quotients = homology_quotients(fixed_plain)
    report = []
    for n, q in enumerate(quotients):
        if q.dim == 0:
            fixed_of_hom = 0
        else:
            proj = reynolds_projector(
                GRepresentation(group, actions[n], q.dim)
            )
            fixed_of_hom = linalg.rank(field, proj)
        # psi_n: include fixed homology classes into ambient homology
        inj_rank = 0
        fq = fixed_quotients[n]
        cols = []
        for rv in fq.rep_vectors:
            ambient = linalg.mat_vec(field, inclusions[n], rv)
            c = q.coords(ambient)
            if c is None:
                raise NotEquivariant("fixed cycle is not an ambient cycle")
            cols.append(c)
        if cols and q.dim:
            inj_rank = linalg.rank(field, cols)
        report.append(
            {
                "n": n,
                "dim_homology_of_fixed": fixed_hom[n],
                "dim_fixed_of_homology": fixed_of_hom,
                "equal": fixed_hom[n] == fixed_of_hom,
                "inclusion_injective": inj_rank == fixed_hom[n],
            }
        )
    return report


# --- randomized instance generators ---------------------------------------

def random_invertible(field, n: int, rng: Random):
    while True:
        m = [[field.from_int(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if linalg.det(field, m) != field.zero:
            return m


def random_representation(group: FiniteMatrixGroup, dim: int, rng: Random) -> GRepresentation:
    """Random faithful-ish rep: regular blocks plus trivial filler, conjugated."""
    blocks = []
    remaining = dim
    while remaining >= group.order and rng.random() < 0.7:
        blocks.append(regular_representation(group))
        remaining -= group.order
    blocks.extend(trivial_representation(group) for _ in range(remaining))
    rep = direct_sum(blocks)
    return conjugate(rep, random_invertible(group.field, dim, rng))


def random_equivariant_map(src: GRepresentation, tgt: GRepresentation, rng: Random):
    """Average a random integer matrix over G to force equivariance."""
    group = src.group
    field = group.field
    raw = [[field.from_int(rng.randint(-2, 2)) for _ in range(src.dim)] for _ in range(tgt.dim)]
    total = linalg.zeros(field, tgt.dim, src.dim)
    for idx in range(group.order):
        inv_idx = group.inv(idx)
        term = linalg.mat_mul(
            field, linalg.mat_mul(field, tgt.mats[inv_idx], raw), src.mats[idx]
        )
        total = [[field.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(total, term)]
    c = field.inv(field.from_int(group.order))
    return [[field.mul(c, x) for x in row] for row in total]


def equivariant_projector_onto(rep: GRepresentation, subspace_cols):
    """G-equivariant projector onto a G-stable subspace given by basis columns."""
    field = rep.group.field
    dim = rep.dim
    k = len(subspace_cols)
    if k == 0:
        return linalg.zeros(field, dim, dim)
    tracker = linalg.EchelonTracker(field)
    cols = [list(c) for c in subspace_cols]
    for c in cols:
        tracker.add(c)
    extra = []
    for j in range(dim):
        e = linalg.basis_vector(field, dim, j)
        if tracker.add(e):
            extra.append(e)
    cmat = linalg.transpose(cols + extra)
    cinv = linalg.inverse(field, cmat)
    sel = linalg.zeros(field, dim, dim)
    for j in range(k):
        sel[j][j] = field.one
    p0 = linalg.mat_mul(field, cmat, linalg.mat_mul(field, sel, cinv))
    # average to make it equivariant; the subspace is G-stable so the image stays put
    group = rep.group
    total = linalg.zeros(field, dim, dim)
    for idx in range(group.order):
        inv_idx = group.inv(idx)
        term = linalg.mat_mul(
            field, linalg.mat_mul(field, rep.mats[idx], p0), rep.mats[inv_idx]
        )
        total = [[field.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(total, term)]
    c = field.inv(field.from_int(group.order))
    return [[field.mul(c, x) for x in row] for row in total]


def random_equivariant_complex(
    group: FiniteMatrixGroup, dims: list[int], rng: Random
) -> EquivariantComplex:
    """Random complex with commuting G-action and d^2 = 0 by construction."""
    reps = [random_representation(group, d, rng) for d in dims]
    diffs = []
    for k in range(len(dims) - 1):
        raw = random_equivariant_map(reps[k + 1], reps[k], rng)
        if k == 0:
            diffs.append(raw)
            continue
        ker = linalg.nullspace(group.field, diffs[k - 1], ncols=dims[k])
        proj = equivariant_projector_onto(reps[k], ker)
        diffs.append(linalg.mat_mul(group.field, proj, raw))
    return EquivariantComplex(reps, diffs)


def random_equivariant_ses(group: FiniteMatrixGroup, rng: Random):
    """A random equivariant short exact sequence 0 -> V1 -> V2 -> V3 -> 0.

    Returns (rep1, rep2, rep3, u1, u2).
    """
    field = group.field
    d1 = rng.randint(1, 3)
    d3 = rng.randint(1, 3)
    v1 = random_representation(group, d1, rng)
    v3 = random_representation(group, d3, rng)
    mid = direct_sum([v1, v3])
    # equivariant automorphism of the middle term
    auto = None
    for _ in range(50):
        cand = random_equivariant_map(mid, mid, rng)
        ident = linalg.identity(field, mid.dim)
        cand = [[field.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(cand, ident)]
        if linalg.det(field, cand) != field.zero:
            auto = cand
            break
    if auto is None:
        auto = linalg.identity(field, mid.dim)
    incl = linalg.zeros(field, mid.dim, d1)
    for i in range(d1):
        incl[i][i] = field.one
    proj = linalg.zeros(field, d3, mid.dim)
    for i in range(d3):
        proj[i][d1 + i] = field.one
    auto_inv = linalg.inverse(field, auto)
    u1 = linalg.mat_mul(field, auto, incl)
    u2 = linalg.mat_mul(field, proj, auto_inv)
    return v1, mid, v3, u1, u2
