"""Graded pieces of local cohomology via the level-truncated Cech complex.

For an ideal I = (f_1, ..., f_s) the level-t slice in internal degree d keeps
only fractions m / f_S^t, where S runs over subsets of the generators and m
is a monomial of degree d + t * deg(f_S).  Raising the level embeds slices
via m / f_S^t -> m * f_S / f_S^{t+1}, and the eventual image of the induced
maps on cohomology recovers the graded piece of H^i_I(R).  A piece is only
reported once the eventual-image dimension and the successive transition
ranks are constant across a window of consecutive levels; otherwise the
outcome is NotStabilized, never a silently truncated number.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from . import linalg
from .errors import (
    NotHomogeneousIdeal,
    NotInvariantIdeal,
    NotStabilized,
    RangeTruncatesModule,
    ValidationError,
)
from .groups import FiniteMatrixGroup, act, is_invariant
from .linalg import QuotientSpace
from .polynomials import PolyRing, Polynomial, mono_mul

STABILIZED = "Stabilized"
NOT_STABILIZED = "NotStabilized"


@dataclass
class IdealSpec:
    """A homogeneous ideal given by generators, optionally with a group action."""

    ring: PolyRing
    generators: list  # homogeneous nonzero Polynomials
    group: FiniteMatrixGroup | None = None
    invariant_flag: bool = False

    def __post_init__(self):
        if not self.generators:
            raise NotHomogeneousIdeal("need at least one generator")
        for f in self.generators:
            if f.ring != self.ring:
                raise NotHomogeneousIdeal("generator lives in the wrong ring")
            if f.is_zero or f.homogeneous_degree is None:
                raise NotHomogeneousIdeal(f"generator {f} is not homogeneous and nonzero")
        if self.group is not None:
            self.invariant_flag = all(is_invariant(self.group, f) for f in self.generators)

    @property
    def degrees(self):
        return [f.homogeneous_degree for f in self.generators]


@dataclass
class CechLevelSlice:
    """Explicit matrices of one (i, d, t) slice: positions i-1, i, i+1."""

    i: int
    d: int
    t: int
    term_bases: dict  # position -> list of (subset, monomial)
    differentials: dict  # position k -> matrix (position k -> k+1)


@dataclass
class CohomologyPiece:
    i: int
    d: int
    status: str
    stable_dim: int | None = None
    level_reached: int | None = None
    representatives: list = dc_field(default_factory=list)
    g_action: list | None = None  # |G| matrices on the stable space
    invariant_dim: int | None = None
    # internal handles used by multiplication / socle computations
    _start_level: int | None = None
    _stable_cols: list | None = None  # stable basis, coords in H(level_reached)


class LCEngine:
    """Computes stabilized graded pieces of H^i_I(R) and their module structure.

    All slice data is cached per (position, degree, level); pieces per (i, d).
    """

    def __init__(self, ideal: IdealSpec, t_max: int = 12, window: int = 3):
        if window < 2 or t_max < window:
            raise ValidationError("need t_max >= window >= 2")
        self.ideal = ideal
        self.ring = ideal.ring
        self.field = ideal.ring.field
        self.s = len(ideal.generators)
        self.t_max = t_max
        self.window = window
        self._gen_powers: dict = {}
        self._bases: dict = {}
        self._diffs: dict = {}
        self._trans: dict = {}
        self._quotients: dict = {}
        self._h_trans: dict = {}
        self._pieces: dict = {}

    # --- slice construction ------------------------------------------------
    def _gen_power(self, j: int, t: int) -> Polynomial:
        key = (j, t)
        if key not in self._gen_powers:
            self._gen_powers[key] = self.ideal.generators[j] ** t
        return self._gen_powers[key]

    def _subset_poly_power(self, subset, t: int) -> Polynomial:
        out = self.ring.one()
        for j in subset:
            out = out * self._gen_power(j, t)
        return out

    def term_basis(self, k: int, d: int, t: int):
        """Basis [(S, m)] of position k: m / f_S^t with deg m = d + t * deg f_S."""
        key = (k, d, t)
        if key not in self._bases:
            degs = self.ideal.degrees
            basis = []
            for subset in combinations(range(self.s), k):
                e = d + t * sum(degs[j] for j in subset)
                if e < 0:
                    continue
                for m in self.ring.monomial_basis(e):
                    basis.append((subset, m))
            self._bases[key] = basis
        return self._bases[key]

    def _basis_index(self, k: int, d: int, t: int):
        basis = self.term_basis(k, d, t)
        return {sm: idx for idx, sm in enumerate(basis)}

    def diff_matrix(self, k: int, d: int, t: int):
        """Cech differential from position k to k+1 at level t, degree d."""
        key = (k, d, t)
        if key in self._diffs:
            return self._diffs[key]
        field = self.field
        src = self.term_basis(k, d, t)
        tgt_index = self._basis_index(k + 1, d, t)
        tgt_len = len(self.term_basis(k + 1, d, t))
        mat = linalg.zeros(field, tgt_len, len(src))
        for col, (subset, m) in enumerate(src):
            in_subset = set(subset)
            for j in range(self.s):
                if j in in_subset:
                    continue
                new_subset = tuple(sorted(subset + (j,)))
                sign_neg = new_subset.index(j) % 2 == 1
                prod = self._gen_power(j, t)
                for m2, c in prod.terms.items():
                    row = tgt_index[(new_subset, mono_mul(m, m2))]
                    val = field.neg(c) if sign_neg else c
                    mat[row][col] = field.add(mat[row][col], val)
        self._diffs[key] = mat
        return mat

    def transition_matrix(self, k: int, d: int, t: int):
        """Level embedding at position k: m / f_S^t -> m * f_S / f_S^{t+1}."""
        key = (k, d, t)
        if key in self._trans:
            return self._trans[key]
        field = self.field
        src = self.term_basis(k, d, t)
        tgt_index = self._basis_index(k, d, t + 1)
        tgt_len = len(self.term_basis(k, d, t + 1))
        mat = linalg.zeros(field, tgt_len, len(src))
        for col, (subset, m) in enumerate(src):
            prod = self._subset_poly_power(subset, 1)
            for m2, c in prod.terms.items():
                row = tgt_index[(subset, mono_mul(m, m2))]
                mat[row][col] = field.add(mat[row][col], c)
        self._trans[key] = mat
        return mat

    def action_matrix(self, k: int, d: int, t: int, sigma):
        """The block action of a group element on a position-k term."""
        if self.ideal.group is None or not self.ideal.invariant_flag:
            raise NotInvariantIdeal("group action needs an invariant generator list")
        field = self.field
        src = self.term_basis(k, d, t)
        tgt_index = self._basis_index(k, d, t)
        mat = linalg.zeros(field, len(src), len(src))
        for col, (subset, m) in enumerate(src):
            img = act(sigma, self.ring.term(field.one, m))
            for m2, c in img.terms.items():
                mat[tgt_index[(subset, m2)]][col] = c
        return mat

    def cech_slice(self, i: int, d: int, t: int) -> CechLevelSlice:
        if not (0 <= i <= self.s):
            raise ValidationError(f"cohomological index must be in [0, {self.s}]")
        if t < 1:
            raise ValidationError("level must be >= 1")
        positions = [p for p in (i - 1, i, i + 1) if 0 <= p <= self.s]
        bases = {p: self.term_basis(p, d, t) for p in positions}
        diffs = {p: self.diff_matrix(p, d, t) for p in positions if p < self.s}
        return CechLevelSlice(i, d, t, bases, diffs)

    # --- cohomology at one level --------------------------------------------
    def h_quotient(self, i: int, d: int, t: int) -> QuotientSpace:
        key = (i, d, t)
        if key in self._quotients:
            return self._quotients[key]
        field = self.field
        dim_i = len(self.term_basis(i, d, t))
        if i < self.s:
            out = self.diff_matrix(i, d, t)
            cycles = linalg.nullspace(field, out, ncols=dim_i)
        else:
            cycles = [linalg.basis_vector(field, dim_i, j) for j in range(dim_i)]
        boundaries = []
        if i > 0:
            inc = self.diff_matrix(i - 1, d, t)
            src_len = len(self.term_basis(i - 1, d, t))
            boundaries = [[inc[r][c] for r in range(dim_i)] for c in range(src_len)]
        q = QuotientSpace(field, dim_i, cycles, boundaries)
        self._quotients[key] = q
        return q

    def h_transition(self, i: int, d: int, t: int):
        """Induced map on cohomology H(t) -> H(t+1); columns are coordinates."""
        key = (i, d, t)
        if key in self._h_trans:
            return self._h_trans[key]
        field = self.field
        src_q = self.h_quotient(i, d, t)
        tgt_q = self.h_quotient(i, d, t + 1)
        trans = self.transition_matrix(i, d, t)
        cols = []
        for rv in src_q.rep_vectors:
            img = linalg.mat_vec(field, trans, rv)
            c = tgt_q.coords(img)
            if c is None:
                raise ValidationError("transition image is not a cocycle")
            cols.append(c)
        mat = linalg.transpose(cols) if (cols and tgt_q.dim) else linalg.zeros(
            field, tgt_q.dim, src_q.dim
        )
        self._h_trans[key] = mat
        return mat

    def _composite(self, i: int, d: int, t: int, steps: int):
        """Matrix of H(t) -> H(t + steps)."""
        mat = None
        for u in range(t, t + steps):
            step = self.h_transition(i, d, u)
            mat = step if mat is None else linalg.mat_mul(self.field, step, mat)
        if mat is None:
            q = self.h_quotient(i, d, t)
            mat = linalg.identity(self.field, q.dim)
        return mat

    # --- stabilization -------------------------------------------------------
    def piece(self, i: int, d: int) -> CohomologyPiece:
        key = (i, d)
        if key in self._pieces:
            return self._pieces[key]
        w = self.window
        # Eventual-image ranks r_t = rank(H(t) -> H(t+w-1)) and single-step
        # ranks s_t across the whole level range.  Early levels can be empty
        # and fake a plateau, so stabilization requires constancy on a tail of
        # the range at least `window` levels long; t0 is the smallest tail
        # start, keeping representatives at the lowest honest level.
        t_r_max = self.t_max - (w - 1)
        image_dims = {
            t: linalg.rank(self.field, self._composite(i, d, t, w - 1))
            for t in range(1, t_r_max + 1)
        }
        step_ranks = {
            t: linalg.rank(self.field, self.h_transition(i, d, t))
            for t in range(1, self.t_max)
        }
        found = None
        if len(set(image_dims[t] for t in range(t_r_max - w + 1, t_r_max + 1))) == 1 and len(
            set(step_ranks[t] for t in range(t_r_max - w + 1, self.t_max))
        ) == 1:
            t0 = t_r_max - w + 1
            while (
                t0 > 1
                and image_dims[t0 - 1] == image_dims[t_r_max]
                and step_ranks[t0 - 1] == step_ranks[self.t_max - 1]
            ):
                t0 -= 1
            found = (t0, image_dims[t_r_max])
        if found is None:
            piece = CohomologyPiece(i=i, d=d, status=NOT_STABILIZED, level_reached=self.t_max)
            self._pieces[key] = piece
            return piece
        t0, stable_dim = found
        t_rep = t0 + w - 1
        composite = self._composite(i, d, t0, w - 1)
        stable_cols = linalg.column_space_basis(self.field, composite)
        assert len(stable_cols) == stable_dim
        piece = CohomologyPiece(
            i=i,
            d=d,
            status=STABILIZED,
            stable_dim=stable_dim,
            level_reached=t_rep,
            _start_level=t0,
            _stable_cols=stable_cols,
        )
        piece.representatives = self._representatives(i, d, t_rep, stable_cols)
        if self.ideal.group is not None and self.ideal.invariant_flag:
            piece.g_action = self._stable_action(i, d, t_rep, stable_cols)
            piece.invariant_dim = self._invariant_dim(piece.g_action, stable_dim)
        self._pieces[key] = piece
        return piece

    def _representatives(self, i, d, t, stable_cols):
        q = self.h_quotient(i, d, t)
        basis = self.term_basis(i, d, t)
        reps = []
        for col in stable_cols:
            ambient = q.vector_of(col)
            terms = [
                {
                    "subset": list(basis[idx][0]),
                    "monomial": list(basis[idx][1]),
                    "coefficient": self.field.to_str(c),
                }
                for idx, c in enumerate(ambient)
                if c != self.field.zero
            ]
            reps.append({"level": t, "terms": terms})
        return reps

    def _stable_action(self, i, d, t, stable_cols):
        field = self.field
        group = self.ideal.group
        q = self.h_quotient(i, d, t)
        ambient_reps = [q.vector_of(col) for col in stable_cols]
        solve_rows = linalg.transpose(stable_cols) if stable_cols else []
        mats = []
        for sigma in group.elements:
            amat = self.action_matrix(i, d, t, sigma)
            cols = []
            for rv in ambient_reps:
                img = linalg.mat_vec(field, amat, rv)
                c = q.coords(img)
                if c is None:
                    raise ValidationError("group action does not preserve cocycles")
                y = linalg.solve(field, solve_rows, c) if stable_cols else []
                if y is None:
                    raise ValidationError("group action leaves the stable subspace")
                cols.append(y)
            mats.append(
                linalg.transpose(cols) if (cols and stable_cols) else []
            )
        return mats

    def _invariant_dim(self, g_action, stable_dim):
        if stable_dim == 0:
            return 0
        field = self.field
        total = linalg.zeros(field, stable_dim, stable_dim)
        for m in g_action:
            total = [[field.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(total, m)]
        inv = field.inv(field.from_int(self.ideal.group.order))
        proj = [[field.mul(inv, x) for x in row] for row in total]
        return linalg.rank(field, proj)

    def invariant_projector_basis(self, piece: CohomologyPiece):
        """Basis (in stable coordinates) of the invariant subspace of a piece."""
        if piece.g_action is None:
            raise NotInvariantIdeal("piece carries no group action")
        if piece.stable_dim == 0:
            return []
        field = self.field
        total = linalg.zeros(field, piece.stable_dim, piece.stable_dim)
        for m in piece.g_action:
            total = [[field.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(total, m)]
        inv = field.inv(field.from_int(self.ideal.group.order))
        proj = [[field.mul(inv, x) for x in row] for row in total]
        return linalg.column_space_basis(field, proj)

    # --- transport and multiplication ----------------------------------------
    def _transport_cols(self, i, d, piece: CohomologyPiece, target_level: int):
        """Stable basis columns pushed from piece.level_reached to target_level."""
        cols = [list(c) for c in piece._stable_cols]
        for t in range(piece.level_reached, target_level):
            step = self.h_transition(i, d, t)
            cols = [linalg.mat_vec(self.field, step, c) for c in cols]
        if cols and linalg.rank(self.field, cols) != piece.stable_dim:
            raise ValidationError("stable basis collapsed during transport")
        return cols

    def multiplication_map(self, i: int, d: int, g: Polynomial):
        """Matrix of multiplication by homogeneous g from the piece at d to d + deg g.

        Entries are in the stable coordinates of the two pieces.
        """
        if g.is_zero or g.homogeneous_degree is None:
            raise ValidationError("multiplier must be homogeneous and nonzero")
        e = g.homogeneous_degree
        src = self.piece(i, d)
        tgt = self.piece(i, d + e)
        if src.status != STABILIZED or tgt.status != STABILIZED:
            raise NotStabilized(f"pieces at degrees {d} and {d + e} must be stabilized")
        if src.stable_dim == 0 or tgt.stable_dim == 0:
            return linalg.zeros(self.field, tgt.stable_dim, src.stable_dim)
        field = self.field
        level = max(src.level_reached, tgt.level_reached)
        while level <= self.t_max:
            src_cols = self._transport_cols(i, d, src, level)
            tgt_cols = self._transport_cols(i, d + e, tgt, level)
            q_src = self.h_quotient(i, d, level)
            q_tgt = self.h_quotient(i, d + e, level)
            basis_src = self.term_basis(i, d, level)
            tgt_index = self._basis_index(i, d + e, level)
            tgt_len = len(self.term_basis(i, d + e, level))
            solve_rows = linalg.transpose(tgt_cols)
            out_cols = []
            ok = True
            for col in src_cols:
                ambient = q_src.vector_of(col)
                image = [field.zero] * tgt_len
                for idx, c in enumerate(ambient):
                    if c == field.zero:
                        continue
                    subset, m = basis_src[idx]
                    prod = g.scale(c) * self.ring.term(field.one, m)
                    for m2, c2 in prod.terms.items():
                        row = tgt_index[(subset, m2)]
                        image[row] = field.add(image[row], c2)
                cls = q_tgt.coords(image)
                if cls is None:
                    raise ValidationError("product of a cocycle is not a cocycle")
                y = linalg.solve(field, solve_rows, cls)
                if y is None:
                    ok = False
                    break
                out_cols.append(y)
            if ok:
                return linalg.transpose(out_cols)
            level += 1
        raise NotStabilized(
            f"multiplication image escaped the stable subspace up to level {self.t_max}"
        )

    # --- socles ---------------------------------------------------------------
    def socle_dims(
        self,
        i: int,
        degree_from: int,
        degree_to: int,
        maximal_ideal_gens: list,
        invariant_part: bool = False,
    ):
        """Per-degree socle dimensions (kernel of every multiplication map) and total.

        With invariant_part=True the kernels are taken inside the invariant
        subspaces, using invariant generators of the maximal ideal of R^G.
        """
        if degree_from > degree_to:
            raise ValidationError("empty degree range")
        gens = list(maximal_ideal_gens)
        if not gens:
            raise ValidationError("need at least one maximal-ideal generator")
        for g in gens:
            if g.is_zero or g.homogeneous_degree is None:
                raise ValidationError("maximal-ideal generators must be homogeneous")
        if invariant_part:
            if self.ideal.group is None or not self.ideal.invariant_flag:
                raise NotInvariantIdeal("invariant part needs an invariant ideal and a group")
            for g in gens:
                if not is_invariant(self.ideal.group, g):
                    raise ValidationError(f"generator {g} is not invariant")
        field = self.field
        per_degree = {}
        for d in range(degree_from, degree_to + 1):
            piece = self.piece(i, d)
            if piece.status != STABILIZED:
                raise NotStabilized(f"piece at degree {d} did not stabilize")
            if piece.stable_dim == 0:
                per_degree[d] = 0
                continue
            if invariant_part:
                space_cols = self.invariant_projector_basis(piece)
            else:
                space_cols = [
                    linalg.basis_vector(field, piece.stable_dim, j)
                    for j in range(piece.stable_dim)
                ]
            if not space_cols:
                per_degree[d] = 0
                continue
            stacked = []
            for g in gens:
                mg = self.multiplication_map(i, d, g)
                # image of each subspace basis vector, stacked as extra rows of
                # one big matrix acting on subspace coordinates
                images = [
                    linalg.mat_vec(field, mg, col) if mg else [] for col in space_cols
                ]
                stacked.extend(linalg.transpose(images))
            kernel = linalg.nullspace(field, stacked, ncols=len(space_cols))
            per_degree[d] = len(kernel)
        total = sum(per_degree.values())
        if per_degree.get(degree_from, 0) != 0 or per_degree.get(degree_to, 0) != 0:
            raise RangeTruncatesModule(
                "socle touches a boundary degree; widen the degree range"
            )
        return {"per_degree": per_degree, "total": total}

    # --- cross-check: invariant part via the fixed subcomplex -----------------
    def invariant_dim_via_fixed_slices(self, i: int, d: int):
        """Stable dimension of H^i of the termwise-fixed slice complex.

        Independent route for the invariant dimension: project every term by
        the Reynolds operator first, then stabilize.  Returns None if the
        fixed system does not stabilize.
        """
        if self.ideal.group is None or not self.ideal.invariant_flag:
            raise NotInvariantIdeal("needs an invariant ideal and a group")
        field = self.field
        group = self.ideal.group
        inv_order = field.inv(field.from_int(group.order))

        fixed_bases: dict = {}

        def fixed_basis(k, t):
            key = (k, t)
            if key not in fixed_bases:
                n = len(self.term_basis(k, d, t))
                total = linalg.zeros(field, n, n)
                for sigma in group.elements:
                    m = self.action_matrix(k, d, t, sigma)
                    total = [
                        [field.add(a, b) for a, b in zip(r1, r2)]
                        for r1, r2 in zip(total, m)
                    ]
                proj = [[field.mul(inv_order, x) for x in row] for row in total]
                fixed_bases[key] = linalg.column_space_basis(field, proj)
            return fixed_bases[key]

        def restrict(mat, src_basis, tgt_basis, ambient_tgt):
            cols = []
            for v in src_basis:
                img = linalg.mat_vec(field, mat, v)
                if not tgt_basis:
                    if any(x != field.zero for x in img):
                        raise ValidationError("map leaves the fixed subcomplex")
                    cols.append([])
                    continue
                x = linalg.solve(field, linalg.transpose(tgt_basis), img)
                if x is None:
                    raise ValidationError("map leaves the fixed subcomplex")
                cols.append(x)
            if cols and tgt_basis:
                return linalg.transpose(cols)
            return linalg.zeros(field, len(tgt_basis), len(src_basis))

        quotients: dict = {}

        def fixed_quotient(t):
            if t not in quotients:
                b_i = fixed_basis(i, t)
                dim_i = len(b_i)
                if i < self.s:
                    out = restrict(
                        self.diff_matrix(i, d, t), b_i, fixed_basis(i + 1, t), None
                    )
                    cycles = linalg.nullspace(field, out, ncols=dim_i)
                else:
                    cycles = [linalg.basis_vector(field, dim_i, j) for j in range(dim_i)]
                boundaries = []
                if i > 0:
                    inc = restrict(
                        self.diff_matrix(i - 1, d, t), fixed_basis(i - 1, t), b_i, None
                    )
                    boundaries = [
                        [inc[r][c] for r in range(dim_i)] for c in range(len(inc[0]) if inc else 0)
                    ] if dim_i else []
                quotients[t] = QuotientSpace(field, dim_i, cycles, boundaries)
            return quotients[t]

        transitions: dict = {}

        def fixed_h_transition(t):
            if t not in transitions:
                src_q, tgt_q = fixed_quotient(t), fixed_quotient(t + 1)
                tmat = restrict(
                    self.transition_matrix(i, d, t), fixed_basis(i, t), fixed_basis(i, t + 1), None
                )
                cols = []
                for rv in src_q.rep_vectors:
                    c = tgt_q.coords(linalg.mat_vec(field, tmat, rv))
                    if c is None:
                        raise ValidationError("fixed transition image is not a cocycle")
                    cols.append(c)
                transitions[t] = (
                    linalg.transpose(cols)
                    if (cols and tgt_q.dim)
                    else linalg.zeros(field, tgt_q.dim, src_q.dim)
                )
            return transitions[t]

        def composite(t, steps):
            mat = None
            for u in range(t, t + steps):
                step = fixed_h_transition(u)
                mat = step if mat is None else linalg.mat_mul(field, step, mat)
            if mat is None:
                mat = linalg.identity(field, fixed_quotient(t).dim)
            return mat

        # Same tail-constancy detector as piece(): constancy on the last
        # `window` levels of both rank sequences, to dodge empty early levels.
        w = self.window
        t_r_max = self.t_max - (w - 1)
        tail_r = [linalg.rank(field, composite(t, w - 1)) for t in range(t_r_max - w + 1, t_r_max + 1)]
        tail_s = [
            linalg.rank(field, fixed_h_transition(t))
            for t in range(t_r_max - w + 1, self.t_max)
        ]
        if len(set(tail_r)) == 1 and len(set(tail_s)) == 1:
            return tail_r[0]
        return None


# --- module-level convenience wrappers -------------------------------------

def make_ideal(ring: PolyRing, gens: list, group: FiniteMatrixGroup | None = None) -> IdealSpec:
    return IdealSpec(ring, gens, group)


def cech_slice(ideal: IdealSpec, i: int, d: int, t: int) -> CechLevelSlice:
    return LCEngine(ideal).cech_slice(i, d, t)


def lc_piece(
    ideal: IdealSpec, i: int, d: int, t_max: int = 12, window: int = 3
) -> CohomologyPiece:
    return LCEngine(ideal, t_max=t_max, window=window).piece(i, d)
