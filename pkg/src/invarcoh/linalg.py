"""Dense exact linear algebra over a Field.

Matrices are lists of rows; vectors are lists.  Everything is computed by
fraction-free-free, plain Gaussian elimination in the field -- coefficient
growth is the field's problem (Fractions are arbitrary precision).
"""
from __future__ import annotations

from .fields import Field


def zeros(field: Field, m: int, n: int):
    z = field.zero
    return [[z] * n for _ in range(m)]


def identity(field: Field, n: int):
    z, o = field.zero, field.one
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def copy_matrix(a):
    return [row[:] for row in a]


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_mul(field: Field, a, b):
    if not a or not b:
        return [[] for _ in a]
    n, m, k = len(a), len(b), len(b[0])
    z = field.zero
    bt = transpose(b)
    out = []
    for i in range(n):
        ai = a[i]
        row = []
        for j in range(k):
            bj = bt[j]
            acc = z
            for t in range(m):
                x = ai[t]
                if x != z:
                    acc = field.add(acc, field.mul(x, bj[t]))
            row.append(acc)
        out.append(row)
    return out


def mat_vec(field: Field, a, v):
    z = field.zero
    out = []
    for row in a:
        acc = z
        for x, y in zip(row, v):
            if x != z and y != z:
                acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return out


def scale_vec(field: Field, c, v):
    return [field.mul(c, x) for x in v]


def add_vec(field: Field, u, v):
    return [field.add(x, y) for x, y in zip(u, v)]


def rref(field: Field, a):
    """Reduced row echelon form.  Returns (rref_rows, pivot_columns)."""
    m = copy_matrix(a)
    if not m:
        return [], []
    rows, cols = len(m), len(m[0])
    z = field.zero
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if m[i][c] != z:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != z:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m[:r] + [[z] * cols for _ in range(rows - r)], pivots


def rank(field: Field, a) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(field, a)[1])


def nullspace(field: Field, a, ncols: int | None = None):
    """Basis of {v : a v = 0}.  ``a`` given as rows; may have zero rows."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    if ncols == 0:
        return []
    if not a:
        return [basis_vector(field, ncols, j) for j in range(ncols)]
    red, pivots = rref(field, a)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    z, o = field.zero, field.one
    basis = []
    for j in free:
        v = [z] * ncols
        v[j] = o
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][j])
        basis.append(v)
    return basis


def basis_vector(field: Field, n: int, j: int):
    v = [field.zero] * n
    v[j] = field.one
    return v


def solve(field: Field, a, b):
    """One solution of a x = b, or None if inconsistent.

    ``a`` is m x n given as rows, ``b`` a length-m vector.
    """
    m = len(a)
    n = len(a[0]) if a else 0
    z = field.zero
    if m == 0:
        return [z] * n
    aug = [a[i][:] + [b[i]] for i in range(m)]
    red, pivots = rref(field, aug)
    if n in pivots:
        return None
    x = [z] * n
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n]
    return x


def solve_many(field: Field, a, bs):
    """Solve a X = B columnwise; bs is a list of target vectors (columns of B).

    Returns the list of solution columns, or None if any column is inconsistent.
    """
    out = []
    for b in bs:
        x = solve(field, a, b)
        if x is None:
            return None
        out.append(x)
    return out


def inverse(field: Field, a):
    n = len(a)
    aug = [a[i][:] + identity(field, n)[i] for i in range(n)]
    red, pivots = rref(field, aug)
    if pivots != list(range(n)):
        return None
    return [red[i][n:] for i in range(n)]


def det(field: Field, a):
    """Determinant by Gaussian elimination (exact)."""
    n = len(a)
    m = copy_matrix(a)
    z = field.zero
    d = field.one
    for c in range(n):
        pr = None
        for i in range(c, n):
            if m[i][c] != z:
                pr = i
                break
        if pr is None:
            return z
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            d = field.neg(d)
        d = field.mul(d, m[c][c])
        inv = field.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c] != z:
                f = field.mul(inv, m[i][c])
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[c])]
    return d


def column_space_basis(field: Field, a):
    """Basis of the column space of ``a``, as vectors (deterministic)."""
    rows = transpose(a)
    red, pivots = rref(field, rows)
    return [red[i] for i in range(len(pivots))]


def is_zero_matrix(field: Field, a) -> bool:
    z = field.zero
    return all(x == z for row in a for x in row)


class EchelonTracker:
    """Incremental echelon basis for independence testing."""

    def __init__(self, field: Field):
        self.field = field
        self.echelon: list = []  # (pivot_col, normalized reduced vector)

    def add(self, v) -> bool:
        """Insert v if independent of what is tracked so far; report whether it was."""
        field = self.field
        z = field.zero
        v = list(v)
        for pivot, row in self.echelon:
            if v[pivot] != z:
                f = v[pivot]
                v = [field.sub(x, field.mul(f, y)) for x, y in zip(v, row)]
        for j, x in enumerate(v):
            if x != z:
                inv = field.inv(x)
                self.echelon.append((j, [field.mul(inv, y) for y in v]))
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.echelon)


class QuotientSpace:
    """The quotient (span of cycles) / (span of boundaries), with coordinates.

    Chooses a deterministic basis of quotient representatives and provides
    class coordinates for arbitrary cycle vectors.
    """

    def __init__(self, field: Field, ambient_dim: int, cycles, boundaries):
        self.field = field
        self.ambient_dim = ambient_dim
        # Independent subset of the boundaries first, then extend by cycles.
        tracker = EchelonTracker(field)
        self._boundary_basis = [v for v in boundaries if tracker.add(v)]
        self.rep_vectors = [v for v in cycles if tracker.add(v)]
        self.dim = len(self.rep_vectors)
        # Columns for coordinate solves: quotient reps first, boundaries after.
        self._solve_rows = transpose(self.rep_vectors + self._boundary_basis)

    def coords(self, v):
        """Coordinates of the class of cycle ``v``; None if v is not a cycle here."""
        if self.dim == 0 and not self._boundary_basis:
            z = self.field.zero
            return [] if all(x == z for x in v) else None
        x = solve(self.field, self._solve_rows, v)
        if x is None:
            return None
        return x[: self.dim]

    def vector_of(self, coords):
        """Ambient representative of the class with the given coordinates."""
        field = self.field
        v = [field.zero] * self.ambient_dim
        for c, rep in zip(coords, self.rep_vectors):
            if c != field.zero:
                v = add_vec(field, v, scale_vec(field, c, rep))
        return v
