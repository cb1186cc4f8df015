"""Dense exact linear algebra: elimination, solving, nullspaces.

Matrices are lists of row lists over one of the scalar backends from
``fields``.  Sizes in this package stay tiny (at most a few hundred
unknowns), so straightforward fraction-free-ish Gaussian elimination is
both fast enough and exactly what the verification contracts need.
"""

from __future__ import annotations


class NotInvertible(ValueError):
    """Raised when an exact inverse or solution does not exist."""


def zeros(field, rows: int, cols: int):
    return [[field.zero] * cols for _ in range(rows)]


def identity(field, n: int):
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def mat_mul(field, a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(field, rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            v = ai[k]
            if not v:
                continue
            bk = b[k]
            for j in range(cols):
                if bk[j]:
                    oi[j] = oi[j] + v * bk[j]
    return out


def rref(field, matrix):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    m = [row[:] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if m[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = field.one / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m[:r], pivots


def rank(field, matrix) -> int:
    if not matrix:
        return 0
    _, pivots = rref(field, matrix)
    return len(pivots)


def solve(field, matrix, rhs):
    """One exact solution of ``matrix @ x = rhs`` or raise NotInvertible.

    ``rhs`` is a flat column; free variables are set to zero.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [matrix[i][:] + [rhs[i]] for i in range(rows)]
    red, pivots = rref(field, aug)
    if cols in pivots:
        raise NotInvertible("inconsistent linear system")
    x = [field.zero] * cols
    for row, c in zip(red, pivots):
        x[c] = row[cols]
    return x


def nullspace(field, matrix, cols=None):
    """Basis of the right nullspace, one flat vector per basis element."""
    if not matrix:
        return [] if not cols else [
            [field.one if i == j else field.zero for i in range(cols)]
            for j in range(cols)
        ]
    cols = len(matrix[0])
    red, pivots = rref(field, matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vec = [field.zero] * cols
        vec[free] = field.one
        for row, c in zip(red, pivots):
            vec[c] = -row[free]
        basis.append(vec)
    return basis


def invert(field, matrix):
    """Exact matrix inverse; raises NotInvertible for singular input."""
    n = len(matrix)
    aug = [matrix[i][:] + identity(field, n)[i] for i in range(n)]
    red, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)):
        raise NotInvertible("singular matrix")
    return [row[n:] for row in red]


def in_span(field, basis_rows, vector) -> bool:
    """Exact membership of ``vector`` in the row span of ``basis_rows``."""
    if not any(vector):
        return True
    if not basis_rows:
        return False
    red, pivots = rref(field, basis_rows)
    v = vector[:]
    for row, c in zip(red, pivots):
        if v[c]:
            f = v[c]
            v = [a - f * b for a, b in zip(v, row)]
    return not any(v)


class SpanReducer:
    """Row span with a canonical reduction map, for quotient-space work.

    Reduces any vector modulo the span; two vectors are congruent modulo
    the span iff their reductions are equal.  Used to decide equality in
    tensor products over a base ring presented by relations.
    """

    def __init__(self, field, relation_rows, dim: int):
        self.field = field
        self.dim = dim
        if relation_rows:
            self.rows, self.pivots = rref(field, relation_rows)
        else:
            self.rows, self.pivots = [], []

    def reduce(self, vector):
        v = list(vector)
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                f = v[c]
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, vector) -> bool:
        return not any(self.reduce(vector))

    @property
    def quotient_dim(self) -> int:
        return self.dim - len(self.rows)
