"""Exact linear algebra over the coefficient fields.

Vectors are sparse dicts {column index: field element}; the routines here
are all driven by Gaussian elimination and are generic over the field
objects of :mod:`heckecat.fields`.  Polynomial matrices get a fraction-free
(Bareiss) rank routine so localized data never needs division by anything
but earlier pivots.
"""

from __future__ import annotations


class SpanBasis:
    """Incremental row space: reduced pivot rows of the vectors added so far."""

    def __init__(self, field):
        self.field = field
        self.pivots: dict = {}  # pivot column -> reduced row (dict)

    def reduce(self, vec: dict) -> dict:
        vec = dict(vec)
        while vec:
            hit = None
            for c in vec:
                if c in self.pivots:
                    hit = c
                    break
            if hit is None:
                break
            coef = vec[hit]
            row = self.pivots[hit]
            for c2, a in row.items():
                b = vec.get(c2)
                b = -(coef * a) if b is None else b - coef * a
                if b:
                    vec[c2] = b
                else:
                    vec.pop(c2, None)
        return vec

    def add(self, vec: dict) -> bool:
        """Reduce and insert; returns True when the rank grew."""
        vec = self.reduce(vec)
        if not vec:
            return False
        piv = min(vec)
        inv = self.field.one / vec[piv]
        row = {c: a * inv for c, a in vec.items()}
        # keep existing rows reduced against the new pivot
        for p, r in self.pivots.items():
            if piv in r:
                coef = r[piv]
                for c2, a in row.items():
                    b = r.get(c2)
                    b = -(coef * a) if b is None else b - coef * a
                    if b:
                        r[c2] = b
                    else:
                        r.pop(c2, None)
        self.pivots[piv] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def nullspace(rows: list, ncols: int, field) -> list:
    """Basis of the right nullspace of a sparse matrix.

    ``rows`` is a list of dicts {col: elem}.  Returns a list of dicts.
    """
    span = SpanBasis(field)
    for row in rows:
        span.add(row)
    pivots = span.pivots
    free_cols = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free_cols:
        vec = {f: field.one}
        # back-substitute: pivot rows are fully reduced against each other
        for p, row in pivots.items():
            a = row.get(f)
            if a:
                vec[p] = -a
        out.append(vec)
    return out


def solve_dense(mat: list, rhs: list, field):
    """Solve a dense square-ish system; returns one solution or None."""
    rows = len(mat)
    cols = len(mat[0]) if mat else 0
    M = [list(mat[i]) + [rhs[i]] for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = field.one / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, rows):
        if M[i][cols]:
            return None
    sol = [field.zero] * cols
    for k, c in enumerate(piv_cols):
        sol[c] = M[k][cols]
    return sol


def k_matrix_rank(mat: list, field) -> int:
    span = SpanBasis(field)
    for row in mat:
        span.add({j: a for j, a in enumerate(row) if a})
    return span.rank


def k_matrix_inverse(mat: list, field):
    """Inverse of a square matrix over the field, or None if singular."""
    n = len(mat)
    M = [list(mat[i]) + [field.one if j == i else field.zero for j in range(n)]
         for i in range(n)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if M[i][c]), None)
        if piv is None:
            return None
        M[r], M[piv] = M[piv], M[r]
        inv = field.one / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(n):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
    return [row[n:] for row in M]


def poly_matrix_rank(rows: list, ring) -> int:
    """Rank over Frac(R) of a matrix of polynomials (fraction-free Bareiss)."""
    M = [list(r) for r in rows]
    nrows, ncols = len(M), len(M[0]) if rows else 0
    rank = 0
    prev = ring.one
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = None
        for i in range(r, nrows):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                num = M[i][j] * M[r][c] - M[i][c] * M[r][j]
                M[i][j] = num.exact_div(prev) if prev is not ring.one else num
            M[i][c] = ring.zero
        prev = M[r][c]
        rank += 1
        r += 1
    return rank
