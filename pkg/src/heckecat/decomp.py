"""Krull-Schmidt decomposition and canonical bases.

An object decomposes by splitting off copies of the indecomposable objects
B_y attached to the group elements y in its support.  Those candidates are
produced by a well-founded recursion: B_y is what remains of the
Bott-Samelson object of the ShortLex reduced word of y after all summands
attached to strictly smaller elements have been peeled off.

Peeling one copy of an indecomposable B (with local degree-0 endomorphism
ring, residue field k) off an object S uses the composition pairing
Hom0(S,B) x Hom0(B,S) -> End0(B) -> End0(B)/J = k: the pairing is nonzero
iff B is a direct summand, and a nonzero pair (f, g) yields the exact
idempotent f (g f)^{-1} g, whose inverse is computed by a terminating
graded Neumann series.  The degree-0 endomorphism algebras are handled as
finite-dimensional algebras over the coefficient field: radicals come from
the trace form of the regular representation (characteristic 0 or p >
dim), with a small-algebra fallback in small characteristic; idempotents
of quotients lift through the nilpotent radical by the cubic iteration
e -> 3e^2 - 2e^3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .abecat import (
    AbeMorphism, AbeObject, _constant_part, _flatten_matrix, _mat_mul,
    hecke_of, hom_basis,
)
from .coxeter import Element
from .hecke import HeckeElt
from .laurent import Laurent
from .linalg import SpanBasis, k_matrix_inverse, nullspace, solve_dense


# ---------------------------------------------------------------------------
# the degree-0 endomorphism algebra as a finite-dimensional algebra
# ---------------------------------------------------------------------------

class EndAlgebra:
    """End^0 of an object: basis, structure constants, radical, locality."""

    def __init__(self, obj: AbeObject):
        self.obj = obj
        self.field = obj.r.field
        self.basis = hom_basis(obj, obj, 0)
        self.dim = len(self.basis)
        self._pos: dict = {}
        self._span = SpanBasis(self.field)
        self._vecs = []
        for mor in self.basis:
            vec = _flatten_matrix(mor.mat, self._pos)
            self._vecs.append(vec)
            self._span.add(vec)
        self._identity_coords = self.coords_of_matrix(obj.idem_or_identity())
        self._radical: Optional[list] = None

    def coords_of_matrix(self, mat) -> list:
        """Coordinates of an endomorphism in the chosen basis."""
        vec = _flatten_matrix(mat, self._pos)
        cols = sorted({c for v in self._vecs for c in v} | set(vec))
        A = [[self._vecs[j].get(c, self.field.zero) for j in range(self.dim)]
             for c in cols]
        b = [vec.get(c, self.field.zero) for c in cols]
        sol = solve_dense(A, b, self.field)
        if sol is None:
            raise ArithmeticError("endomorphism does not lie in End^0")
        return sol

    def coords(self, mor: AbeMorphism) -> list:
        return self.coords_of_matrix(mor.mat)

    def from_coords(self, coords) -> AbeMorphism:
        out = None
        for c, mor in zip(coords, self.basis):
            if not c:
                continue
            term = mor.scale(c)
            out = term if out is None else out + term
        if out is None:
            ring = self.obj.r.ring
            n = self.obj.data.rank
            zero = [[ring.zero] * n for _ in range(n)]
            return AbeMorphism(self.obj, self.obj, 0, zero)
        return out

    # structure constants: mult[i][j] = coords of basis_i o basis_j
    def _mult_table(self):
        tab = getattr(self, "_tab", None)
        if tab is None:
            tab = []
            for bi in self.basis:
                row = []
                for bj in self.basis:
                    row.append(self.coords(bi.compose(bj)))
                tab.append(row)
            self._tab = tab
        return tab

    def multiply_coords(self, x, y):
        tab = self._mult_table()
        out = [self.field.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                f = xi * yj
                for k, c in enumerate(tab[i][j]):
                    if c:
                        out[k] = out[k] + f * c
        return out

    def regular_trace(self, x) -> "field elem":
        """Trace of left multiplication by x on the algebra."""
        tab = self._mult_table()
        acc = self.field.zero
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j in range(self.dim):
                c = tab[i][j][j]
                if c:
                    acc = acc + xi * c
        return acc

    def radical(self) -> list:
        """Basis (coordinate vectors) of the Jacobson radical."""
        if self._radical is not None:
            return self._radical
        field = self.field
        p = field.char
        if p == 0 or p > self.dim:
            # kernel of the trace form of the regular representation
            rows = []
            tab = self._mult_table()
            for i in range(self.dim):
                row = {}
                for j in range(self.dim):
                    # trace(L_{b_i b_j})
                    t = self.regular_trace(tab[i][j])
                    if t:
                        row[j] = t
                rows.append(row)
            vecs = nullspace(rows, self.dim, field)
            self._radical = [
                [v.get(j, field.zero) for j in range(self.dim)] for v in vecs
            ]
            return self._radical
        # small characteristic: fall back to an exhaustive check on tiny algebras
        if p ** self.dim > 20000:
            raise NotImplementedError(
                "radical in small characteristic implemented only for tiny "
                f"algebras (p^dim = {p ** self.dim})")
        elems = [[]]
        for _ in range(self.dim):
            elems = [e + [field.of(v)] for e in elems for v in range(p)]
        invertible = []
        for y in elems:
            invertible.append(self._is_unit(y))
        radical = []
        for x, xv in zip(elems, invertible):
            # x in J iff 1 - y x is a unit for every y
            ok = True
            for y in elems:
                yx = self.multiply_coords(y, x)
                one_minus = [a - b for a, b in zip(self._identity_coords, yx)]
                if not self._is_unit(one_minus):
                    ok = False
                    break
            if ok:
                radical.append(x)
        span = SpanBasis(field)
        basis = []
        for x in radical:
            vec = {i: c for i, c in enumerate(x) if c}
            if span.add(vec):
                basis.append(x)
        self._radical = basis
        return basis

    def _is_unit(self, x) -> bool:
        # left multiplication invertible on the algebra
        tab = self._mult_table()
        mat = [[self.field.zero] * self.dim for _ in range(self.dim)]
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j in range(self.dim):
                col = tab[i][j]
                for k in range(self.dim):
                    if col[k]:
                        mat[k][j] = mat[k][j] + xi * col[k]
        return k_matrix_inverse(mat, self.field) is not None

    def is_local(self) -> bool:
        """dim End0/J = 1 (sufficient for locality with residue field k)."""
        return self.dim - len(self.radical()) == 1

    def scalar_mod_radical(self, mor: AbeMorphism):
        """For local End0: the residue of ``mor`` in End0/J = k."""
        if not self.is_local():
            raise ArithmeticError("endomorphism algebra is not certified local")
        x = self.coords(mor)
        rad = self.radical()
        # solve x = lam * id + radical combination
        field = self.field
        cols = len(rad) + 1
        A = [[self._identity_coords[i]] + [r[i] for r in rad] for i in range(self.dim)]
        sol = solve_dense(A, x, field)
        if sol is None:
            raise ArithmeticError("element not in span(id) + radical")
        return sol[0]


def lift_idempotent(alg: EndAlgebra, coords, max_iter: int = 64):
    """Lift an idempotent of End0/J to End0 by the cubic iteration."""
    field = alg.field
    e = list(coords)
    for _ in range(max_iter):
        e2 = alg.multiply_coords(e, e)
        if e2 == e:
            return e
        e3 = alg.multiply_coords(e2, e)
        three = field.of(3)
        two = field.of(2)
        e = [three * a - two * b for a, b in zip(e2, e3)]
    raise ArithmeticError("idempotent lifting did not converge")


# ---------------------------------------------------------------------------
# graded inversion and peeling
# ---------------------------------------------------------------------------

def _invert_endo(mor: AbeMorphism) -> AbeMorphism:
    """Inverse of an endomorphism that is unit + nilpotent (graded Neumann).

    Works on the ambient matrix extended by the identity of the complement:
    A = mat + (1 - e); A0 (the degree-0 part) must be invertible over the
    field, and N = A0^{-1} A - 1 has strictly positive degrees, so the
    series for (1 + N)^{-1} terminates.
    """
    obj = mor.source
    ring = obj.r.ring
    field = obj.r.field
    n = obj.data.rank
    e = obj.idem_or_identity()
    ident = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    A = [[mor.mat[i][j] + (ident[i][j] - e[i][j]) for j in range(n)] for i in range(n)]
    # degree-0 part
    A0 = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if obj.data.degrees[i] == obj.data.degrees[j] and A[i][j]:
                A0[i][j] = A[i][j].constant_term()
    A0inv = k_matrix_inverse(A0, field)
    if A0inv is None:
        raise ArithmeticError("endomorphism is not invertible")
    A0inv_mat = [[ring.constant(A0inv[i][j]) for j in range(n)] for i in range(n)]
    N = _mat_mul(A0inv_mat, A, ring)
    for i in range(n):
        N[i][i] = N[i][i] - ring.one
    # sum (-N)^k A0^{-1}
    span = (max(obj.data.degrees) - min(obj.data.degrees)) // 2 + 1
    total = [row[:] for row in A0inv_mat]
    term = [row[:] for row in A0inv_mat]
    for _ in range(span):
        term = _mat_mul(N, term, ring)
        if not any(any(p for p in row) for row in term):
            break
        for i in range(n):
            for j in range(n):
                if term[i][j]:
                    total[i][j] = total[i][j] - term[i][j] if False else total[i][j] + term[i][j].scale(-field.one)
    inv = _mat_mul(e, _mat_mul(total, e, ring), ring)
    return AbeMorphism(obj, obj, 0, inv)


@dataclass
class Piece:
    """One summand of a decomposition."""
    summand: AbeObject
    inclusion: AbeMorphism
    projection: AbeMorphism
    iso_class: Optional[tuple] = None  # (Element, shift) when identified


class _CandidateData:
    """An indecomposable candidate with its local-residue functional."""

    def __init__(self, obj: AbeObject):
        self.obj = obj
        self.end = EndAlgebra(obj)
        if not self.end.is_local():
            raise ArithmeticError("candidate object is not indecomposable")

    def scalar(self, endo: AbeMorphism):
        return self.end.scalar_mod_radical(endo)


def _try_peel(S: AbeObject, cand: "_CandidateData", shift: int):
    """Split one copy of cand.obj<shift> off S, or return None."""
    B = cand.obj.shift(shift)
    fs = hom_basis(B, S, 0)
    if not fs:
        return None
    gs = hom_basis(S, B, 0)
    if not gs:
        return None
    field = S.r.field
    shifted_cand = _CandidateData.__new__(_CandidateData)
    shifted_cand.obj = B
    shifted_cand.end = cand.end  # scalars do not depend on the shift
    for f in fs:
        for g in gs:
            comp = g.compose(f)  # endo of B (coordinates match cand.obj)
            lam = cand.end.scalar_mod_radical(
                AbeMorphism(cand.obj, cand.obj, 0, comp.mat))
            if not lam:
                continue
            gn = g.scale(field.one / lam)
            u = gn.compose(f)  # = id + nilpotent in End(B)
            uinv_mat = _invert_endo(AbeMorphism(B, B, 0, u.mat)).mat
            proj = AbeMorphism(S, B, 0, _mat_mul(uinv_mat, gn.mat, S.r.ring))
            idem = _mat_mul(f.mat, proj.mat, S.r.ring)
            return f, proj, idem
    return None


def _support_elements(obj: AbeObject) -> list:
    return sorted(obj.support_grk(), reverse=True)


def canonical_indecomposable(r, w: Element) -> AbeObject:
    """The indecomposable object B_w (cached on the realization)."""
    cache = getattr(r, "_indec_cache", None)
    if cache is None:
        cache = r._indec_cache = {}
    if w in cache:
        return cache[w].obj

    M = AbeObject.bs(r, w.word)
    cur = AbeObject(M.data, M.idem_or_identity())
    peels = []
    for y in _support_elements(M):
        if y == w:
            continue
        cand = _candidate(r, y)
        for n in _shift_range(cur, cand.obj):
            while True:
                res = _try_peel(cur, cand, n)
                if res is None:
                    break
                _, _, idem = res
                rest = _subtract_idem(cur, idem)
                peels.append((y, n))
                cur = rest
    # what remains is B_w
    grk = cur.support_grk()
    if w not in grk or grk[w] != Laurent({w.length: 1}):
        raise ArithmeticError(
            f"canonical summand for {w} has unexpected top multiplicity")
    entry = _CandidateData(cur)
    cache[w] = entry
    # bookkeeping check: ch(B_word) = ch(B_w) + sum of peeled characters
    alg = hecke_of(r.system)
    total = cur.character()
    for (y, n) in peels:
        total = total + cache[y].obj.character().scale(Laurent({n: 1}))
    if total != alg.bott_samelson(w.word):
        raise ArithmeticError(f"character bookkeeping failed for {w}")
    return cur


def _candidate(r, y: Element) -> _CandidateData:
    cache = getattr(r, "_indec_cache", None)
    if cache is None or y not in cache:
        canonical_indecomposable(r, y)
        cache = r._indec_cache
    return cache[y]


def _shift_range(S: AbeObject, B: AbeObject):
    lo = min(S.data.degrees) - min(B.data.degrees)
    hi = max(S.data.degrees) - max(B.data.degrees)
    return range(lo, hi + 1)


def _subtract_idem(S: AbeObject, idem) -> AbeObject:
    e = S.idem_or_identity()
    rest = [[e[i][j] - idem[i][j] for j in range(len(e))] for i in range(len(e))]
    return AbeObject(S.data, rest)


def decompose(obj: AbeObject) -> list:
    """Complete decomposition into indecomposable summands.

    Returns a list of :class:`Piece`; inclusions and projections compose to
    orthogonal idempotents summing to the identity of the object.  Summands
    isomorphic to a canonical indecomposable B_y<n> carry that label.
    """
    r = obj.r
    cur = AbeObject(obj.data, obj.idem_or_identity())
    pieces = []
    for y in _support_elements(obj):
        cand = _candidate(r, y)
        for n in _shift_range(obj, cand.obj):
            while True:
                if cur.rank() == 0:
                    break
                res = _try_peel(cur, cand, n)
                if res is None:
                    break
                incl, proj, idem = res
                summand = AbeObject(obj.data, idem)
                pieces.append(Piece(summand, incl, proj, (y, n)))
                cur = _subtract_idem(cur, idem)
    if cur.rank() != 0:
        # should be unreachable: candidates cover the whole support
        end = EndAlgebra(cur)
        if not end.is_local():
            raise ArithmeticError("decomposition incomplete and remainder not local")
        pieces.append(Piece(cur, cur.identity_morphism(), cur.identity_morphism()))
    return pieces


# ---------------------------------------------------------------------------
# canonical bases
# ---------------------------------------------------------------------------

def canonical_basis(r, length_bound: int, elements=None) -> dict:
    """h-polynomial table of the canonical basis, up to a length bound.

    Returns {w: HeckeElt} where the entry of w is the character of the
    indecomposable object B_w, i.e. sum_y h_{y,w} H_y.
    """
    W = r.system
    if elements is None:
        elements = W.ball(length_bound)
    out = {}
    for w in sorted(elements):
        obj = canonical_indecomposable(r, w)
        out[w] = obj.character()
    return out


def canonical_polynomial(r, y: Element, w: Element) -> Laurent:
    obj = canonical_indecomposable(r, w)
    return obj.character().coeff(y)
