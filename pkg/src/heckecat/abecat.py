"""The localized-bimodule incarnation of the Hecke category.

Objects are triples (M, (M_Q^w)_w, xi): M a graded R-bimodule, free of
finite rank as a left R-module, together with a decomposition of its
localization M (x) Q into "blocks" indexed by group elements, on which the
right R-action is the w-twisted left action.  Morphisms are left-R-linear
matrices over R that commute with the right action and whose localization
preserves the block decomposition.

Concretely a Bott-Samelson object B_word<shift> is stored as:

* ``degrees``     -- degrees of a left R-basis (the basis is the tensor
  product of the bases {1 (x) 1, 1 (x) delta_s} of the factors, indexed by
  bit tuples, flattened first-letter-major);
* ``blocks``      -- group elements with coordinate ranges in the localized
  picture (one coordinate per subword of the defining word);
* ``xi``/``xi_inv`` -- the localization matrix and its inverse, with
  entries in Q (fractions with root-form denominators);
* ``rho``         -- per variable, the matrix of the right action.

Direct summands are represented by an ambient Bott-Samelson object together
with an idempotent matrix over R; every computation (Hom spaces, characters,
tensor products) is carried out in ambient coordinates.

The character of an object assigns to each block w the graded rank of the
lattice of elements of M whose localization is supported on that single
block.  This lattice is additive under direct sums, and for Bott-Samelson
objects its graded rank is v^{l(w)} p^w(word), so the character matches the
Bott-Samelson element of the Hecke algebra; both facts are exercised by the
test suite rather than assumed.
"""

from __future__ import annotations

from typing import Optional

from .coxeter import Element
from .hecke import HeckeAlgebra, HeckeElt
from .laurent import Laurent
from .linalg import SpanBasis, nullspace, poly_matrix_rank
from .polyring import Frac, Poly, lcd_clear
from .realization import Realization


_hecke_registry: dict = {}


def hecke_of(system) -> HeckeAlgebra:
    alg = _hecke_registry.get(id(system))
    if alg is None:
        alg = HeckeAlgebra(system)
        _hecke_registry[id(system)] = alg
    return alg


# ---------------------------------------------------------------------------
# ambient Bott-Samelson data
# ---------------------------------------------------------------------------

class BSData:
    """Localized data of B_word<shift> (see the module docstring)."""

    def __init__(self, r: Realization, word: tuple, shift: int, degrees,
                 blocks, xi, xi_inv, rho):
        self.r = r
        self.word = word
        self.shift = shift
        self.degrees = degrees          # tuple of ints
        self.blocks = blocks            # list of (Element, start, size)
        self.xi = xi                    # list (coords) of {basis idx: Frac}
        self.xi_inv = xi_inv            # list (basis) of {coord idx: Frac}
        self.rho = rho                  # list (var) of dense Poly matrices
        self.rank = len(degrees)
        self.ncoords = sum(b[2] for b in blocks)
        self._rho_mono: dict = {}
        self._coord_block = []
        for bi, (w, start, size) in enumerate(blocks):
            self._coord_block.extend([bi] * size)

    def block_of_coord(self, c: int):
        return self.blocks[self._coord_block[c]]

    def rho_eval(self, p: Poly):
        """The right action of an arbitrary polynomial (matrix over R)."""
        n = self.rank
        ring = self.r.ring
        out = [[ring.zero] * n for _ in range(n)]
        for exp, coef in p.c.items():
            m = self._rho_monomial(exp)
            for i in range(n):
                mi, oi = m[i], out[i]
                for j in range(n):
                    if mi[j]:
                        oi[j] = oi[j] + mi[j].scale(coef)
        return out

    def _rho_monomial(self, exp):
        cached = self._rho_mono.get(exp)
        if cached is not None:
            return cached
        ring = self.r.ring
        n = self.rank
        if not any(exp):
            m = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
        else:
            # split off one variable
            v = next(i for i, e in enumerate(exp) if e)
            rest = tuple(e - 1 if i == v else e for i, e in enumerate(exp))
            m = _mat_mul(self._rho_monomial(rest), self.rho[v], ring)
        self._rho_mono[exp] = m
        return m


def _mat_mul(A, B, ring):
    n, mid, m = len(A), len(B), len(B[0]) if B else 0
    out = [[ring.zero] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for k in range(mid):
            a = Ai[k]
            if not a:
                continue
            Bk = B[k]
            oi = out[i]
            for j in range(m):
                if Bk[j]:
                    oi[j] = oi[j] + a * Bk[j]
    return out


def _unit_data(r: Realization) -> BSData:
    ring = r.ring
    xi = [{0: Frac.of_poly(ring.one)}]
    xi_inv = [{0: Frac.of_poly(ring.one)}]
    rho = [[[ring.var(v)]] for v in range(r.dim)]
    return BSData(r, (), 0, (0,), [(r.system.identity, 0, 1)], xi, xi_inv, rho)


def _gen_data(r: Realization, s: int) -> BSData:
    ring = r.ring
    W = r.system
    delta = r.delta(s)
    sdelta = r.act_gen(s, delta)
    alpha_id, alpha_scal = r.form_for(W.identity, s)
    inv_alpha = Frac(ring, ring.constant(r.field.one / alpha_scal), {alpha_id: 1})
    xi = [
        {0: inv_alpha, 1: inv_alpha.mul_poly(delta)},     # block e
        {0: inv_alpha, 1: inv_alpha.mul_poly(sdelta)},    # block s
    ]
    xi_inv = [
        {0: Frac.of_poly(-sdelta), 1: Frac.of_poly(delta)},
        {0: Frac.of_poly(ring.one), 1: Frac.of_poly(-ring.one)},
    ]
    # right action: with B = delta + s(delta), A = delta*s(delta) in R^s:
    #   b0*x = g0 b0 + c b1,  b1*x = -c A b0 + (g0 + c B) b1
    # for x = g0 + c*delta, g0 s-invariant, c = <x, alpha_s^vee>
    big_b = delta + sdelta
    big_a = delta * sdelta
    rho = []
    for v in range(r.dim):
        x = ring.var(v)
        c = r.coroots[s][v]
        cpoly = ring.constant(c)
        g0 = x - delta.scale(c)
        rho.append([
            [g0, (-big_a).scale(c)],
            [cpoly, g0 + big_b.scale(c)],
        ])
    blocks = [(W.identity, 0, 1), (W.generator(s), 1, 1)]
    return BSData(r, (s,), 0, (-1, 1), blocks, xi, xi_inv, rho)


def _tensor_data(A: BSData, B: BSData) -> BSData:
    r = A.r
    W = r.system
    degrees = tuple(da + db for da in A.degrees for db in B.degrees)

    # group coordinate rectangles by the product element
    groups: dict[Element, list] = {}
    for (u, astart, asize) in A.blocks:
        # twist of the B-side rows by u, shared across this A-block
        twisted = [
            {k: r.act_frac(u, fr) for k, fr in B.xi[q].items()}
            for q in range(B.ncoords)
        ]
        for (v, bstart, bsize) in B.blocks:
            x = W.multiply(u, v)
            groups.setdefault(x, []).append(
                (astart, asize, bstart, bsize, twisted))

    blocks = []
    xi = []
    offset = 0
    coord_index = {}  # (p global in A, q global in B) -> new coord index
    for x in sorted(groups):
        size = sum(asize * bsize for (_, asize, _, bsize, _) in groups[x])
        blocks.append((x, offset, size))
        for (astart, asize, bstart, bsize, twisted) in groups[x]:
            for p in range(astart, astart + asize):
                rowA = A.xi[p]
                for q in range(bstart, bstart + bsize):
                    rowB = twisted[q]
                    row = {}
                    for j, fa in rowA.items():
                        if not fa:
                            continue
                        for k, fb in rowB.items():
                            if fb:
                                row[j * B.rank + k] = fa * fb
                    coord_index[(p, q)] = offset
                    xi.append(row)
                    offset += 1

    # xi_inv[(j,k)][(p,q)] = xi_inv_A[j][p] * (u_p . xi_inv_B)[k][q]
    twisted_inv_by_ablock = {}
    for bi, (u, astart, asize) in enumerate(A.blocks):
        twisted_inv_by_ablock[bi] = [
            {q: r.act_frac(u, fr) for q, fr in B.xi_inv[k].items()}
            for k in range(B.rank)
        ]
    xi_inv = []
    for j in range(A.rank):
        rowA = A.xi_inv[j]
        for k in range(B.rank):
            row = {}
            for p, fa in rowA.items():
                if not fa:
                    continue
                tw = twisted_inv_by_ablock[A._coord_block[p]][k]
                for q, fb in tw.items():
                    if fb:
                        row[coord_index[(p, q)]] = fa * fb
            xi_inv.append(row)

    # right action: (a (x) b) . x = a (x) (b . x); the left coefficients of
    # rho_B land on the B-factor and must be pushed through A's right action:
    # rho_{A(x)B}(x)[(j,k)][(j',k')] = rho_A(rho_B(x)[k][k'])[j][j']
    ring = r.ring
    rho = []
    for v in range(r.dim):
        rb = B.rho[v]
        n = A.rank * B.rank
        m = [[ring.zero] * n for _ in range(n)]
        for k in range(B.rank):
            for k2 in range(B.rank):
                p = rb[k][k2]
                if not p:
                    continue
                ma = A.rho_eval(p)
                for j in range(A.rank):
                    for j2 in range(A.rank):
                        if ma[j][j2]:
                            m[j * B.rank + k][j2 * B.rank + k2] = ma[j][j2]
        rho.append(m)

    return BSData(r, A.word + B.word, A.shift + B.shift, degrees, blocks,
                  xi, xi_inv, rho)


def bs_data(r: Realization, word: tuple, shift: int = 0) -> BSData:
    """Canonical ambient data for B_word<shift> (cached per realization)."""
    cache = getattr(r, "_abe_data", None)
    if cache is None:
        cache = r._abe_data = {}
    key = (tuple(word), shift)
    data = cache.get(key)
    if data is not None:
        return data
    base_key = (tuple(word), 0)
    base = cache.get(base_key)
    if base is None:
        base = _unit_data(r)
        for s in word:
            gen = cache.get(((s,), 0))
            if gen is None:
                gen = _gen_data(r, s)
                cache[((s,), 0)] = gen
            base = _tensor_data(base, gen) if base.word else gen
        cache[base_key] = base
    if shift == 0:
        data = base
    else:
        data = BSData(r, base.word, shift,
                      tuple(d + shift for d in base.degrees),
                      base.blocks, base.xi, base.xi_inv, base.rho)
        data._rho_mono = base._rho_mono
    cache[key] = data
    return data


# ---------------------------------------------------------------------------
# objects and morphisms
# ---------------------------------------------------------------------------

class AbeObject:
    """An object: an ambient Bott-Samelson datum and an idempotent over R.

    ``idem`` is None for the full ambient object; otherwise it is a dense
    degree-0 idempotent matrix over R in ambient coordinates, and the object
    is its image.
    """

    __slots__ = ("data", "idem", "_supp", "_cache")

    def __init__(self, data: BSData, idem=None):
        self.data = data
        self.idem = idem
        self._supp = None
        self._cache = {}

    # -- constructors -----------------------------------------------------

    @staticmethod
    def unit(r: Realization) -> "AbeObject":
        return AbeObject(bs_data(r, ()))

    @staticmethod
    def bs(r: Realization, word, shift: int = 0) -> "AbeObject":
        return AbeObject(bs_data(r, tuple(word), shift))

    @property
    def r(self) -> Realization:
        return self.data.r

    @property
    def ambient_rank(self) -> int:
        return self.data.rank

    def rank(self) -> int:
        """Rank of the object as a free left R-module."""
        if self.idem is None:
            return self.data.rank
        field = self.r.field
        e0 = _constant_part(self)
        span = SpanBasis(field)
        for col in range(self.data.rank):
            span.add({i: e0[i][col] for i in range(self.data.rank) if e0[i][col]})
        return span.rank

    def idem_or_identity(self):
        if self.idem is not None:
            return self.idem
        ring = self.r.ring
        n = self.data.rank
        return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]

    def shift(self, n: int) -> "AbeObject":
        if n == 0:
            return self
        return AbeObject(bs_data(self.r, self.data.word, self.data.shift + n), self.idem)

    def tensor(self, other: "AbeObject") -> "AbeObject":
        data = bs_data(self.r, self.data.word + other.data.word,
                       self.data.shift + other.data.shift)
        if self.idem is None and other.idem is None:
            return AbeObject(data)
        eX = self.idem_or_identity()
        eY = other.idem_or_identity()
        dX = bs_data(self.r, self.data.word, 0)
        e = _idem_tensor(dX, eX, eY, data)
        return AbeObject(data, e)

    def identity_morphism(self) -> "AbeMorphism":
        return AbeMorphism(self, self, 0, self.idem_or_identity())

    # -- one-tensors ---------------------------------------------------------

    def u_coordinates(self):
        """Coordinates of the distinguished 1-tensor (full objects only)."""
        if self.idem is not None:
            raise ValueError("the 1-tensor lives in a full Bott-Samelson object")
        return {0: self.r.ring.one}

    # -- support / character ------------------------------------------------

    def support_grk(self) -> dict:
        """Graded rank of the single-block lattices, per group element."""
        if self._supp is None:
            self._supp = _support_grk(self)
        return self._supp

    def support(self) -> list:
        return sorted(self.support_grk())

    def character(self) -> HeckeElt:
        """ch(M) = sum_w v^{-l(w)} grk(M cap M_Q^w) H_w."""
        alg = hecke_of(self.r.system)
        out = {}
        for w, g in self.support_grk().items():
            out[w] = g.shift(-w.length)
        return HeckeElt(alg, out)

    def __repr__(self):
        w = ",".join(self.r.system.labels[s] for s in self.data.word) or "1"
        tag = f"B({w})"
        if self.data.shift:
            tag += f"<{self.data.shift}>"
        if self.idem is not None:
            tag = f"summand of {tag} (rank {self.rank()})"
        return tag


def _constant_part(obj: AbeObject):
    """Degree-0 part of the idempotent, as a matrix over the field."""
    n = obj.data.rank
    field = obj.r.field
    e = obj.idem
    out = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if obj.data.degrees[i] == obj.data.degrees[j]:
                out[i][j] = e[i][j].constant_term()
    return out


def _idem_tensor(dX: BSData, eX, eY, dXY: BSData):
    """Matrix of eX (x) eY on the ambient tensor basis."""
    ring = dX.r.ring
    nX = dX.rank
    nY = len(eY)
    n = nX * nY
    out = [[ring.zero] * n for _ in range(n)]
    # (eX (x) id) o (id (x) eY): [(i,k),(j,l)] = sum_j' eX[i][j'] rhoX(eY[k][l])[j'][j]
    for k in range(nY):
        for l in range(nY):
            p = eY[k][l]
            if not p:
                continue
            m = dX.rho_eval(p)
            for i in range(nX):
                for j in range(nX):
                    acc = ring.zero
                    for j2 in range(nX):
                        if eX[i][j2] and m[j2][j]:
                            acc = acc + eX[i][j2] * m[j2][j]
                    if acc:
                        out[i * nY + k][j * nY + l] = acc
    return out


class AbeMorphism:
    """A degree-homogeneous morphism, as a matrix over R in ambient bases.

    Entry (i, j) is homogeneous of polynomial degree
    (degree + source_deg[j] - target_deg[i]) / 2.  For morphisms between
    summands the matrix is sandwiched: mat = e_target . mat . e_source.
    """

    __slots__ = ("source", "target", "degree", "mat")

    def __init__(self, source: AbeObject, target: AbeObject, degree: int, mat):
        self.source = source
        self.target = target
        self.degree = degree
        self.mat = mat

    def compose(self, other: "AbeMorphism") -> "AbeMorphism":
        """self o other (apply ``other`` first)."""
        if other.target.data is not self.source.data:
            raise ValueError("composition mismatch")
        ring = self.source.r.ring
        return AbeMorphism(other.source, self.target, self.degree + other.degree,
                           _mat_mul(self.mat, other.mat, ring))

    def __add__(self, other: "AbeMorphism") -> "AbeMorphism":
        mat = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.mat, other.mat)]
        return AbeMorphism(self.source, self.target, self.degree, mat)

    def __sub__(self, other):
        mat = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.mat, other.mat)]
        return AbeMorphism(self.source, self.target, self.degree, mat)

    def scale(self, c) -> "AbeMorphism":
        return AbeMorphism(self.source, self.target, self.degree,
                           [[a.scale(c) for a in row] for row in self.mat])

    def __bool__(self):
        return any(any(a for a in row) for row in self.mat)

    def mat_equal(self, other) -> bool:
        return self.mat == other.mat

    def tensor(self, other: "AbeMorphism") -> "AbeMorphism":
        src = self.source.tensor(other.source)
        tgt = self.target.tensor(other.target)
        dT = bs_data(self.source.r, self.target.data.word, 0)
        ring = self.source.r.ring
        # (phi (x) id) o (id (x) psi)
        nS_X, nS_Y = self.source.data.rank, other.source.data.rank
        nT_X, nT_Y = self.target.data.rank, other.target.data.rank
        dSX = bs_data(self.source.r, self.source.data.word, 0)
        mid = [[ring.zero] * (nS_X * nS_Y) for _ in range(nS_X * nT_Y)]
        for k in range(nT_Y):
            for l in range(nS_Y):
                p = other.mat[k][l]
                if not p:
                    continue
                m = dSX.rho_eval(p)
                for j2 in range(nS_X):
                    for j in range(nS_X):
                        if m[j2][j]:
                            mid[j2 * nT_Y + k][j * nS_Y + l] = m[j2][j]
        out = [[ring.zero] * (nS_X * nS_Y) for _ in range(nT_X * nT_Y)]
        for i in range(nT_X):
            for k in range(nT_Y):
                row_out = out[i * nT_Y + k]
                for j2 in range(nS_X):
                    a = self.mat[i][j2]
                    if not a:
                        continue
                    row_mid = mid[j2 * nT_Y + k]
                    for col in range(nS_X * nS_Y):
                        if row_mid[col]:
                            row_out[col] = row_out[col] + a * row_mid[col]
        return AbeMorphism(src, tgt, self.degree + other.degree, out)

    def is_valid(self) -> bool:
        """Check homogeneity, right-action equivariance, block preservation."""
        S, T = self.source.data, self.target.data
        ring = S.r.ring
        # homogeneity
        for i in range(T.rank):
            for j in range(S.rank):
                p = self.mat[i][j]
                if not p:
                    continue
                want = self.degree + S.degrees[j] - T.degrees[i]
                if want < 0 or want % 2 or not p.is_homogeneous() \
                        or 2 * p.degree() != want:
                    return False
        # right-action equivariance
        for v in range(S.r.dim):
            lhs = _mat_mul(self.mat, S.rho[v], ring)
            rhs = _mat_mul(T.rho[v], self.mat, ring)
            if lhs != rhs:
                return False
        # block preservation
        return not any(True for _ in _offblock_entries(self, nonzero_only=True))

    def __repr__(self):
        return f"AbeMorphism({self.source} -> {self.target}, deg {self.degree})"


def _offblock_entries(mor: AbeMorphism, nonzero_only=False):
    """Entries of xi_T . mat . xi_S^{-1} between distinct blocks."""
    S, T = mor.source.data, mor.target.data
    # U = xi_T . mat  (coords x source rank)
    U = []
    for rc in range(T.ncoords):
        row = {}
        for i, fr in T.xi[rc].items():
            mrow = mor.mat[i]
            for j in range(S.rank):
                if mrow[j]:
                    add = fr.mul_poly(mrow[j])
                    cur = row.get(j)
                    row[j] = add if cur is None else cur + add
        U.append(row)
    for rc in range(T.ncoords):
        wT = T.block_of_coord(rc)[0]
        Urow = U[rc]
        for cc in range(S.ncoords):
            wS = S.block_of_coord(cc)[0]
            if wS == wT:
                continue
            acc = None
            for j, fr in Urow.items():
                fb = S.xi_inv[j].get(cc)
                if fb is not None and fb:
                    term = fr * fb
                    acc = term if acc is None else acc + term
            if acc is None:
                continue
            if nonzero_only:
                if acc.reduce():
                    yield (rc, cc, acc)
            else:
                yield (rc, cc, acc)


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------

def _hom_core(r: Realization, word_s: tuple, word_t: tuple, delta: int):
    """Basis matrices of degree-``delta`` morphisms B_word_s -> B_word_t.

    Works with unshifted ambient data; results are cached on the
    realization.  The solver runs in two stages: right-action equivariance
    gives a sparse linear system over the field for the polynomial entries;
    block preservation is then imposed on the resulting solution space after
    clearing denominators.
    """
    cache = getattr(r, "_hom_core", None)
    if cache is None:
        cache = r._hom_core = {}
    key = (tuple(word_s), tuple(word_t), delta)
    if key in cache:
        return cache[key]

    S = bs_data(r, tuple(word_s))
    T = bs_data(r, tuple(word_t))
    ring = r.ring
    field = r.field

    # unknowns: (i, j, monomial)
    unknowns = []
    unknown_index = {}
    entry_monos = {}
    for i in range(T.rank):
        for j in range(S.rank):
            d = delta + S.degrees[j] - T.degrees[i]
            if d < 0 or d % 2:
                continue
            monos = ring.monomials(d // 2)
            entry_monos[(i, j)] = monos
            for mu in monos:
                unknown_index[(i, j, mu)] = len(unknowns)
                unknowns.append((i, j, mu))
    if not unknowns:
        cache[key] = []
        return []

    # stage (a): P . rho_S(x_v) = rho_T(x_v) . P for every variable
    eqs: dict = {}

    def eq_add(eqkey, mono, uidx, coef):
        row = eqs.setdefault(eqkey, {})
        cell = row.setdefault(mono, {})
        cur = cell.get(uidx)
        cur = coef if cur is None else cur + coef
        if cur:
            cell[uidx] = cur
        else:
            cell.pop(uidx, None)

    for uidx, (i, jsrc, mu) in enumerate(unknowns):
        for v in range(r.dim):
            rs = S.rho[v]
            for jdst in range(S.rank):
                p = rs[jsrc][jdst]
                if not p:
                    continue
                for exp, coef in p.c.items():
                    mono = tuple(a + b for a, b in zip(mu, exp))
                    eq_add((v, jdst, i), mono, uidx, coef)
            rt = T.rho[v]
            for idst in range(T.rank):
                p = rt[idst][i]
                if not p:
                    continue
                for exp, coef in p.c.items():
                    mono = tuple(a + b for a, b in zip(mu, exp))
                    eq_add((v, jsrc, idst), mono, uidx, -coef)

    rows = []
    for row in eqs.values():
        for cell in row.values():
            if cell:
                rows.append(cell)
    sols = nullspace(rows, len(unknowns), field)
    if not sols:
        cache[key] = []
        return []

    # build candidate matrices
    def to_matrix(vec):
        mat = [[ring.zero] * S.rank for _ in range(T.rank)]
        polys: dict = {}
        for uidx, c in vec.items():
            i, j, mu = unknowns[uidx]
            polys.setdefault((i, j), {})[mu] = c
        for (i, j), coeffs in polys.items():
            mat[i][j] = Poly(ring, coeffs)
        return mat

    candidates = [to_matrix(vec) for vec in sols]

    # stage (b): off-block entries of xi_T . P . xi_S^{-1} must vanish
    off_rows: dict = {}
    for alpha, mat in enumerate(candidates):
        mor = AbeMorphism(AbeObject(S), AbeObject(T), delta, mat)
        for rc, cc, fr in _offblock_entries(mor):
            off_rows.setdefault((rc, cc), {})[alpha] = fr
    rows2 = []
    for cell in off_rows.values():
        alphas = sorted(cell)
        polys, _ = lcd_clear([cell[a] for a in alphas])
        mono_rows: dict = {}
        for a, p in zip(alphas, polys):
            for exp, coef in p.c.items():
                mono_rows.setdefault(exp, {})[a] = coef
        rows2.extend(mono_rows.values())
    sols2 = nullspace(rows2, len(candidates), field)

    out = []
    for vec in sols2:
        mat = [[ring.zero] * S.rank for _ in range(T.rank)]
        for a, c in vec.items():
            cand = candidates[a]
            for i in range(T.rank):
                for j in range(S.rank):
                    if cand[i][j]:
                        mat[i][j] = mat[i][j] + cand[i][j].scale(c)
        out.append(mat)
    cache[key] = out
    return out


def hom_basis(X: AbeObject, Y: AbeObject, degree: int, cap: int = 64):
    """A field-basis of the degree-``degree`` morphisms X -> Y."""
    if X.data.rank > cap or Y.data.rank > cap:
        raise ValueError("hom_basis size cap exceeded")
    delta = degree + X.data.shift - Y.data.shift
    core = _hom_core(X.r, X.data.word, Y.data.word, delta)
    if X.idem is None and Y.idem is None:
        return [AbeMorphism(X, Y, degree, m) for m in core]
    ring = X.r.ring
    eX = X.idem
    eY = Y.idem
    span = SpanBasis(X.r.field)
    out = []
    pos_index: dict = {}
    for m in core:
        if eX is not None:
            m = _mat_mul(m, eX, ring)
        if eY is not None:
            m = _mat_mul(eY, m, ring)
        vec = _flatten_matrix(m, pos_index)
        if span.add(vec):
            out.append(AbeMorphism(X, Y, degree, m))
    return out


def _flatten_matrix(m, pos_index: dict) -> dict:
    vec = {}
    for i, row in enumerate(m):
        for j, p in enumerate(row):
            if not p:
                continue
            for exp, c in p.c.items():
                key = (i, j, exp)
                idx = pos_index.setdefault(key, len(pos_index))
                vec[idx] = c
    return vec


def hom_dims(X: AbeObject, Y: AbeObject, degrees) -> dict:
    return {d: len(hom_basis(X, Y, d)) for d in degrees}


# ---------------------------------------------------------------------------
# the single-block lattice and the character
# ---------------------------------------------------------------------------

def _support_grk(obj: AbeObject) -> dict:
    data = obj.data
    r = data.r
    ring = r.ring
    field = r.field

    # block ranks of the object (rank over Q of e(M_Q^w))
    cleared_rows = []
    e = obj.idem
    for rc in range(data.ncoords):
        fracs = []
        cols = []
        if e is None:
            row = data.xi[rc]
            for j, fr in row.items():
                fracs.append(fr)
                cols.append(j)
        else:
            for j in range(data.rank):
                acc = None
                for i, fr in data.xi[rc].items():
                    if e[i][j]:
                        term = fr.mul_poly(e[i][j])
                        acc = term if acc is None else acc + term
                if acc is not None and acc:
                    fracs.append(acc)
                    cols.append(j)
        polys, _ = lcd_clear(fracs)
        full = [ring.zero] * data.rank
        for c, p in zip(cols, polys):
            full[c] = p
        cleared_rows.append(full)

    out = {}
    for (w, start, size) in data.blocks:
        block_rows = [cleared_rows[rc] for rc in range(start, start + size)]
        r_w = poly_matrix_rank(block_rows, ring)
        if not r_w:
            continue
        out[w] = _lattice_grk(obj, w, r_w, cleared_rows)
    return out


def _lattice_grk(obj: AbeObject, w: Element, r_w: int, cleared_rows) -> Laurent:
    """Degrees of a minimal generating set of {x in M : xi(x) lies in block w}."""
    data = obj.data
    r = data.r
    ring = r.ring
    field = r.field
    dmin = min(data.degrees)
    dmax = max(data.degrees)
    hard_cap = dmax + 2 * (r_w + ring.n + 2)
    # when all basis degrees share one parity, only that parity can occur
    parities = {dd % 2 for dd in data.degrees}
    step = 2 if len(parities) == 1 else 1

    gens: dict[int, int] = {}
    found = 0
    bases: list = []  # (degree, lattice vectors, positions, position index)

    d = dmin
    while found < r_w:
        if d > hard_cap:
            raise ArithmeticError(
                "single-block lattice is not free within the degree window")
        # coordinates of M_d: positions (j, monomial)
        positions = []
        pos_idx = {}
        for j in range(data.rank):
            dd = d - data.degrees[j]
            if dd < 0 or dd % 2:
                continue
            for mu in ring.monomials(dd // 2):
                pos_idx[(j, mu)] = len(positions)
                positions.append((j, mu))
        if positions:
            # restrict to the image of the idempotent
            if obj.idem is not None:
                sub = []
                span = SpanBasis(field)
                for (j, mu) in positions:
                    vec = {}
                    for i in range(data.rank):
                        p = obj.idem[i][j]
                        if not p:
                            continue
                        for exp, c in p.c.items():
                            key = (i, tuple(a + b for a, b in zip(mu, exp)))
                            idx = pos_idx.get(key)
                            if idx is None:
                                continue  # impossible for degree reasons
                            cur = vec.get(idx)
                            cur = c if cur is None else cur + c
                            if cur:
                                vec[idx] = cur
                            else:
                                vec.pop(idx, None)
                    if span.add(vec):
                        sub.append(vec)
                basis_vectors = sub
            else:
                basis_vectors = [{i: field.one} for i in range(len(positions))]

            # conditions: off-block coordinates of xi vanish
            rows = []
            if basis_vectors:
                cond: dict = {}
                for rc in range(data.ncoords):
                    if data.block_of_coord(rc)[0] == w:
                        continue
                    crow = cleared_rows[rc]
                    for t, vec in enumerate(basis_vectors):
                        for idx, c in vec.items():
                            j, mu = positions[idx]
                            p = crow[j]
                            if not p:
                                continue
                            for exp, pc in p.c.items():
                                mono = tuple(a + b for a, b in zip(mu, exp))
                                cell = cond.setdefault((rc, mono), {})
                                cur = cell.get(t)
                                add = c * pc
                                cur = add if cur is None else cur + add
                                if cur:
                                    cell[t] = cur
                                else:
                                    cell.pop(t, None)
                rows = [cell for cell in cond.values() if cell]
            sols = nullspace(rows, len(basis_vectors), field)
            # express solutions in position space
            xd = []
            for vec in sols:
                full = {}
                for t, c in vec.items():
                    for idx, a in basis_vectors[t].items():
                        cur = full.get(idx)
                        add = c * a
                        cur = add if cur is None else cur + add
                        if cur:
                            full[idx] = cur
                        else:
                            full.pop(idx, None)
                xd.append(full)

            # span of multiples of lower-degree lattice elements
            span = SpanBasis(field)
            for (d0, vectors, positions0, pos_idx0) in bases:
                step = d - d0
                if step <= 0 or step % 2:
                    continue
                for mu2 in ring.monomials(step // 2):
                    for v0 in vectors:
                        vec = {}
                        for idx0, c in v0.items():
                            j, mu = positions0[idx0]
                            key = (j, tuple(a + b for a, b in zip(mu, mu2)))
                            tgt = pos_idx.get(key)
                            if tgt is not None:
                                vec[tgt] = c
                        span.add(vec)
            old_rank = span.rank
            fresh = len(xd) - old_rank
            if fresh < 0:
                raise ArithmeticError("lattice dimension dropped below products")
            if fresh:
                gens[d] = fresh
                found += fresh
            if xd:
                bases.append((d, xd, positions, pos_idx))
        d += step
    return Laurent(gens)


# ---------------------------------------------------------------------------
# generator morphisms and the braid morphism
# ---------------------------------------------------------------------------

def generator_morphisms(r: Realization, s: int):
    """(m_s, beta_s, t_1, t_2) for one color.

    m_s : B_s -> 1 (degree +1), a (x) b -> ab;
    beta_s : 1 -> B_s (degree +1), 1 -> delta (x) 1 - 1 (x) s(delta);
    t_1 : B_s -> B_s B_s (degree -1), f (x) g -> f (x) 1 (x) g;
    t_2 : B_s B_s -> B_s (degree -1), f (x) g (x) h -> f d_s(g) (x) h.
    """
    ring = r.ring
    unit = AbeObject.unit(r)
    bs = AbeObject.bs(r, (s,))
    bss = AbeObject.bs(r, (s, s))
    delta = r.delta(s)
    sdelta = r.act_gen(s, delta)
    m_s = AbeMorphism(bs, unit, 1, [[ring.one, delta]])
    beta_s = AbeMorphism(unit, bs, 1, [[-sdelta], [ring.one]])
    z = ring.zero
    t_1 = AbeMorphism(bs, bss, -1, [
        [ring.one, z],
        [z, ring.one],
        [z, z],
        [z, z],
    ])
    t_2 = AbeMorphism(bss, bs, -1, [
        [z, z, ring.one, z],
        [z, z, z, ring.one],
    ])
    return m_s, beta_s, t_1, t_2


def braid_word(r: Realization, s: int, t: int) -> tuple:
    m = r.system.m[s][t]
    if m is None:
        raise ValueError("no braid morphism for an infinite bond")
    return tuple(s if i % 2 == 0 else t for i in range(m))


def braid_morphism(r: Realization, s: int, t: int) -> AbeMorphism:
    """The unique degree-0 morphism B_{w(s,t)} -> B_{w(t,s)} fixing 1-tensors."""
    X = AbeObject.bs(r, braid_word(r, s, t))
    Y = AbeObject.bs(r, braid_word(r, t, s))
    basis = hom_basis(X, Y, 0)
    if len(basis) != 1:
        raise ArithmeticError(
            f"degree-0 Hom space between the braid objects has dimension "
            f"{len(basis)}, expected 1 (invalid realization?)")
    phi = basis[0]
    # phi(u) = lambda * u by degree reasons: the bottom-degree basis vector
    # on each side is the 1-tensor (index 0)
    lam = phi.mat[0][0].constant_term()
    if not lam:
        raise ArithmeticError("braid morphism cannot be normalized on 1-tensors")
    return phi.scale(r.field.one / lam)
