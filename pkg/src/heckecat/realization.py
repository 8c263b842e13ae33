"""Realizations of a Coxeter system over an exact field.

A realization is a triple (V, (alpha_s^vee), (alpha_s)) with coroots in V
and roots in V*, inducing reflections s(v) = v - <alpha_s, v> alpha_s^vee.
We store coroots as coordinate vectors in a basis of V and roots as
coordinate vectors in the dual basis, so the natural pairing is the dot
product.  The attached graded ring R = Sym(V*) (variables in degree 2)
lives in :mod:`heckecat.polyring`; this module supplies the W-action on it,
Demazure operators, the standard constructors (Cartan data, geometric,
Soergel), dualization and parabolic restriction, and validation of the
standing assumptions:

* the defining pairings <alpha_s, alpha_s^vee> = 2;
* the reflection action is well defined (involutions and braid relations);
* balancedness, in the operational form [m-1]_s = [m-1]_t = 1 for the
  two-colored quantum numbers at the Cartan pairings;
* Demazure surjectivity (roots and coroots nonzero as functionals);
* vanishing of the two-colored quantum binomials [m k] for 0 < k < m.

The condition required of systems with a parabolic subgroup of type H3 has
no finitely checkable description available here; validation always reports
it as "not checked".
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from typing import Optional, Sequence

from .coxeter import CoxeterSystem, Element
from .fields import QQ, RAT
from .polyring import Poly, PolyRing

# ---------------------------------------------------------------------------
# two-colored quantum numbers and binomials
# ---------------------------------------------------------------------------
# The one-color quantum numbers [n] are Z-polynomials in the variable
# c = [2]; two-colored ones replace c by one of the two Cartan entries
# according to a parity rule.  Writing [n](c) = E(c^2) + c*O(c^2), the
# two-colored value with colors (x, y) and z = x*y is E(z) + x*O(z) for the
# first color and E(z) + y*O(z) for the second.  Binomials [n k] are pure
# parity in c, so the same substitution applies; they are computed by exact
# division of products of quantum numbers in Z[c].


def _qnum_poly(n: int) -> list:
    """[n] as a polynomial in c = [2] (little endian, rational coeffs)."""
    a, b = [], [RAT(1)]  # [0], [1]
    for _ in range(n):
        a, b = b, _psub(_pmulx(b), a)
    return a


def _pmulx(p):
    return [RAT(0)] + list(p)


def _psub(p, q):
    n = max(len(p), len(q))
    out = [RAT(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] -= c
    while out and not out[-1]:
        out.pop()
    return out


def _qbinom_poly(n: int, k: int) -> list:
    from .fields import pdivmod, pmul

    num = [RAT(1)]
    for i in range(k):
        num = pmul(num, _qnum_poly(n - i))
    for i in range(1, k + 1):
        q, r = pdivmod(num, _qnum_poly(i))
        if r:
            raise ArithmeticError("quantum binomial division not exact")
        num = q
    return num


def two_color_number(n: int, first: bool, x, y, one):
    """[n]_s (first=True) or [n]_t at parameters x = [2]_s, y = [2]_t.

    Defined by [0] = 0, [1] = 1 and the alternating-color three-term
    recursion [k+1]_c = [2]_c [k]_c' - [k-1]_c  (c' the other color).
    """
    zero = one - one
    if n == 0:
        return zero
    vals = {(0, True): zero, (0, False): zero, (1, True): one, (1, False): one}
    for k in range(1, n):
        for f in (True, False):
            two = x if f else y
            vals[(k + 1, f)] = two * vals[(k, not f)] - vals[(k - 1, f)]
    return vals[(n, first)]


def two_color_binom(n: int, k: int, first: bool, x, y, one):
    """Two-colored quantum binomial [n k] anchored at the color of x.

    The one-color binomial is a Z-polynomial of pure parity in c = [2];
    writing it as E(c^2) + c*O(c^2), the two-colored value is
    E(xy) + x*O(xy) for the first color and E(xy) + y*O(xy) for the other.
    This agrees with the quantum numbers at k = 1 and vanishes for
    0 < k < m at the Cartan pairings of the standard realization families.
    """
    poly = _qbinom_poly(n, k)
    z = x * y
    odd_factor = x if first else y
    even = one - one
    odd = one - one
    for i, coef in enumerate(poly):
        if not coef:
            continue
        term = one
        for _ in range(i // 2):
            term = term * z
        term = _rat_scale(term, coef, one)
        if i % 2 == 0:
            even = even + term
        else:
            odd = odd + term
    return even + odd_factor * odd


def _rat_scale(x, q, one):
    num, den = int(q.numerator), int(q.denominator)
    out = x - x
    base = x
    n = abs(num)
    while n:
        if n & 1:
            out = out + base
        base = base + base
        n >>= 1
    if num < 0:
        out = -out
    if den != 1:
        d = one - one
        for _ in range(den):
            d = d + one
        out = out / d
    return out


# ---------------------------------------------------------------------------
# realization data
# ---------------------------------------------------------------------------

class Realization:
    """Realization data: coroots in V, roots in V*, over an exact field."""

    def __init__(self, system: CoxeterSystem, field, coroots, roots,
                 name: str = "", dim: Optional[int] = None):
        self.system = system
        self.field = field
        self.coroots = [tuple(v) for v in coroots]
        self.roots = [tuple(v) for v in roots]
        if len(self.coroots) != system.rank or len(self.roots) != system.rank:
            raise ValueError("need one root and one coroot per generator")
        dims = {len(v) for v in self.coroots} | {len(v) for v in self.roots}
        if dim is not None:
            dims.add(dim)
        if len(dims) != 1:
            raise ValueError("inconsistent vector dimensions")
        self.dim = dims.pop()
        self.name = name or "realization"
        self.ring = PolyRing(field, self.dim)
        self.cartan = [
            [self.pair(self.roots[t], self.coroots[s]) for t in range(system.rank)]
            for s in range(system.rank)
        ]
        self._act_cache: dict[tuple, list] = {}
        self._form_registry: dict[Element, int] = {}
        self._form_vectors: list[tuple] = []
        self._deltas: list[Optional[Poly]] = [None] * system.rank

    # -- linear data -------------------------------------------------------

    def pair(self, covector, vector):
        acc = self.field.zero
        for a, b in zip(covector, vector):
            if a and b:
                acc = acc + a * b
        return acc

    def root_poly(self, s: int) -> Poly:
        return self.ring.linear(self.roots[s])

    def delta(self, s: int) -> Poly:
        """A degree-2 element with <delta_s, alpha_s^vee> = 1 (first usable
        coordinate covector, scaled)."""
        if self._deltas[s] is None:
            for i, c in enumerate(self.coroots[s]):
                if c:
                    coords = [self.field.zero] * self.dim
                    coords[i] = self.field.one / c
                    self._deltas[s] = self.ring.linear(coords)
                    break
            else:
                raise ValueError(
                    f"Demazure surjectivity fails for generator {self.system.labels[s]}"
                )
        return self._deltas[s]

    # -- W-action on V* and on R -------------------------------------------

    def _gen_images(self, s: int) -> list:
        """Images of the variables under the generator s: f - <f, a^vee> a."""
        out = []
        alpha = self.root_poly(s)
        for i in range(self.dim):
            img = self.ring.var(i)
            c = self.coroots[s][i]
            if c:
                img = img - alpha.scale(c)
            out.append(img)
        return out

    def var_images(self, w: Element) -> list:
        """Images of the variables under w (cached per element)."""
        key = w.word
        cached = self._act_cache.get(key)
        if cached is not None:
            return cached
        if not key:
            imgs = [self.ring.var(i) for i in range(self.dim)]
        else:
            # w = s w'': w(f) = s(w''(f)), i.e. substitute the generator
            # images into the w''-image
            s = key[0]
            rest = self.var_images(self.system.element(key[1:]))
            gen = self._gen_images(s)
            imgs = [rest[i].substitute(gen) for i in range(self.dim)]
        self._act_cache[key] = imgs
        return imgs

    def act(self, w: Element, f: Poly) -> Poly:
        if not w.word:
            return f
        return f.substitute(self.var_images(w))

    def act_gen(self, s: int, f: Poly) -> Poly:
        return f.substitute(self.var_images(self.system.generator(s)))

    # root images as registered denominator forms ---------------------------

    def form_for(self, w: Element, s: int):
        """Register/lookup the root image w(alpha_s).

        Returns (form id, scalar c) with w(alpha_s) = c * forms[id]; all root
        images of one reflection are proportional, so forms are keyed by the
        reflection w s w^{-1}.
        """
        refl = self.system.multiply(self.system.multiply(w, self.system.generator(s)), w.inverse())
        vec = self.act(w, self.root_poly(s))
        fid = self._form_registry.get(refl)
        if fid is None:
            fid = self.ring.register_form(vec)
            self._form_registry[refl] = fid
            return fid, self.field.one
        base = self.ring.forms[fid]
        scalar = None
        for e, a in base.c.items():
            b = vec.c.get(e)
            if b is None:
                raise ArithmeticError("root images of one reflection not proportional")
            scalar = b / a
            break
        if not (base.scale(scalar) == vec):
            raise ArithmeticError("root images of one reflection not proportional")
        return fid, scalar

    def act_on_form(self, w: Element, fid: int):
        """Image of a registered form under w, as (new id, scalar)."""
        refl = next(t for t, i in self._form_registry.items() if i == fid)
        base = self.ring.forms[fid]
        vec = self.act(w, base)
        new_refl = self.system.multiply(self.system.multiply(w, refl), w.inverse())
        nid = self._form_registry.get(new_refl)
        if nid is None:
            nid = self.ring.register_form(vec)
            self._form_registry[new_refl] = nid
            return nid, self.field.one
        tgt = self.ring.forms[nid]
        scalar = None
        for e, a in tgt.c.items():
            b = vec.c.get(e)
            if b is None:
                raise ArithmeticError("form image not proportional to its reflection form")
            scalar = b / a
            break
        if not (tgt.scale(scalar) == vec):
            raise ArithmeticError("form image not proportional to its reflection form")
        return nid, scalar

    def act_frac(self, w: Element, fr):
        """Image of a localized element under w.

        w(num / prod f^m) = w(num) / prod w(f)^m, and each w(f) is a scalar
        multiple of the registered form of its reflection; the scalars are
        folded into the numerator.
        """
        from .polyring import Frac

        if not w.word:
            return fr
        if not fr.num:
            return fr
        num = self.act(w, fr.num)
        den: dict = {}
        scal = self.field.one
        for fid, mult in fr.den.items():
            nid, c = self.act_on_form(w, fid)
            den[nid] = den.get(nid, 0) + mult
            for _ in range(mult):
                scal = scal * c
        if scal != self.field.one:
            num = num.scale(self.field.one / scal)
        return Frac(self.ring, num, den)

    # -- Demazure operators ---------------------------------------------------

    def demazure(self, s: int, f: Poly) -> Poly:
        """The divided difference (f - s(f)) / alpha_s (exact division)."""
        diff = f - self.act_gen(s, f)
        if not diff:
            return self.ring.zero
        try:
            return diff.exact_div(self.root_poly(s))
        except ValueError as exc:
            raise ArithmeticError(
                "Demazure division failed: the reflection action is broken"
            ) from exc

    # -- derived realizations ---------------------------------------------------

    def dual(self) -> "Realization":
        return Realization(
            self.system, self.field, self.roots, self.coroots,
            name=f"dual({self.name})",
        )

    def restrict(self, subset: Sequence[int]) -> "Realization":
        subset = list(subset)
        sub_m = [[self.system.m[i][j] for j in subset] for i in subset]
        sub_labels = [self.system.labels[i] for i in subset]
        sub_sys = CoxeterSystem(sub_m, sub_labels)
        return Realization(
            sub_sys, self.field,
            [self.coroots[i] for i in subset],
            [self.roots[i] for i in subset],
            name=f"{self.name}|{''.join(sub_labels)}",
            dim=self.dim,
        )

    def data_equal(self, other: "Realization") -> bool:
        return (
            self.field is other.field
            and self.coroots == other.coroots
            and self.roots == other.roots
        )

    def __repr__(self):
        return f"Realization({self.name}, dim={self.dim}, field={self.field})"


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    checks: dict = dfield(default_factory=dict)
    details: dict = dfield(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v for v in self.checks.values() if v is not None)

    def summary(self) -> str:
        lines = []
        for k, v in self.checks.items():
            status = "not checked" if v is None else ("ok" if v else "FAIL")
            msg = f"  {k}: {status}"
            if k in self.details:
                msg += f" ({self.details[k]})"
            lines.append(msg)
        return "\n".join(lines)


def validate(r: Realization, system: Optional[CoxeterSystem] = None) -> ValidationReport:
    """Check the standing assumptions on a realization."""
    sys = system or r.system
    if sys.rank != r.system.rank:
        raise ValueError("system rank does not match the realization")
    rep = ValidationReport()
    one = r.field.one

    # defining pairings
    ok = all(r.cartan[s][s] == one + one for s in range(sys.rank))
    rep.checks["defining_pairing"] = ok
    if not ok:
        rep.details["defining_pairing"] = "<alpha_s, alpha_s^vee> != 2 for some s"

    # reflection action: involutions and braid relations on V*
    ok = True
    detail = []
    for s in range(sys.rank):
        imgs = r.var_images(sys.generator(s))
        sq = [p.substitute(imgs) for p in imgs]
        if sq != [r.ring.var(i) for i in range(r.dim)]:
            ok = False
            detail.append(f"{sys.labels[s]}^2 != 1 on V*")
    for s in range(sys.rank):
        for t in range(s + 1, sys.rank):
            m = sys.m[s][t]
            if m is None:
                continue
            cur = [r.ring.var(i) for i in range(r.dim)]
            gs, gt = r.var_images(sys.generator(s)), r.var_images(sys.generator(t))
            for _ in range(m):
                cur = [p.substitute(gt) for p in cur]
                cur = [p.substitute(gs) for p in cur]
            if cur != [r.ring.var(i) for i in range(r.dim)]:
                ok = False
                detail.append(f"braid relation fails for ({sys.labels[s]},{sys.labels[t]})")
    rep.checks["action_well_defined"] = ok
    if detail:
        rep.details["action_well_defined"] = "; ".join(detail)

    # Demazure surjectivity: roots and coroots nonzero
    bad = []
    for s in range(sys.rank):
        if not any(r.roots[s]):
            bad.append(f"alpha_{sys.labels[s]} = 0")
        if not any(r.coroots[s]):
            bad.append(f"alpha_{sys.labels[s]}^vee = 0")
    rep.checks["demazure_surjective"] = not bad
    if bad:
        rep.details["demazure_surjective"] = "; ".join(bad)

    # balancedness and two-colored vanishing
    balanced_ok = True
    vanish_ok = True
    details_b, details_v = [], []
    for s in range(sys.rank):
        for t in range(s + 1, sys.rank):
            m = sys.m[s][t]
            if m is None:
                continue
            x = -r.cartan[s][t]  # [2]_s
            y = -r.cartan[t][s]  # [2]_t
            if two_color_number(m - 1, True, x, y, one) != one or \
               two_color_number(m - 1, False, x, y, one) != one:
                balanced_ok = False
                details_b.append(f"[m-1] != 1 at ({sys.labels[s]},{sys.labels[t]})")
            for k in range(1, m):
                if two_color_binom(m, k, True, x, y, one) or \
                   two_color_binom(m, k, False, x, y, one):
                    vanish_ok = False
                    details_v.append(
                        f"[{m} {k}] != 0 at ({sys.labels[s]},{sys.labels[t]})")
                    break
    rep.checks["balanced"] = balanced_ok
    if details_b:
        rep.details["balanced"] = "; ".join(details_b)
    rep.checks["two_color_vanishing"] = vanish_ok
    if details_v:
        rep.details["two_color_vanishing"] = "; ".join(details_v)

    rep.checks["h3_condition"] = None
    rep.details["h3_condition"] = "no finitely checkable criterion; reported as not checked"
    return rep


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

_GCM_ORDER = {0: 2, 1: 3, 2: 4, 3: 6}


def system_from_gcm(gcm) -> CoxeterSystem:
    n = len(gcm)
    m = [[1] * n for _ in range(n)]
    for i in range(n):
        if gcm[i][i] != 2:
            raise ValueError("generalized Cartan matrix needs 2 on the diagonal")
        for j in range(n):
            if i == j:
                continue
            if gcm[i][j] > 0 or gcm[i][j] != int(gcm[i][j]):
                raise ValueError("off-diagonal GCM entries must be nonpositive integers")
            if (gcm[i][j] == 0) != (gcm[j][i] == 0):
                raise ValueError("GCM zero pattern must be symmetric")
            prod = gcm[i][j] * gcm[j][i]
            m[i][j] = _GCM_ORDER.get(prod)  # None (infinity) for prod >= 4
    return CoxeterSystem(m)


def from_gcm(gcm, datum: str = "adjoint", field=QQ, labels=None):
    """Cartan realization of a generalized Cartan matrix over ``field``.

    datum "adjoint": X is the root lattice (roots are coordinate vectors,
    coroots are the rows of the GCM); "sc" (simply connected): coroots are
    coordinate vectors, roots are the columns of the GCM.
    """
    sys = system_from_gcm(gcm)
    if labels:
        sys = CoxeterSystem(sys.m, labels)
    n = sys.rank
    K = field
    if datum == "adjoint":
        coroots = [[K.of(gcm[s][j]) for j in range(n)] for s in range(n)]
        roots = [[K.one if j == s else K.zero for j in range(n)] for s in range(n)]
    elif datum in ("sc", "simply-connected", "simply_connected"):
        coroots = [[K.one if j == s else K.zero for j in range(n)] for s in range(n)]
        roots = [[K.of(gcm[j][s]) for j in range(n)] for s in range(n)]
    else:
        raise ValueError(f"unknown Kac-Moody datum kind {datum!r}")
    return sys, Realization(sys, K, coroots, roots, name=f"cartan-{datum}")


def geometric(sys: CoxeterSystem) -> Realization:
    """The geometric realization: V = span(e_s), alpha_s = 2 B(e_s, -).

    Lives over the same exact field as the reflection table of the system,
    which already contains every required 2cos(pi/m)."""
    field = sys.refl.field
    cosines = sys.refl.cosines
    n = sys.rank
    coroots = [[field.one if j == s else field.zero for j in range(n)] for s in range(n)]
    roots = []
    for s in range(n):
        row = []
        for t in range(n):
            if t == s:
                row.append(field.one + field.one)
            else:
                row.append(-cosines[sys.m[s][t]])
        roots.append(row)
    return Realization(sys, field, coroots, roots, name="geometric")


def soergel(sys: CoxeterSystem, choice: str = "minimal") -> Realization:
    """A Soergel realization: independent (e_s) and (e_s^*) with
    <e_t, e_s^*> = -2cos(pi/m_st).

    choice "minimal" uses dim V = rank (requires the cosine matrix to be
    nonsingular); "padded" always works with dim V = 2 * rank.
    """
    base = geometric(sys)
    n = sys.rank
    field = base.field
    if choice == "minimal":
        if _singular(field, [[base.roots[s][t] for t in range(n)] for s in range(n)]):
            raise ValueError(
                "cosine matrix is singular; use the padded Soergel realization")
        return Realization(sys, field, base.coroots, base.roots, name="soergel-minimal")
    if choice != "padded":
        raise ValueError(f"unknown Soergel choice {choice!r}")
    coroots = [
        [field.one if j == s else field.zero for j in range(2 * n)] for s in range(n)
    ]
    roots = []
    for s in range(n):
        row = [base.roots[s][t] for t in range(n)]
        row += [field.one if j == s else field.zero for j in range(n)]
        roots.append(row)
    return Realization(sys, field, coroots, roots, name="soergel-padded")


def _singular(field, matrix) -> bool:
    n = len(matrix)
    m = [row[:] for row in matrix]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return True
        m[c], m[piv] = m[piv], m[c]
        inv = field.one / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                for j in range(c, n):
                    m[i][j] = m[i][j] - f * m[c][j]
    return False


def explicit(sys: CoxeterSystem, field, coroots, roots, name="explicit") -> Realization:
    return Realization(sys, field, coroots, roots, name=name)
