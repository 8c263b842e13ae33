"""Exact coefficient fields: rationals, prime fields, real algebraic extensions.

Everything downstream (Coxeter word problem, realization validation, the
localized bimodule calculus) is exact, so the only fields we support are ones
with decidable arithmetic and, where an order is needed, decidable sign:

* ``QQ`` -- the rationals, backed by ``gmpy2.mpq`` (``fractions.Fraction``
  when gmpy2 is unavailable).
* ``PrimeField(p)`` -- GF(p) for a prime p.
* ``RealAlgebraicField`` -- Q(gamma) for a real algebraic number gamma given
  by a squarefree monic modulus over Q together with a rational isolating
  interval.  Sign determination is by interval refinement (bisection guided
  by Sturm counts).  The modulus is allowed to be a proper multiple of the
  minimal polynomial of gamma; inversions that run into a zero divisor
  refine the modulus in place (dynamic evaluation), so arithmetic is always
  consistent with evaluation at gamma.

The module also knows how to build the concrete extensions this package
needs: fields containing ``2*cos(pi/m)`` for prescribed bond orders m, via
cyclotomic polynomials and, for several bonds at once, a primitive element
found with resultants.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional

try:
    from gmpy2 import mpq as _mpq, mpz as _mpz

    def RAT(a=0, b=1):
        return _mpq(a, b)

except ImportError:  # pragma: no cover
    from fractions import Fraction as _mpq

    def RAT(a=0, b=1):
        return _mpq(a, b)

R0 = RAT(0)
R1 = RAT(1)


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q (little endian lists of rationals)
# ---------------------------------------------------------------------------

def ptrim(p):
    while p and not p[-1]:
        p.pop()
    return p


def padd(p, q):
    n = max(len(p), len(q))
    out = [R0] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return ptrim(out)


def pneg(p):
    return [-c for c in p]


def psub(p, q):
    return padd(p, pneg(q))


def pscale(p, c):
    return ptrim([c * a for a in p])


def pmul(p, q):
    if not p or not q:
        return []
    out = [R0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return ptrim(out)


def pdivmod(p, q):
    """Euclidean division over Q; q must be nonzero."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    quo = [R0] * max(0, len(p) - len(q) + 1)
    inv = R1 / q[-1]
    while len(p) >= len(q):
        c = p[-1] * inv
        d = len(p) - len(q)
        quo[d] = c
        for i, b in enumerate(q):
            p[d + i] -= c * b
        ptrim(p)
        if not p:
            break
    return ptrim(quo), p


def pmonic(p):
    if not p:
        return p
    inv = R1 / p[-1]
    return [c * inv for c in p]


def pgcd(p, q):
    a, b = list(p), list(q)
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def pdiff(p):
    return ptrim([p[i] * i for i in range(1, len(p))])


def peval(p, x):
    acc = R0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def peval_interval(p, lo, hi):
    """Exact rational bounds for {p(x) : x in [lo, hi]} (Horner on intervals)."""
    alo, ahi = R0, R0
    for c in reversed(p):
        # [alo, ahi] * [lo, hi] + c
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi


def sturm_sequence(p):
    seq = [list(p), pdiff(p)]
    while seq[-1]:
        rem = pdivmod(seq[-2], seq[-1])[1]
        if not rem:
            break
        seq.append(pneg(rem))
    return seq


def _variations(seq, x):
    signs = []
    for p in seq:
        v = peval(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    count = 0
    for a, b in zip(signs, signs[1:]):
        if a != b:
            count += 1
    return count


def count_real_roots(p, lo, hi):
    """Number of distinct real roots of p in (lo, hi); endpoints must not be roots."""
    seq = sturm_sequence(p)
    return _variations(seq, lo) - _variations(seq, hi)


def resultant(p, q):
    """Resultant of two rational polynomials via the Sylvester determinant."""
    m, n = len(p) - 1, len(q) - 1
    if m < 0 or n < 0:
        return R0
    size = m + n
    if size == 0:
        return R1
    rows = []
    for i in range(n):
        row = [R0] * size
        for j, c in enumerate(reversed(p)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [R0] * size
        for j, c in enumerate(reversed(q)):
            row[i + j] = c
        rows.append(row)
    # fraction-free-ish Gaussian elimination over Q
    det = R1
    for col in range(size):
        piv = None
        for r in range(col, size):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            return R0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        pv = rows[col][col]
        det *= pv
        inv = R1 / pv
        for r in range(col + 1, size):
            f = rows[r][col]
            if not f:
                continue
            f *= inv
            rr, rc = rows[r], rows[col]
            for c2 in range(col, size):
                rr[c2] -= f * rc[c2]
    return det


# ---------------------------------------------------------------------------
# cyclotomic polynomials and minimal polynomials of 2cos(pi/m)
# ---------------------------------------------------------------------------

_cyclotomic_cache: dict[int, list] = {}


def cyclotomic(n: int) -> list:
    """The n-th cyclotomic polynomial over Q (little endian)."""
    if n in _cyclotomic_cache:
        return _cyclotomic_cache[n]
    p = [RAT(-1)] + [R0] * (n - 1) + [R1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            p = pdivmod(p, cyclotomic(d))[0]
    _cyclotomic_cache[n] = p
    return p


def cos_minpoly(m: int) -> list:
    """Minimal polynomial over Q of 2*cos(pi/m) (monic, little endian).

    2cos(pi/m) = zeta + 1/zeta for zeta a primitive 2m-th root of unity, so
    the minimal polynomial is obtained from the cyclotomic polynomial of
    order 2m by substituting u = z + 1/z (cyclotomics of order > 2 are
    palindromic of even degree).
    """
    if m == 1:
        return [RAT(2), R1]       # value -2
    if m == 2:
        return [R0, R1]           # value 0
    if m == 3:
        return [RAT(-1), R1]      # value 1
    phi = cyclotomic(2 * m)
    k = (len(phi) - 1) // 2
    # phi / z^k = p_k + sum_j p_{k+j} (z^j + z^-j); rewrite z^j + z^-j in u
    d_prev = [RAT(2)]             # z^0 + z^0
    d_cur = [R0, R1]              # z + 1/z = u
    out = pscale(d_prev, phi[k] / RAT(2))
    for j in range(1, k + 1):
        out = padd(out, pscale(d_cur, phi[k + j]))
        d_prev, d_cur = d_cur, psub(pmul([R0, R1], d_cur), d_prev)
    return pmonic(out)


def cos_value_float(m) -> float:
    if m is None:
        return 2.0
    return 2.0 * math.cos(math.pi / m)


def _isolate_near(p, approx: float, slack=RAT(1, 10 ** 6)):
    """A rational interval around ``approx`` isolating exactly one root of p."""
    lo = RAT(int(approx * 10 ** 9), 10 ** 9) - slack
    hi = RAT(int(approx * 10 ** 9), 10 ** 9) + slack
    while peval(p, lo) == 0:
        lo -= slack / 7
    while peval(p, hi) == 0:
        hi += slack / 7
    n = count_real_roots(p, lo, hi)
    if n == 1:
        return lo, hi
    if n == 0:
        return _isolate_near(p, approx, slack * 64)
    return _isolate_near(p, approx, slack / 64)


# ---------------------------------------------------------------------------
# field objects
# ---------------------------------------------------------------------------

class Field:
    """Common interface: construction, characteristic, order (if any)."""

    char = 0
    is_ordered = False

    def of(self, a):
        raise NotImplementedError

    def sign(self, x) -> int:
        raise NotImplementedError

    def sample(self, rng, span=6):
        return self.of(rng.randint(-span, span))


class RationalField(Field):
    char = 0
    is_ordered = True

    def __init__(self):
        self.zero = R0
        self.one = R1

    def of(self, a, b=1):
        return RAT(a, b)

    def sign(self, x):
        return (x > 0) - (x < 0)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class GFElem:
    __slots__ = ("v", "f")

    def __init__(self, v: int, f: "PrimeField"):
        self.v = v % f.p
        self.f = f

    def __add__(self, o):
        return GFElem(self.v + o.v, self.f)

    def __sub__(self, o):
        return GFElem(self.v - o.v, self.f)

    def __neg__(self):
        return GFElem(-self.v, self.f)

    def __mul__(self, o):
        return GFElem(self.v * o.v, self.f)

    def __truediv__(self, o):
        if o.v == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return GFElem(self.v * pow(o.v, self.f.p - 2, self.f.p), self.f)

    def __pow__(self, n: int):
        if n < 0:
            return (self.f.one / self) ** (-n)
        return GFElem(pow(self.v, n, self.f.p), self.f)

    def __eq__(self, o):
        return isinstance(o, GFElem) and self.v == o.v and self.f is o.f

    def __bool__(self):
        return self.v != 0

    __hash__ = None  # never key containers by field elements

    def __repr__(self):
        return f"{self.v}"


class PrimeField(Field):
    is_ordered = False

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.zero = GFElem(0, self)
        self.one = GFElem(1, self)

    def of(self, a, b=1):
        if b % self.p == 0:
            raise ZeroDivisionError(f"denominator {b} not invertible mod {self.p}")
        return GFElem(a * pow(b, self.p - 2, self.p), self)

    def of_rational(self, q):
        num, den = int(q.numerator), int(q.denominator)
        return self.of(num, den)

    def elements(self):
        return [GFElem(v, self) for v in range(self.p)]

    def __repr__(self):
        return f"GF({self.p})"


class NFElem:
    """An element of a RealAlgebraicField, as a Q-vector of powers of gamma."""

    __slots__ = ("c", "f")

    def __init__(self, coords, f: "RealAlgebraicField"):
        self.c = tuple(coords)
        self.f = f

    def _pair(self, o):
        a = self.f._reduce(self.c)
        b = self.f._reduce(o.c)
        n = max(len(a), len(b))
        a = a + (R0,) * (n - len(a))
        b = b + (R0,) * (n - len(b))
        return a, b

    def __add__(self, o):
        a, b = self._pair(o)
        return NFElem([x + y for x, y in zip(a, b)], self.f)

    def __sub__(self, o):
        a, b = self._pair(o)
        return NFElem([x - y for x, y in zip(a, b)], self.f)

    def __neg__(self):
        return NFElem([-x for x in self.c], self.f)

    def __mul__(self, o):
        return NFElem(self.f._mul(self.c, o.c), self.f)

    def __truediv__(self, o):
        return self * self.f._inv(o.c)

    def __pow__(self, n: int):
        if n < 0:
            return (self.f.one / self) ** (-n)
        out, base = self.f.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, o):
        if not (isinstance(o, NFElem) and o.f is self.f):
            return NotImplemented
        return not (self - o)

    def __bool__(self):
        return self.f._sign(self.c) != 0

    __hash__ = None

    def __repr__(self):
        c = self.f._reduce(self.c)
        terms = []
        for i, a in enumerate(c):
            if a:
                terms.append(f"{a}" if i == 0 else f"{a}*g^{i}" if i > 1 else f"{a}*g")
        return " + ".join(terms) if terms else "0"


class RealAlgebraicField(Field):
    """Q(gamma) for a real algebraic gamma with decidable signs.

    ``modulus`` is monic and squarefree over Q; ``(lo, hi)`` is a rational
    interval containing gamma and no other root of the modulus.  When the
    modulus is reducible and a zero divisor shows up, the modulus is replaced
    by its factor vanishing at gamma; values of elements (as functions of
    gamma) are unchanged.
    """

    char = 0
    is_ordered = True

    def __init__(self, modulus, lo, hi, name="g"):
        self.modulus = pmonic([RAT(c) for c in modulus])
        sf = pdivmod(self.modulus, pgcd(self.modulus, pdiff(self.modulus)))[0]
        self.modulus = pmonic(sf)
        self.lo, self.hi = RAT(lo), RAT(hi)
        self.name = name
        if count_real_roots(self.modulus, self.lo, self.hi) != 1:
            raise ValueError("interval does not isolate a single root of the modulus")
        self._sync()
        self.zero = NFElem((), self)
        self.one = NFElem((R1,), self)
        self.gen = NFElem((R0, R1), self)

    # -- internal reduction tables -------------------------------------

    def _sync(self):
        self.deg = len(self.modulus) - 1
        red = []  # x^(deg+i) reduced, as vectors of length deg
        top = [-c for c in self.modulus[:-1]]
        cur = list(top)
        for _ in range(self.deg):
            red.append(tuple(cur + [R0] * (self.deg - len(cur))))
            cur = [R0] + cur
            if len(cur) > self.deg:
                lead = cur.pop()
                cur = [a + lead * b for a, b in zip(cur, top + [R0] * (self.deg - len(top)))]
        self._red = red

    def _reduce(self, c):
        if len(c) <= self.deg:
            return tuple(c)
        out = list(c[: self.deg]) + [R0] * (self.deg - min(self.deg, len(c)))
        for i, a in enumerate(c[self.deg:]):
            if not a:
                continue
            if i >= len(self._red):  # very long vector: reduce by division
                q, r = pdivmod(list(c), self.modulus)
                return self._reduce(tuple(r))
            for j, b in enumerate(self._red[i]):
                out[j] += a * b
        return tuple(out)

    def _mul(self, a, b):
        a, b = self._reduce(a), self._reduce(b)
        if not any(a) or not any(b):
            return ()
        out = [R0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return self._reduce(tuple(out))

    def _refine_modulus(self, factor):
        """Replace the modulus by its (squarefree) divisor vanishing at gamma."""
        factor = pmonic(factor)
        self.modulus = factor
        self._sync()
        while peval(self.modulus, self.lo) == 0 or peval(self.modulus, self.hi) == 0:
            self._shrink()

    def _shrink(self):
        mid = (self.lo + self.hi) / 2
        if peval(self.modulus, mid) == 0:
            mid = (self.lo + 2 * self.hi) / 3
            if peval(self.modulus, mid) == 0:
                mid = (2 * self.lo + self.hi) / 3
        if count_real_roots(self.modulus, self.lo, mid) == 1:
            self.hi = mid
        else:
            self.lo = mid

    def _inv(self, c):
        c = self._reduce(c)
        while True:
            a = ptrim(list(c))
            if not a:
                raise ZeroDivisionError("division by zero in algebraic field")
            # extended Euclid for gcd(a, modulus)
            r0, r1 = list(self.modulus), list(a)
            s0, s1 = [], [R1]
            while r1:
                q, r = pdivmod(r0, r1)
                r0, r1 = r1, r
                s0, s1 = s1, psub(s0, pmul(q, s1))
            if len(r0) == 1:  # unit gcd: s0 * a = r0 mod modulus
                inv = pscale(s0, R1 / r0[0])
                return NFElem(self._reduce(tuple(inv)), self)
            # zero divisor: split the modulus and retry
            g = pmonic(r0)
            cof = pdivmod(self.modulus, g)[0]
            if count_real_roots(g, self.lo, self.hi) == 1:
                # a(gamma) = 0: the element is actually zero
                self._refine_modulus(g)
                raise ZeroDivisionError("division by zero in algebraic field")
            self._refine_modulus(cof)
            c = self._reduce(c)

    def _sign(self, c):
        c = self._reduce(c)
        poly = ptrim(list(c))
        if not poly:
            return 0
        while True:
            lo, hi = peval_interval(poly, self.lo, self.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            g = pgcd(poly, self.modulus)
            if len(g) > 1 and count_real_roots(g, self.lo, self.hi) == 1:
                self._refine_modulus(g)
                return 0
            self._shrink()

    # -- public API ------------------------------------------------------

    def of(self, a, b=1):
        return NFElem((RAT(a, b),), self)

    def of_rational(self, q):
        return NFElem((RAT(q),), self)

    def sign(self, x: NFElem):
        return self._sign(x.c)

    def coords(self, x: NFElem):
        c = self._reduce(x.c)
        return c + (R0,) * (self.deg - len(c))

    def sample(self, rng, span=4):
        return NFElem(tuple(RAT(rng.randint(-span, span)) for _ in range(min(2, self.deg))), self)

    def adjoin(self, minpoly, approx: float, name="g"):
        """The compositum with Q(c) for a root c of ``minpoly`` near ``approx``.

        Returns (new field, image of self.gen, image of c).
        """
        f, g = self.modulus, pmonic([RAT(x) for x in minpoly])
        if len(g) == 2:  # rational c: nothing to extend
            return self, self.gen, self.of_rational(-g[0])
        for j in range(1, 64):
            # h has roots theta_i + j*c_k
            gj = pscale([g[i] / RAT(j) ** i for i in range(len(g))], RAT(j) ** (len(g) - 1))
            # resultant_y( f(y), gj(x - y) )  computed via interpolation-free route:
            h = _resultant_compose(f, gj)
            h = pmonic(h)
            sf = pdivmod(h, pgcd(h, pdiff(h)))[0]
            if len(sf) == len(h):
                break
        else:  # pragma: no cover
            raise RuntimeError("no squarefree primitive combination found")
        clo, chi = _isolate_near(g, approx)
        lo, hi = self.lo + j * clo, self.hi + j * chi
        # shrink both parents until (lo, hi) isolates a root of h
        guard = 0
        while (peval(h, lo) == 0 or peval(h, hi) == 0
               or count_real_roots(h, lo, hi) != 1):
            self._shrink()
            clo, chi = _bisect_once(g, clo, chi)
            lo, hi = self.lo + j * clo, self.hi + j * chi
            guard += 1
            if guard > 10000:  # pragma: no cover
                raise RuntimeError("failed to isolate primitive element")
        K = RealAlgebraicField(h, lo, hi, name=name)
        # express theta := self.gen inside K: gcd_y( f(y), gj(gamma - y) ) is linear
        theta = _common_root(K, f, gj)
        c_img = (K.gen - theta) * K.of(1, j)
        return K, theta, c_img

    def __repr__(self):
        return f"Q({self.name})[deg {self.deg}]"


def _resultant_compose(f, gj):
    """res_y( f(y), gj(x - y) ) as a polynomial in x, by evaluation/interpolation."""
    n = (len(f) - 1) * (len(gj) - 1)
    xs = [RAT(i) for i in range(n + 1)]
    ys = []
    for x0 in xs:
        # gj(x0 - y) as polynomial in y
        comp = []
        # expand sum_i gj_i (x0 - y)^i
        pw = [R1]  # (x0 - y)^0
        acc = [R0] * (len(gj))
        accp = []
        for i, ci in enumerate(gj):
            if ci:
                accp = padd(accp, pscale(pw, ci))
            pw = pmul(pw, [x0, RAT(-1)])
        ys.append(resultant(f, accp))
    # Lagrange interpolation through (xs, ys)
    out = []
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        num = [R1]
        den = R1
        for k, xk in enumerate(xs):
            if k == i:
                continue
            num = pmul(num, [-xk, R1])
            den *= xi - xk
        out = padd(out, pscale(num, yi / den))
    return out


def _bisect_once(p, lo, hi):
    mid = (lo + hi) / 2
    if peval(p, mid) == 0:
        mid = (lo + 2 * hi) / 3
    if count_real_roots(p, lo, mid) == 1:
        return lo, mid
    return mid, hi


def _common_root(K: RealAlgebraicField, f, gj):
    """The unique common root theta of f(y) and gj(gamma - y), in K."""
    # run Euclid in K[y] on f and gj(gamma - y)
    fy = [K.of_rational(c) for c in f]
    gy = []
    pw = [K.one]
    acc = [K.zero]
    for ci in gj:
        if ci:
            t = [x * K.of_rational(ci) for x in pw]
            n = max(len(acc), len(t))
            acc = [(acc[i] if i < len(acc) else K.zero) + (t[i] if i < len(t) else K.zero)
                   for i in range(n)]
        pw = _kpoly_mul(K, pw, [K.gen, -K.one])
    gy = acc
    a, b = fy, gy
    while True:
        b = _kpoly_trim(b)
        if len(b) == 2:
            return -b[0] / b[1]
        if len(b) < 2:  # pragma: no cover
            raise RuntimeError("primitive element gcd degenerated")
        a, b = b, _kpoly_rem(K, a, b)


def _kpoly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _kpoly_mul(K, p, q):
    out = [K.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def _kpoly_rem(K, p, q):
    p = list(p)
    inv = K.one / q[-1]
    while len(p) >= len(q):
        c = p[-1] * inv
        d = len(p) - len(q)
        for i, b in enumerate(q):
            p[d + i] = p[d + i] - c * b
        p = _kpoly_trim(p)
        if not p:
            break
    return p


# ---------------------------------------------------------------------------
# fields containing prescribed cosines
# ---------------------------------------------------------------------------

def field_with_cosines(orders: Iterable[Optional[int]]):
    """A field containing 2cos(pi/m) for every bond order m in ``orders``.

    Orders may include None (an infinite bond, with the convention
    2cos(pi/inf) = 2).  Returns ``(field, values)`` where ``values[m]`` is
    the element 2cos(pi/m).
    """
    orders = sorted({m for m in orders}, key=lambda m: (m is None, m))
    irrational = [m for m in orders if m is not None and m >= 4]
    rational = [m for m in orders if m is None or m < 4]

    if not irrational:
        field = QQ
        vals = {}
        for m in rational:
            vals[m] = _rational_cos(field, m)
        return field, vals

    m0 = irrational[0]
    field = RealAlgebraicField(cos_minpoly(m0), *_isolate_near(cos_minpoly(m0), cos_value_float(m0)),
                               name=f"c{m0}")
    vals = {m0: field.gen}
    for m in irrational[1:]:
        field, old_gen, new_val = field.adjoin(cos_minpoly(m), cos_value_float(m), name="g")
        # re-express previously stored values through the embedding of the old generator
        vals = {k: _nf_rebase(field, old_gen, v) for k, v in vals.items()}
        vals[m] = new_val
    for m in rational:
        vals[m] = _rational_cos(field, m)
    return field, vals


def _nf_rebase(K: RealAlgebraicField, old_gen_img: NFElem, v: NFElem):
    """Value of v (a vector in the old generator) under old_gen -> old_gen_img."""
    out = K.zero
    pw = K.one
    for coord in v.c:
        if coord:
            out = out + pw * K.of_rational(coord)
        pw = pw * old_gen_img
    return out


def _rational_cos(field, m):
    table = {1: -2, 2: 0, 3: 1, None: 2}
    v = table[m]
    if field is QQ:
        return RAT(v)
    return field.of(v)
