"""Graded polynomial algebra of a realization and its localization.

R = Sym(V*) with V* placed in degree 2, presented concretely on a basis of
V*: polynomials are dicts {exponent tuple: field element}.  The localized
ring Q inverts the root images w(alpha_s); its elements are kept as a
polynomial numerator together with a multiset of *registered linear forms*
in the denominator.  Registration identifies proportional forms (all root
images of a fixed reflection are proportional), so reduction never needs
multivariate gcd: it is repeated exact division by linear forms.

Degrees in this module are the internal polynomial degrees; the graded
degree of a homogeneous polynomial is twice that.
"""

from __future__ import annotations

from typing import Optional


class PolyRing:
    """Polynomial ring over an exact field on ``nvars`` degree-2 generators."""

    def __init__(self, field, nvars: int, names: Optional[list] = None):
        self.field = field
        self.n = nvars
        self.names = list(names) if names else [f"x{i}" for i in range(nvars)]
        self.zero = Poly(self, {})
        self.one = Poly(self, {(0,) * nvars: field.one})
        # registered linear forms available as denominators
        self.forms: list[Poly] = []

    def var(self, i: int) -> "Poly":
        exp = tuple(1 if j == i else 0 for j in range(self.n))
        return Poly(self, {exp: self.field.one})

    def linear(self, coords) -> "Poly":
        """The linear form sum_i coords[i] * x_i."""
        out = {}
        for i, c in enumerate(coords):
            if c:
                out[tuple(1 if j == i else 0 for j in range(self.n))] = c
        return Poly(self, out)

    def constant(self, c) -> "Poly":
        return Poly(self, {(0,) * self.n: c} if c else {})

    def monomials(self, degree: int) -> list:
        """All exponent tuples of total degree ``degree``."""
        if degree < 0:
            return []
        out = []

        def rec(prefix, left, pos):
            if pos == self.n - 1:
                out.append(tuple(prefix + [left]))
                return
            for k in range(left + 1):
                rec(prefix + [k], left - k, pos + 1)

        if self.n == 0:
            return [()] if degree == 0 else []
        rec([], degree, 0)
        return out

    def register_form(self, form: "Poly") -> int:
        """Register a linear form as an allowed denominator; returns its id."""
        self.forms.append(form)
        return len(self.forms) - 1

    def frac(self, num: "Poly", den: Optional[dict] = None) -> "Frac":
        return Frac(self, num, dict(den or {}))

    def __repr__(self):
        return f"PolyRing({self.field}, vars={'.'.join(self.names)})"


class Poly:
    """A polynomial; immutable by convention."""

    __slots__ = ("ring", "c")

    def __init__(self, ring: PolyRing, coeffs: dict):
        self.ring = ring
        self.c = {e: a for e, a in coeffs.items() if a}

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, o):
        return isinstance(o, Poly) and self.c == o.c and self.ring is o.ring

    __hash__ = None

    def __add__(self, o: "Poly") -> "Poly":
        out = dict(self.c)
        for e, a in o.c.items():
            b = out.get(e)
            b = a if b is None else b + a
            if b:
                out[e] = b
            else:
                out.pop(e, None)
        r = Poly.__new__(Poly)
        r.ring, r.c = self.ring, out
        return r

    def __neg__(self) -> "Poly":
        r = Poly.__new__(Poly)
        r.ring = self.ring
        r.c = {e: -a for e, a in self.c.items()}
        return r

    def __sub__(self, o: "Poly") -> "Poly":
        return self + (-o)

    def __mul__(self, o: "Poly") -> "Poly":
        out: dict = {}
        for e1, a1 in self.c.items():
            for e2, a2 in o.c.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                b = out.get(e)
                b = a1 * a2 if b is None else b + a1 * a2
                if b:
                    out[e] = b
                else:
                    out.pop(e, None)
        r = Poly.__new__(Poly)
        r.ring, r.c = self.ring, out
        return r

    def scale(self, a) -> "Poly":
        if not a:
            return self.ring.zero
        r = Poly.__new__(Poly)
        r.ring = self.ring
        r.c = {e: a * b for e, b in self.c.items()}
        return r

    def degree(self) -> Optional[int]:
        """Total degree (None for the zero polynomial)."""
        return max(sum(e) for e in self.c) if self.c else None

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.c}
        return len(degs) <= 1

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {e: a for e, a in self.c.items() if sum(e) == d})

    def constant_term(self):
        return self.c.get((0,) * self.ring.n, self.ring.field.zero)

    def substitute(self, images: list) -> "Poly":
        """Ring map x_i -> images[i] (a list of Polys)."""
        ring = self.ring
        out = ring.zero
        powers: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                if k == 0:
                    powers[key] = ring.one
                else:
                    powers[key] = power(i, k - 1) * images[i]
            return powers[key]

        for e, a in self.c.items():
            term = ring.constant(a)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def exact_div(self, d: "Poly") -> "Poly":
        """Exact division (raises ValueError when the remainder is nonzero)."""
        if not d:
            raise ZeroDivisionError("polynomial division by zero")
        lead = max(d.c)  # lex-largest exponent
        lead_inv = self.ring.field.one / d.c[lead]
        rem = dict(self.c)
        quo: dict = {}
        while rem:
            e = max(rem)
            if any(x < y for x, y in zip(e, lead)):
                raise ValueError("inexact polynomial division")
            q = tuple(x - y for x, y in zip(e, lead))
            coef = rem[e] * lead_inv
            quo[q] = coef
            for e2, a2 in d.c.items():
                e3 = tuple(x + y for x, y in zip(q, e2))
                b = rem.get(e3)
                b = -(coef * a2) if b is None else b - coef * a2
                if b:
                    rem[e3] = b
                else:
                    rem.pop(e3, None)
        return Poly(self.ring, quo)

    def divides(self, other: "Poly") -> bool:
        try:
            other.exact_div(self)
            return True
        except ValueError:
            return False

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c, reverse=True):
            a = self.c[e]
            mono = "*".join(
                f"{self.ring.names[i]}^{k}" if k > 1 else self.ring.names[i]
                for i, k in enumerate(e) if k
            )
            parts.append(f"{a}" if not mono else f"({a})*{mono}")
        return " + ".join(parts)


class Frac:
    """num / prod(forms[i]^den[i]): the shape of every element of Q we meet."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: PolyRing, num: Poly, den: dict):
        self.ring = ring
        self.num = num
        self.den = {i: m for i, m in den.items() if m} if num else {}

    @staticmethod
    def of_poly(p: Poly) -> "Frac":
        return Frac(p.ring, p, {})

    def __bool__(self):
        return bool(self.num)

    def __add__(self, o: "Frac") -> "Frac":
        if not self.num:
            return o
        if not o.num:
            return self
        den = dict(self.den)
        for i, m in o.den.items():
            den[i] = max(den.get(i, 0), m)
        a = self.num * self._pad(den, self.den)
        b = o.num * o._pad(den, o.den)
        return Frac(self.ring, a + b, den)

    def _pad(self, target: dict, mine: dict) -> Poly:
        extra = self.ring.one
        for i, m in target.items():
            k = m - mine.get(i, 0)
            for _ in range(k):
                extra = extra * self.ring.forms[i]
        return extra

    def __neg__(self):
        return Frac(self.ring, -self.num, self.den)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o: "Frac") -> "Frac":
        if not self.num or not o.num:
            return Frac(self.ring, self.ring.zero, {})
        den = dict(self.den)
        for i, m in o.den.items():
            den[i] = den.get(i, 0) + m
        return Frac(self.ring, self.num * o.num, den)

    def mul_poly(self, p: Poly) -> "Frac":
        return Frac(self.ring, self.num * p, self.den)

    def scale(self, a) -> "Frac":
        return Frac(self.ring, self.num.scale(a), self.den)

    def reduce(self) -> "Frac":
        """Cancel denominator forms dividing the numerator."""
        if not self.num:
            return Frac(self.ring, self.ring.zero, {})
        num = self.num
        den = dict(self.den)
        for i in list(den):
            f = self.ring.forms[i]
            while den.get(i, 0) > 0:
                try:
                    num = num.exact_div(f)
                except ValueError:
                    break
                den[i] -= 1
                if not den[i]:
                    del den[i]
        return Frac(self.ring, num, den)

    def as_poly(self) -> Poly:
        """The underlying polynomial, when the reduced denominator is trivial."""
        r = self.reduce()
        if r.den:
            raise ValueError("fraction is not polynomial")
        return r.num

    def is_poly(self) -> bool:
        return not self.reduce().den

    def denominator_poly(self) -> Poly:
        out = self.ring.one
        for i, m in self.den.items():
            for _ in range(m):
                out = out * self.ring.forms[i]
        return out

    def __eq__(self, o):
        if not isinstance(o, Frac):
            return NotImplemented
        return not (self - o).num

    __hash__ = None

    def degree(self) -> Optional[int]:
        """Graded degree (numerator degree minus denominator degree) * 2."""
        if not self.num:
            return None
        return 2 * (self.num.degree() - sum(self.den.values()))

    def __repr__(self):
        if not self.den:
            return repr(self.num)
        den = "*".join(
            f"({self.ring.forms[i]})^{m}" if m > 1 else f"({self.ring.forms[i]})"
            for i, m in self.den.items()
        )
        return f"({self.num}) / {den}"


def lcd_clear(fracs: list) -> tuple:
    """Common denominator for a list of Fracs: returns (polys, den_dict)."""
    if not fracs:
        return [], {}
    ring = fracs[0].ring
    den: dict = {}
    for f in fracs:
        for i, m in f.den.items():
            den[i] = max(den.get(i, 0), m)
    polys = []
    for f in fracs:
        polys.append(f.num * f._pad(den, f.den))
    return polys, den
