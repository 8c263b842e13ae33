"""Laurent polynomials in v over Z, the coefficient ring of the Hecke algebra.

Coefficients are arbitrary-precision Python ints.  The distinguished ring
involution ``bar`` sends v to 1/v.  Graded ranks of graded free modules are
Laurent polynomials with nonnegative coefficients; ``is_graded_rank`` checks
that convention where a contract requires it.
"""

from __future__ import annotations


class Laurent:
    """An element of Z[v, v^-1], stored as {exponent: nonzero int}."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            self.c = {}
        else:
            self.c = {e: int(a) for e, a in coeffs.items() if a}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def term(coeff: int, exp: int = 0) -> "Laurent":
        return Laurent({exp: coeff} if coeff else {})

    @staticmethod
    def of(n: int) -> "Laurent":
        return Laurent.term(n, 0)

    # -- ring operations --------------------------------------------------

    def __add__(self, o: "Laurent") -> "Laurent":
        out = dict(self.c)
        for e, a in o.c.items():
            b = out.get(e, 0) + a
            if b:
                out[e] = b
            else:
                out.pop(e, None)
        r = Laurent.__new__(Laurent)
        r.c = out
        return r

    def __neg__(self) -> "Laurent":
        r = Laurent.__new__(Laurent)
        r.c = {e: -a for e, a in self.c.items()}
        return r

    def __sub__(self, o: "Laurent") -> "Laurent":
        return self + (-o)

    def __mul__(self, o: "Laurent") -> "Laurent":
        out: dict[int, int] = {}
        for e1, a1 in self.c.items():
            for e2, a2 in o.c.items():
                e = e1 + e2
                b = out.get(e, 0) + a1 * a2
                if b:
                    out[e] = b
                else:
                    out.pop(e, None)
        r = Laurent.__new__(Laurent)
        r.c = out
        return r

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            raise ValueError("negative powers of general Laurent polynomials")
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, n: int) -> "Laurent":
        return Laurent({e: a * n for e, a in self.c.items()})

    def shift(self, n: int) -> "Laurent":
        """Multiplication by v^n."""
        r = Laurent.__new__(Laurent)
        r.c = {e + n: a for e, a in self.c.items()}
        return r

    def bar(self) -> "Laurent":
        """The involution v -> v^-1."""
        r = Laurent.__new__(Laurent)
        r.c = {-e: a for e, a in self.c.items()}
        return r

    # -- inspection -------------------------------------------------------

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, o):
        return isinstance(o, Laurent) and self.c == o.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def coeff(self, e: int) -> int:
        return self.c.get(e, 0)

    def degree(self):
        return max(self.c) if self.c else None

    def valuation(self):
        return min(self.c) if self.c else None

    def at_one(self) -> int:
        return sum(self.c.values())

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def in_v_times_positive_part(self) -> bool:
        """True iff the polynomial lies in v*Z[v]."""
        return all(e >= 1 for e in self.c)

    # -- presentation -------------------------------------------------------

    def to_json(self) -> dict:
        return {str(e): self.c[e] for e in sorted(self.c)}

    @staticmethod
    def from_json(d: dict) -> "Laurent":
        return Laurent({int(e): int(a) for e, a in d.items()})

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            a = self.c[e]
            if e == 0:
                parts.append(f"{a}")
            else:
                va = "v" if e == 1 else ("v^-1" if e == -1 else f"v^{e}")
                if a == 1:
                    parts.append(va)
                elif a == -1:
                    parts.append(f"-{va}")
                else:
                    parts.append(f"{a}*{va}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


ZERO = Laurent()
ONE = Laurent({0: 1})
V = Laurent({1: 1})
VINV = Laurent({-1: 1})


def is_graded_rank(p: Laurent) -> bool:
    """Graded ranks have nonnegative coefficients."""
    return all(a >= 0 for a in p.c.values())


def grk_bar(p: Laurent) -> Laurent:
    """Grading flip on graded ranks (degree n component moved to -n)."""
    if not is_graded_rank(p):
        raise ValueError("not a graded rank (negative coefficient)")
    return p.bar()


def hilbert_coeff(dim: int, d: int) -> int:
    """Coefficient of v^d in (1 - v^2)^{-dim}, the Hilbert series of a
    polynomial ring on ``dim`` generators of degree 2."""
    if d < 0 or d % 2:
        return 0
    k = d // 2
    out = 1
    for i in range(1, dim):
        out = out * (k + i) // i
    return out if dim > 0 else (1 if d == 0 else 0)


def series_coeff(p: Laurent, dim: int, d: int) -> int:
    """Coefficient of v^d in p(v) * (1 - v^2)^{-dim}."""
    return sum(a * hilbert_coeff(dim, d - e) for e, a in p.c.items())
