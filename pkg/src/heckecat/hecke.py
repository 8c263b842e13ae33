"""The Hecke algebra of a Coxeter system over Z[v, v^-1].

Conventions (Soergel's normalization): the standard basis (H_w) satisfies

    H_x * H_s = H_{xs}                      if xs > x,
    H_x * H_s = H_{xs} + (v^-1 - v) H_x     if xs < x,

so H_s^2 = H_e + (v^-1 - v) H_s, H_s is invertible with inverse H_s + v - v^-1,
and the bar involution (the ring automorphism with bar(v) = v^-1 and
bar(H_w) = (H_{w^-1})^-1) fixes underline(H_s) = H_s + v.  The
Kazhdan-Lusztig element underline(H_w) is the unique bar-invariant element in
H_w + sum_{y<w} v Z[v] H_y; its coordinates are the polynomials h_{y,w}.

Bott-Samelson elements are products underline(H_{s_1}) ... underline(H_{s_n});
their standard coordinates p^x are nonnegative and supported on x <= pi(word).
The pairing is the Z[v,v^-1]-bilinear form with <H_x, H_y> = delta_{x,y}.
"""

from __future__ import annotations

from typing import Iterable

from .coxeter import CoxeterSystem, Element
from .laurent import Laurent, ONE, V, VINV


class HeckeElt:
    """A finitely supported Z[v,v^-1]-combination of standard basis elements."""

    __slots__ = ("alg", "c")

    def __init__(self, alg: "HeckeAlgebra", coeffs=None):
        self.alg = alg
        self.c = {w: p for w, p in (coeffs or {}).items() if p}

    def __add__(self, o: "HeckeElt") -> "HeckeElt":
        out = dict(self.c)
        for w, p in o.c.items():
            q = out.get(w)
            q = p if q is None else q + p
            if q:
                out[w] = q
            else:
                out.pop(w, None)
        return HeckeElt(self.alg, out)

    def __neg__(self):
        return HeckeElt(self.alg, {w: -p for w, p in self.c.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, p: Laurent) -> "HeckeElt":
        return HeckeElt(self.alg, {w: q * p for w, q in self.c.items()})

    def __mul__(self, o: "HeckeElt") -> "HeckeElt":
        return self.alg.multiply(self, o)

    def coeff(self, w: Element) -> Laurent:
        return self.c.get(w, Laurent())

    def support(self):
        return set(self.c)

    def __eq__(self, o):
        return isinstance(o, HeckeElt) and self.alg is o.alg and self.c == o.c

    def __hash__(self):
        return hash(frozenset((w, p) for w, p in self.c.items()))

    def __bool__(self):
        return bool(self.c)

    def items(self):
        return self.c.items()

    def to_json(self) -> dict:
        sys = self.alg.system
        return {sys.word_label(w.word): p.to_json() for w, p in sorted(self.c.items())}

    def __repr__(self):
        if not self.c:
            return "0"
        return " + ".join(f"({p})H[{w}]" for w, p in sorted(self.c.items()))


class HeckeAlgebra:
    """Hecke algebra attached to a Coxeter system, with memoized KL data."""

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self._bar_h: dict[Element, HeckeElt] = {}
        self._kl: dict[Element, HeckeElt] = {}

    # -- basic elements ---------------------------------------------------

    def zero(self) -> HeckeElt:
        return HeckeElt(self, {})

    def unit(self) -> HeckeElt:
        return HeckeElt(self, {self.system.identity: ONE})

    def standard(self, w: Element) -> HeckeElt:
        return HeckeElt(self, {w: ONE})

    def kl_gen(self, s: int) -> HeckeElt:
        """underline(H_s) = H_s + v."""
        return HeckeElt(self, {self.system.generator(s): ONE, self.system.identity: V})

    # -- multiplication -----------------------------------------------------

    def _mul_gen(self, a: HeckeElt, s: int) -> HeckeElt:
        W = self.system
        gen = W.generator(s)
        out: dict[Element, Laurent] = {}
        for x, c in a.c.items():
            xs = W.multiply(x, gen)
            if xs.length > x.length:
                q = out.get(xs)
                q = c if q is None else q + c
                if q:
                    out[xs] = q
                else:
                    out.pop(xs, None)
            else:
                q = out.get(xs)
                q = c if q is None else q + c
                if q:
                    out[xs] = q
                else:
                    out.pop(xs, None)
                extra = c * (VINV - V)
                q = out.get(x)
                q = extra if q is None else q + extra
                if q:
                    out[x] = q
                else:
                    out.pop(x, None)
        return HeckeElt(self, out)

    def multiply(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        out = self.zero()
        for w, c in b.c.items():
            term = a.scale(c)
            for s in w.word:
                term = self._mul_gen(term, s)
            out = out + term
        return out

    # -- bar involution -----------------------------------------------------

    def _bar_standard(self, w: Element) -> HeckeElt:
        cached = self._bar_h.get(w)
        if cached is not None:
            return cached
        # bar(H_s) = H_s^{-1} with v replaced: H_s + v - v^{-1}
        out = self.unit()
        for s in w.word:
            g = HeckeElt(self, {
                self.system.generator(s): ONE,
                self.system.identity: V - VINV,
            })
            out = self.multiply(out, g)
        self._bar_h[w] = out
        return out

    def bar(self, a: HeckeElt) -> HeckeElt:
        out = self.zero()
        for w, c in a.c.items():
            out = out + self._bar_standard(w).scale(c.bar())
        return out

    # -- Kazhdan-Lusztig basis ------------------------------------------------

    def kl_element(self, w: Element, cap: int = 100000) -> HeckeElt:
        """The bar-invariant element H_w + sum_{y<w} h_{y,w} H_y, h in vZ[v]."""
        cached = self._kl.get(w)
        if cached is not None:
            return cached
        if w.length == 0:
            res = self.unit()
        else:
            s = w.word[0]  # smallest left descent: first letter of normal form
            sw = self.system.element(w.word[1:])
            res = self.multiply(self.kl_gen(s), self.kl_element(sw, cap))
            if len(res.c) > cap:
                raise ValueError("Bruhat interval cap exceeded")
            # strip off lower KL terms so that all lower coefficients lie in vZ[v]
            for y in sorted((y for y in res.c if y != w), reverse=True):
                c = res.c.get(y)
                if c is None or c.in_v_times_positive_part():
                    continue
                # the bar-invariant correction with the same non-positive part
                corr = Laurent({0: c.coeff(0)})
                for e, a in c.c.items():
                    if e < 0:
                        corr = corr + Laurent({e: a, -e: a})
                res = res - self.kl_element(y, cap).scale(corr)
        self._kl[w] = res
        return res

    def kl_polynomial(self, y: Element, w: Element) -> Laurent:
        """h_{y,w}: the coefficient of H_y in underline(H_w)."""
        return self.kl_element(w).coeff(y)

    # -- Bott-Samelson elements ----------------------------------------------

    def bott_samelson(self, word: Iterable[int]) -> HeckeElt:
        out = self.unit()
        for s in word:
            out = self.multiply(out, self.kl_gen(s))
        return out

    def expand_p(self, word: Iterable[int]) -> dict:
        """The coordinates p^x of the Bott-Samelson element of ``word``."""
        return dict(self.bott_samelson(word).c)

    # -- pairing ---------------------------------------------------------------

    def pairing(self, a: HeckeElt, b: HeckeElt) -> Laurent:
        """Bilinear form with <H_x, H_y> = delta_{x,y}."""
        out = Laurent()
        for w, c in a.c.items():
            d = b.c.get(w)
            if d is not None:
                out = out + c * d
        return out
