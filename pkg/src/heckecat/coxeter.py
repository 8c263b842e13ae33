"""Coxeter system combinatorics: elements, length, Bruhat order, expressions.

The word problem is decided through the geometric reflection representation
over an exact ordered real-algebraic field containing 2cos(pi/m) for every
bond order m of the system.  A group element is stored by its canonical
normal form, the ShortLex-least reduced word; descent tests are root-sign
tests in the reflection representation, so arbitrary bond orders (including
infinite ones) are handled uniformly.

Generators are indexed 0..rank-1; expressions ("words") are tuples of
indices.  Bond order infinity is represented by ``None`` inside this module
(the CLI accepts the string ``"inf"``).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from .fields import field_with_cosines

Expression = tuple  # a word in the generators: tuple of indices


class ReflectionTable:
    """Exact matrices of the generators acting on the reflection representation.

    The representation has basis (e_s) and bilinear form
    B(e_s, e_t) = -cos(pi/m_st); the generator s acts by
    e_t -> e_t + 2cos(pi/m_st) e_s (t != s) and e_s -> -e_s.
    """

    def __init__(self, system: "CoxeterSystem"):
        self.system = system
        orders = {system.m[i][j] for i in range(system.rank) for j in range(i + 1, system.rank)}
        self.field, self.cosines = field_with_cosines(orders | {1})
        cosines = self.cosines
        K = self.field
        n = system.rank
        self.identity = tuple(
            tuple(K.one if i == j else K.zero for j in range(n)) for i in range(n)
        )
        mats = []
        for s in range(n):
            # columns are the images sigma_s(e_t) = e_t + 2cos(pi/m_st) e_s
            cols = []
            for t in range(n):
                col = [K.zero] * n
                if t == s:
                    col[s] = -K.one
                else:
                    col[t] = K.one
                    col[s] = cosines[system.m[s][t]]
                cols.append(col)
            mats.append(tuple(tuple(cols[t][i] for t in range(n)) for i in range(n)))
        self.generator_matrices = tuple(mats)

    def mat_mul(self, A, B):
        n = self.system.rank
        K = self.field
        return tuple(
            tuple(
                _dot(K, A[i], [B[k][j] for k in range(n)])
                for j in range(n)
            )
            for i in range(n)
        )

    def column_nonpositive(self, M, s: int) -> bool:
        """True iff column s of M has all entries <= 0."""
        sgn = self.field.sign
        return all(sgn(M[i][s]) <= 0 for i in range(self.system.rank))


def _dot(K, row, col):
    acc = K.zero
    for a, b in zip(row, col):
        if a and b:
            acc = acc + a * b
    return acc


class Element:
    """A group element in ShortLex-least reduced normal form (immutable)."""

    __slots__ = ("system", "word", "_mat", "_matinv")

    def __init__(self, system: "CoxeterSystem", word: tuple, mat, matinv):
        self.system = system
        self.word = word
        self._mat = mat
        self._matinv = matinv

    @property
    def length(self) -> int:
        return len(self.word)

    def __mul__(self, other: "Element") -> "Element":
        return self.system.multiply(self, other)

    def inverse(self) -> "Element":
        return self.system.element(tuple(reversed(self.word)))

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and other.system is self.system
            and other.word == self.word
        )

    def __hash__(self):
        return hash(self.word)

    def __lt__(self, other):
        return (self.length, self.word) < (other.length, other.word)

    def __repr__(self):
        if not self.word:
            return "e"
        return "".join(self.system.labels[s] for s in self.word)


class CoxeterSystem:
    """A Coxeter system given by its Coxeter matrix.

    ``m`` is symmetric with diagonal 1 and off-diagonal entries in
    {2, 3, ...} or None (infinity).
    """

    def __init__(self, m: Sequence[Sequence[Optional[int]]], labels: Optional[Sequence[str]] = None):
        self.rank = len(m)
        self.m = tuple(tuple(row) for row in m)
        if labels is None:
            base = "stuvwxyzabcdefgh"
            labels = [base[i] if i < len(base) else f"s{i}" for i in range(self.rank)]
        if len(labels) != self.rank:
            raise ValueError("label count must equal the rank")
        self.labels = tuple(labels)
        self._check_matrix()
        self.refl = ReflectionTable(self)
        self._elems: dict[tuple, Element] = {}
        self._bruhat: dict[tuple, bool] = {}
        self._all_elements: Optional[list] = None
        self.identity = self._intern((), self.refl.identity, self.refl.identity)

    def _check_matrix(self):
        for i in range(self.rank):
            if self.m[i][i] != 1:
                raise ValueError("Coxeter matrix must have 1 on the diagonal")
            for j in range(self.rank):
                if self.m[i][j] != self.m[j][i]:
                    raise ValueError("Coxeter matrix must be symmetric")
                if i != j and self.m[i][j] is not None and self.m[i][j] < 2:
                    raise ValueError("off-diagonal entries must be >= 2 or inf")

    # -- elements ---------------------------------------------------------

    def _intern(self, word, mat, matinv) -> Element:
        el = self._elems.get(word)
        if el is None:
            el = Element(self, word, mat, matinv)
            self._elems[word] = el
        return el

    def generator(self, s: int) -> Element:
        g = self.refl.generator_matrices[s]
        return self._intern((s,), g, g)

    def element(self, word: Iterable[int]) -> Element:
        """The element expressed by a word (any word, not necessarily reduced)."""
        word = tuple(word)
        for s in word:
            if not 0 <= s < self.rank:
                raise ValueError(f"generator index {s} out of range")
        el = self._elems.get(word)
        if el is not None:
            return el
        R = self.refl
        mat, matinv = R.identity, R.identity
        for s in word:
            g = R.generator_matrices[s]
            mat = R.mat_mul(mat, g)
            matinv = R.mat_mul(g, matinv)
        return self._element_from_matrices(mat, matinv)

    def _element_from_matrices(self, mat, matinv) -> Element:
        R = self.refl
        letters = []
        m, mi = mat, matinv
        while m != R.identity:
            s = next(
                t for t in range(self.rank) if R.column_nonpositive(mi, t)
            )
            letters.append(s)
            m = R.mat_mul(R.generator_matrices[s], m)
            mi = R.mat_mul(mi, R.generator_matrices[s])
        return self._intern(tuple(letters), mat, matinv)

    def pi(self, word: Iterable[int]) -> Element:
        return self.element(word)

    def multiply(self, a: Element, b: Element) -> Element:
        if not a.word:
            return b
        if not b.word:
            return a
        key = a.word + (-1,) + b.word
        el = self._elems.get(key)
        if el is not None:
            return el
        R = self.refl
        mat = R.mat_mul(a._mat, b._mat)
        matinv = R.mat_mul(b._matinv, a._matinv)
        el = self._element_from_matrices(mat, matinv)
        self._elems[key] = el
        return el

    # -- descents and Bruhat order ----------------------------------------

    def left_descents(self, w: Element) -> set:
        R = self.refl
        return {s for s in range(self.rank) if R.column_nonpositive(w._matinv, s)}

    def right_descents(self, w: Element) -> set:
        R = self.refl
        return {s for s in range(self.rank) if R.column_nonpositive(w._mat, s)}

    def descents(self, w: Element):
        return self.left_descents(w), self.right_descents(w)

    def bruhat_leq(self, y: Element, w: Element) -> bool:
        """The Bruhat order, via the subword property along w's normal form."""
        if y.length > w.length:
            return False
        if y is w or y == w:
            return True
        key = (y.word, w.word)
        cached = self._bruhat.get(key)
        if cached is not None:
            return cached
        s = w.word[0]
        sw = self.element(w.word[1:])
        if s in self.left_descents(y):
            res = self.bruhat_leq(self.multiply(self.generator(s), y), sw)
        else:
            res = self.bruhat_leq(y, sw)
        self._bruhat[key] = res
        return res

    def bruhat_interval(self, w: Element) -> list:
        """All y <= w, sorted by (length, word)."""
        return sorted(
            y for y in self.ball(w.length) if self.bruhat_leq(y, w)
        )

    # -- enumeration --------------------------------------------------------

    def ball(self, radius: int) -> list:
        """All elements of length <= radius, sorted by (length, word)."""
        seen = {self.identity}
        frontier = [self.identity]
        for _ in range(radius):
            new = []
            for w in frontier:
                for s in range(self.rank):
                    ws = self.multiply(w, self.generator(s))
                    if ws.length > w.length and ws not in seen:
                        seen.add(ws)
                        new.append(ws)
            if not new:
                break
            frontier = new
        return sorted(seen)

    def all_elements(self, cap: int = 100000) -> list:
        """Every element of a finite group (raises if the cap is exceeded)."""
        if self._all_elements is not None:
            return self._all_elements
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            new = []
            for w in frontier:
                for s in range(self.rank):
                    ws = self.multiply(w, self.generator(s))
                    if ws not in seen:
                        seen.add(ws)
                        new.append(ws)
                        if len(seen) > cap:
                            raise ValueError(f"group has more than {cap} elements")
            frontier = new
        self._all_elements = sorted(seen)
        return self._all_elements

    def order(self, cap: int = 100000) -> int:
        return len(self.all_elements(cap))

    def longest_element(self, cap: int = 100000) -> Element:
        w = self.identity
        while True:
            asc = [s for s in range(self.rank) if s not in self.left_descents(w)]
            if not asc:
                return w
            w = self.multiply(self.generator(asc[0]), w)
            if w.length > cap:
                raise ValueError("no longest element within the cap (infinite group?)")

    # -- expressions ----------------------------------------------------------

    def reduced_words(self, w: Element, cap: int = 10 ** 6) -> set:
        """All reduced expressions of w, by closing under braid moves."""
        out = {w.word}
        frontier = [w.word]
        while frontier:
            word = frontier.pop()
            for new in self._braid_neighbors(word):
                if new not in out:
                    if len(out) >= cap:
                        raise ValueError(f"more than {cap} reduced words")
                    out.add(new)
                    frontier.append(new)
        return out

    def _braid_neighbors(self, word):
        n = len(word)
        for i in range(n - 1):
            s, t = word[i], word[i + 1]
            if s == t:
                continue
            mm = self.m[s][t]
            if mm is None or i + mm > n:
                continue
            ok = True
            for k in range(mm):
                if word[i + k] != (s if k % 2 == 0 else t):
                    ok = False
                    break
            if ok:
                flipped = tuple(t if k % 2 == 0 else s for k in range(mm))
                yield word[:i] + flipped + word[i + mm:]

    def word_label(self, word) -> str:
        return ",".join(self.labels[s] for s in word)

    def parse_word(self, text: str) -> tuple:
        text = text.strip()
        if not text:
            return ()
        idx = {lab: i for i, lab in enumerate(self.labels)}
        out = []
        for part in text.split(","):
            part = part.strip()
            if part not in idx:
                raise ValueError(f"unknown generator label {part!r}")
            out.append(idx[part])
        return tuple(out)

    def __repr__(self):
        return f"CoxeterSystem(rank={self.rank}, labels={'/'.join(self.labels)})"


def subexpressions(word: Sequence[int], cap: int = 2 ** 22) -> list:
    """All 2^len(word) subwords obtained by deleting letters (with multiplicity)."""
    word = tuple(word)
    if 2 ** len(word) > cap:
        raise ValueError("too many subexpressions")
    out = []
    for mask in range(2 ** len(word)):
        out.append(tuple(word[i] for i in range(len(word)) if mask >> i & 1))
    return out


def grouped_subexpressions(system: CoxeterSystem, word: Sequence[int]) -> dict:
    """Subwords grouped by the element they express; values are lists of words."""
    groups: dict[Element, list] = {}
    for sub in subexpressions(word):
        groups.setdefault(system.element(sub), []).append(sub)
    return groups


# -- ready-made Coxeter matrices ---------------------------------------------


def coxeter_matrix_a(n: int):
    """Type A_n (symmetric group S_{n+1})."""
    return [
        [1 if i == j else (3 if abs(i - j) == 1 else 2) for j in range(n)]
        for i in range(n)
    ]


def coxeter_matrix_i2(m) -> list:
    """Dihedral type I2(m); m may be None for the infinite dihedral group."""
    return [[1, m], [m, 1]]


def coxeter_matrix_b(n: int):
    """Type B_n."""
    mat = coxeter_matrix_a(n)
    if n >= 2:
        mat[0][1] = mat[1][0] = 4
    return mat


def coxeter_matrix_h3():
    return [[1, 5, 2], [5, 1, 3], [2, 3, 1]]
