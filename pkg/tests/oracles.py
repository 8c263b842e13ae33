"""Independent oracles used by the test suite.

Everything here is deliberately naive and avoids the code paths it checks:
the word problem oracle works purely with Tits braid moves on words, the
Bruhat oracle enumerates subwords, and the Kazhdan-Lusztig oracle solves the
bar-invariance equations over a Bruhat interval by direct linear algebra
over Q.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def braid_closure(word, m, cap=200000):
    """All words obtainable from ``word`` by braid moves (no deletions)."""
    out = {tuple(word)}
    frontier = [tuple(word)]
    while frontier:
        w = frontier.pop()
        n = len(w)
        for i in range(n - 1):
            s, t = w[i], w[i + 1]
            if s == t:
                continue
            mm = m[s][t]
            if mm is None or i + mm > n:
                continue
            if all(w[i + k] == (s if k % 2 == 0 else t) for k in range(mm)):
                new = w[:i] + tuple(t if k % 2 == 0 else s for k in range(mm)) + w[i + mm:]
                if new not in out:
                    if len(out) > cap:
                        raise RuntimeError("braid closure too large")
                    out.add(new)
                    frontier.append(new)
    return out


def tits_normal_form(word, m):
    """ShortLex-least reduced word of the element expressed by ``word``,
    computed only with Tits' solution to the word problem."""
    word = tuple(word)
    while True:
        closure = braid_closure(word, m)
        shorter = None
        for w in closure:
            for i in range(len(w) - 1):
                if w[i] == w[i + 1]:
                    shorter = w[:i] + w[i + 2:]
                    break
            if shorter is not None:
                break
        if shorter is None:
            return min(sorted(closure))
        word = shorter


def bruhat_leq_subword_oracle(yword, wword, m):
    """y <= w iff some reduced word of y is a subword of one reduced word of w."""
    y = tits_normal_form(yword, m)
    w = tits_normal_form(wword, m)
    k = len(y)
    for positions in combinations(range(len(w)), k):
        sub = tuple(w[i] for i in positions)
        if tits_normal_form(sub, m) == y and len(tits_normal_form(sub, m)) == k == len(sub):
            # the subword must itself be reduced and express y
            if sub == y or tits_normal_form(sub, m) == y:
                return True
    return False


def kl_basis_oracle(hecke, w):
    """The Kazhdan-Lusztig element of w by brute-force bar-invariance.

    Solves, over the Bruhat interval [e, w], for the unique element
    H_w + sum_{y<w} c_y H_y with bar-invariance and c_y in v Z[v].  Works
    with dense coefficient vectors over Q and uses only ``hecke.bar`` and
    standard-basis arithmetic (not the KL recursion).
    """
    from heckecat.laurent import Laurent

    sys = hecke.system
    interval = sys.bruhat_interval(w)
    below = [y for y in interval if y != w]
    # unknowns: coefficient of v^k in c_y for 1 <= k <= l(w)-l(y)
    unknowns = []
    for y in below:
        for k in range(1, w.length - y.length + 1):
            unknowns.append((y, k))
    # bar(H) - H must vanish; expand bar of each basis contribution
    # row index: (element, exponent); build sparse rows per unknown plus constant
    def expand(elt_coeffs):
        # elt_coeffs: dict Element -> Laurent; return dict (Element, exp) -> Fraction
        out = {}
        for el, pol in elt_coeffs.items():
            for e, a in pol.c.items():
                out[(el, e)] = out.get((el, e), 0) + a
        return out

    bar_h = {y: hecke.bar(hecke.standard(y)) for y in interval}

    cols = []
    for (y, k) in unknowns:
        # contribution of c_{y,k}: v^k H_y  - bar: v^-k bar(H_y)
        vec = {}
        for el, pol in bar_h[y].items():
            for e, a in pol.c.items():
                vec[(el, e - k)] = vec.get((el, e - k), 0) + a
        vec[(y, k)] = vec.get((y, k), 0) - 1
        cols.append(vec)
    const = {}
    for el, pol in bar_h[w].items():
        for e, a in pol.c.items():
            const[(el, e)] = const.get((el, e), 0) + a
    const[(w, 0)] = const.get((w, 0), 0) - 1

    rows = sorted(set().union(const, *cols)) if cols else sorted(const)
    A = [[Fraction(cols[j].get(r, 0)) for j in range(len(cols))] for r in rows]
    b = [Fraction(-const.get(r, 0)) for r in rows]

    sol = _solve_unique(A, b)
    out = {w: Laurent({0: 1})}
    for (y, k), val in zip(unknowns, sol):
        assert val.denominator == 1
        if val:
            out.setdefault(y, Laurent())
        if val:
            out[y] = out[y] + Laurent({k: int(val)})
    return {el: pol for el, pol in out.items() if pol}


def _solve_unique(A, b):
    """Solve A x = b, requiring a unique solution."""
    if not A:
        return []
    rows, cols = len(A), len(A[0])
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    piv_of_col = {}
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv_of_col[c] = r
        r += 1
    for i in range(r, rows):
        if M[i][cols]:
            raise RuntimeError("inconsistent system")
    if len(piv_of_col) != cols:
        raise RuntimeError("solution not unique")
    return [M[piv_of_col[c]][cols] for c in range(cols)]
