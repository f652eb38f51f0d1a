"""Independent reference computations used by the tests.

Nothing here goes through the library's Net or contraction code: these are
the slow textbook definitions, read straight off the PD arcs.
"""
import itertools
from fractions import Fraction

from lbk.polynomial import LaurentPolynomial
from lbk.stringlink import BraidWord, closed_braid_with_site


def signs(D):
    """+1 when the over-strand runs from slot 4 to slot 2.

    Each consecutive arc pair (x, y) of a component is matched to the
    crossing where the strand passes from x to y.  Under-passages are fixed
    by the slot convention; over-passages are matched by elimination.
    """
    owner_pairs = []
    for comp in D.components:
        arcs = list(comp.arcs)
        nxt = arcs[1:] + (arcs[:1] if comp.kind == "circle" else [])
        owner_pairs += list(zip(arcs, nxt))
    free = {c.id: c for c in D.crossings}
    over_dir = {}
    pending = []
    for x, y in owner_pairs:
        if not any(c.arcs[0] == x and c.arcs[2] == y for c in D.crossings):
            pending.append((x, y))
    while pending:
        progress = False
        for x, y in list(pending):
            cands = [c for c in free.values() if {c.arcs[1], c.arcs[3]} == {x, y} and x != y]
            if len(cands) == 1:
                c = cands[0]
                over_dir[c.id] = (x, y)
                del free[c.id]
                pending.remove((x, y))
                progress = True
        if not progress:
            # a two-arc loop lying over both its crossings: the two matchings
            # swap the signs of those crossings, so the writhe is unaffected
            x, y = pending[0]
            c = next(c for c in free.values() if {c.arcs[1], c.arcs[3]} == {x, y})
            over_dir[c.id] = (x, y)
            del free[c.id]
            pending.remove((x, y))
    return {c.id: (1 if over_dir[c.id][0] == c.arcs[3] else -1) for c in D.crossings}


def bracket_bruteforce(D):
    """Sum over all 2^c states of A^(#A - #B) d^(loops - 1)."""
    xs = list(D.crossings)
    free = sum(1 for comp in D.components if not comp.arcs)
    total = {}
    for state in itertools.product((0, 1), repeat=len(xs)):
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for c, s in zip(xs, state):
            a, b, cc, d = c.arcs
            if s == 0:
                union(a, b), union(cc, d)
            else:
                union(a, d), union(b, cc)
        labels = {a for c in xs for a in c.arcs}
        loops = len({find(a) for a in labels}) + free
        nA = state.count(0)
        nB = len(xs) - nA
        # d = -A^2 - A^-2, expanded term by term
        dpoly = {0: 1}
        for _ in range(loops - 1):
            new = {}
            for e, v in dpoly.items():
                new[e + 2] = new.get(e + 2, 0) - v
                new[e - 2] = new.get(e - 2, 0) - v
            dpoly = new
        for e, v in dpoly.items():
            k = e + nA - nB
            total[k] = total.get(k, 0) + v
    return LaurentPolynomial("A", total)


def jones_bruteforce(D):
    w = sum(signs(D).values())
    br = bracket_bruteforce(D)
    f = br * (LaurentPolynomial("A", {3: -1}) ** (-w))
    return LaurentPolynomial("t_half", {-k // 2: v for k, v in f.coeffs.items()})


def lk_bruteforce(D):
    owner = {}
    for k, comp in enumerate(D.components):
        for a in comp.arcs:
            owner[a] = k
    n = D.n_components
    M = [[Fraction(0)] * n for _ in range(n)]
    sg = signs(D)
    for c in D.crossings:
        u, o = owner[c.arcs[0]], owner[c.arcs[1]]
        if u != o:
            M[u][o] += Fraction(sg[c.id], 2)
            M[o][u] += Fraction(sg[c.id], 2)
    return [[int(x) for x in row] for row in M]


def closed_braid(m, letters):
    """Closure of a braid word, or None when some strand has no crossing."""
    try:
        return closed_braid_with_site(BraidWord(m, tuple(letters)))[0]
    except ValueError:
        return None
