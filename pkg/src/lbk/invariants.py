"""Exact link invariants: linking numbers, Kauffman bracket / Jones, Conway, v2, v3."""
from __future__ import annotations

from fractions import Fraction

from .diagram import STRING, LinkDiagram
from .moves import r1_sites, r2_sites
from .net import Net
from .polynomial import LaurentPolynomial

# Ceiling on crossings for the polynomial invariants.  The bracket is
# contracted crossing by crossing, so cost follows the diagram width rather
# than 2^c; the ceiling only guards against runaway inputs.
MAX_CROSSINGS = 64
# the full skein tree is exponential; truncated requests (v2) skip this bound
CONWAY_MAX_CROSSINGS = 24

_D_LOOP = LaurentPolynomial("A", {2: -1, -2: -1})


class InvariantError(ValueError):
    pass


def _check_closed(D: LinkDiagram, limit: int | None) -> None:
    if any(c.kind == STRING for c in D.components):
        raise InvariantError("polynomial invariants need a closed link; take the closure first")
    if not D.components:
        raise InvariantError("the empty diagram has no normalized polynomial")
    limit = MAX_CROSSINGS if limit is None else limit
    if D.n_crossings > limit:
        raise InvariantError(f"{D.n_crossings} crossings exceeds the bound of {limit}")


# ----------------------------------------------------------------------
def linking_matrix(D: LinkDiagram) -> list[list[int]]:
    """Symmetric matrix of pairwise linking numbers (string components included)."""
    n = D.n_components
    twice = [[0] * n for _ in range(n)]
    for cid, (u, o) in D.strand_components.items():
        if u != o:
            twice[u][o] += D.sign(cid)
            twice[o][u] += D.sign(cid)
    out = []
    for row in twice:
        if any(v % 2 for v in row):
            # only possible for string links, whose pairwise counts may be odd
            out.append([Fraction(v, 2) for v in row])
        else:
            out.append([v // 2 for v in row])
    return out


def unlink_jones(k: int) -> LaurentPolynomial:
    return LaurentPolynomial("t_half", {1: -1, -1: -1}) ** (k - 1)


# ----------------------------------------------------------------------
def _smoothings(arcs):
    a, b, c, d = arcs
    # (A-smoothing, B-smoothing)
    return ((a, b), (c, d)), ((a, d), (b, c))


def _contraction_order(D: LinkDiagram) -> list:
    remaining = {c.id: c for c in D.crossings}
    open_labels: set[int] = set()
    order = []
    while remaining:
        best = max(remaining.values(),
                   key=lambda c: (sum(a in open_labels for a in c.arcs), -c.id))
        del remaining[best.id]
        order.append(best)
        for a in best.arcs:
            open_labels ^= {a}
    return order


def _join(state: dict, x: int, y: int):
    """Connect path ends x and y; returns (new state, closed loop?)."""
    st = dict(state)
    if x == y and x not in st:
        return st, True
    if x in st and st[x] == y:
        del st[x], st[y]
        return st, True
    if x in st:
        ex = st.pop(x)
        del st[ex]
    else:
        ex = x
    if y in st:
        ey = st.pop(y)
        del st[ey]
    else:
        ey = y
    st[ex] = ey
    st[ey] = ex
    return st, False


def kauffman_bracket(D: LinkDiagram, limit: int | None = None) -> LaurentPolynomial:
    """Unnormalized bracket in A with <unknot> = 1."""
    _check_closed(D, limit)
    # states: open-end pairing -> {A exponent: coeff} and closed-loop count folded in
    states: dict[frozenset, dict[int, int]] = {frozenset(): {0: 1}}
    loop_poly = {2: -1, -2: -1}

    def mul(p, q):
        out: dict[int, int] = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return out

    for crossing in _contraction_order(D):
        new: dict[frozenset, dict[int, int]] = {}
        for key, poly in states.items():
            st = dict(key)
            for weight, pairs in zip((1, -1), _smoothings(crossing.arcs)):
                s2, loops = st, 0
                for x, y in pairs:
                    s2, closed = _join(s2, x, y)
                    loops += closed
                p = {e + weight: c for e, c in poly.items()}
                for _ in range(loops):
                    p = mul(p, loop_poly)
                k2 = frozenset(s2.items())
                acc = new.setdefault(k2, {})
                for e, c in p.items():
                    acc[e] = acc.get(e, 0) + c
        states = {k: {e: c for e, c in v.items() if c} for k, v in new.items()}
    total = LaurentPolynomial("A", states.get(frozenset(), {}))
    loops_free = sum(1 for c in D.components if not c.arcs)
    total = total * (_D_LOOP ** loops_free) if D.crossings else _D_LOOP ** loops_free
    return total.exact_divide(_D_LOOP)


def jones(D: LinkDiagram, limit: int | None = None) -> LaurentPolynomial:
    """Jones polynomial in t^(1/2), normalized so the unknot gives 1."""
    bracket = kauffman_bracket(D, limit)
    w = D.writhe()
    f = bracket * (LaurentPolynomial("A", {3: -1}) ** (-w))
    out = {}
    for k, c in f.coeffs.items():
        if k % 2:
            raise AssertionError("odd A-exponent in normalized bracket")
        out[-k // 2] = c
    return LaurentPolynomial("t_half", out)


# ----------------------------------------------------------------------
def _reduce(net: Net) -> int:
    """Greedy R1/R2; returns how many crossing-free loops were split off."""
    freed = 0
    while True:
        r1 = r1_sites(net)
        if r1:
            freed += len(net.remove_crossings({r1[0]}))
            continue
        r2 = r2_sites(net)
        if r2:
            freed += len(net.remove_crossings(set(r2[0])))
            continue
        return freed


def _smooth(net: Net, cid: int) -> tuple[Net, int]:
    out = net.copy()
    o_in = out.over_in[cid]
    o_out = (o_in + 2) % 4
    # oriented smoothing: under-in turns into over-out, over-in into under-out
    table = {0: o_out, o_out: 0, o_in: 2, 2: o_in}
    loops = out.remove_crossings({cid}, through=lambda n: (n[0], table[n[1]]))
    return out, len(loops)


def _conway_net(net: Net, free: int, top: int | None = None) -> LaurentPolynomial:
    """``free`` counts crossing-free circles carried alongside ``net``.

    With ``top`` set only coefficients up to z^top are produced.  A link of
    k components has no terms below z^(k-1) and a knot has constant term 1,
    so branches are pruned as soon as they cannot reach that degree.
    """
    net = net.copy()
    free += _reduce(net)
    if free and net.over_in:
        return LaurentPolynomial("z")  # split link
    traced = net.components_trace()
    n_comp = len(traced) + free
    if not net.over_in or (top is not None and top <= n_comp - 1):
        if top is not None and top < n_comp - 1:
            return LaurentPolynomial("z")
        if not net.over_in or n_comp == 1:
            return LaurentPolynomial("z", {0: 1 if n_comp == 1 else 0})
    first_visit: dict[int, int] = {}
    for _, path in traced:
        for cid, s in path:
            first_visit.setdefault(cid, s)
    total = LaurentPolynomial("z")
    z = LaurentPolynomial("z", {1: 1})
    current = net
    for cid, s in first_visit.items():
        if s != 0:
            continue
        smoothed, loops = _smooth(current, cid)
        sub = _conway_net(smoothed, loops, None if top is None else top - 1)
        total = total + current.sign(cid) * z * sub
        current = current.copy()
        current.change(cid)
    return total + LaurentPolynomial("z", {0: 1 if n_comp == 1 else 0})


def conway(D: LinkDiagram, pivot: int | None = None, limit: int | None = None,
           top: int | None = None) -> LaurentPolynomial:
    """Conway polynomial by the skein relation.

    Crossings met first as under-crossings along a fixed traversal are
    switched one at a time, which ends at a descending diagram (an unlink);
    each switch contributes ``±z`` times the Conway polynomial of the
    oriented smoothing.  ``pivot`` forces the first resolution to happen at
    that crossing, which gives an independent route for cross-checks.
    ``top`` truncates the result to degrees <= top, which keeps the
    recursion shallow for low-order coefficients.
    """
    if limit is None:
        limit = CONWAY_MAX_CROSSINGS if top is None else MAX_CROSSINGS
    _check_closed(D, limit)
    if pivot is not None and pivot not in D.crossing_ids:
        raise InvariantError(f"unknown crossing id {pivot}")
    net = Net.from_diagram(D)
    free = sum(1 for c in D.components if not c.arcs)
    if pivot is None:
        return _conway_net(net, free, top)
    z = LaurentPolynomial("z", {1: 1})
    changed = net.copy()
    changed.change(pivot)
    smoothed, loops = _smooth(net, pivot)
    # L+ - L- = z L0, read in whichever direction the pivot sign dictates
    sub = _conway_net(smoothed, free + loops, None if top is None else top - 1)
    return _conway_net(changed, free, top) + net.sign(pivot) * z * sub


def _require_knot(K: LinkDiagram) -> None:
    if K.n_components != 1 or K.components[0].kind == STRING:
        raise InvariantError("expected a knot (one circle component)")


def v2(K: LinkDiagram) -> int:
    """Coefficient of z^2 in the Conway polynomial."""
    _require_knot(K)
    return conway(K, top=2).coefficient(2)


def v3(K: LinkDiagram) -> Fraction:
    """Order-3 invariant from the Jones polynomial at t = e^h.

    ``v3 = -(1/6) [h^3] V(e^h)``, so the positive trefoil gives 1 and a
    mirror image flips the sign.
    """
    _require_knot(K)
    V = jones(K)
    h3 = sum(Fraction(c) * Fraction(e, 2) ** 3 / 6 for e, c in V.coeffs.items())
    return -h3 / 6


def jones_h_coefficient(V: LaurentPolynomial, order: int) -> Fraction:
    """Coefficient of h^order in V(e^h)."""
    from math import factorial
    return sum(Fraction(c) * Fraction(e, 2) ** order for e, c in V.coeffs.items()) / factorial(order)
