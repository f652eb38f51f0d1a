"""Pure braid words, string links, closures and local string-link insertion.

Braid letters are signed generator indices; ``+i`` crosses the strands at
positions ``i`` and ``i+1`` with the left one on top.  String links are
ordinary :class:`LinkDiagram` values whose components all have kind
``string``; strand ``k`` starts and ends at boundary position ``k``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .diagram import CIRCLE, STRING, LinkDiagram, delete_components, parse_pd
from .net import CompInfo, Net, _is_boundary


@dataclass(frozen=True)
class BraidWord:
    m: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        if self.m < 1:
            raise ValueError("a braid needs at least one strand")
        for g in self.letters:
            if g == 0 or abs(g) >= self.m:
                raise ValueError(f"generator {g} out of range for {self.m} strands")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.m != other.m:
            raise ValueError("strand counts differ")
        return BraidWord(self.m, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.m, tuple(-g for g in reversed(self.letters)))

    def permutation(self) -> tuple[int, ...]:
        """perm[p] = strand (0-based start position) ending at position p."""
        strand = list(range(self.m))
        for g in self.letters:
            i = abs(g) - 1
            strand[i], strand[i + 1] = strand[i + 1], strand[i]
        return tuple(strand)

    def is_pure(self) -> bool:
        return self.permutation() == tuple(range(self.m))

    def free_reduce(self) -> "BraidWord":
        out: list[int] = []
        for g in self.letters:
            if out and out[-1] == -g:
                out.pop()
            else:
                out.append(g)
        return BraidWord(self.m, tuple(out))

    def delete_strand(self, k: int) -> "BraidWord":
        """Drop strand ``k`` (1-based start position) and every letter it takes part in."""
        if not 1 <= k <= self.m:
            raise ValueError(f"no strand {k}")
        if self.m == 1:
            raise ValueError("cannot delete the only strand")
        strand = list(range(1, self.m + 1))
        out = []
        for g in self.letters:
            i = abs(g) - 1
            a, b = strand[i], strand[i + 1]
            if k not in (a, b):
                p = strand.index(k)
                out.append((i if p < i else i + 1) * (1 if g > 0 else -1))
            strand[i], strand[i + 1] = b, a
        return BraidWord(self.m - 1, tuple(out))

    def __str__(self):
        return f"{self.m}; " + " ".join(f"-s{-g}" if g < 0 else f"s{g}" for g in self.letters)

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        head, sep, body = text.partition(";")
        if not sep or not head.strip().isdigit():
            raise ValueError("braid word must look like 'm; s1 s2 -s1'")
        letters = []
        for tok in body.split():
            mt = re.fullmatch(r"(-?)s?(\d+)", tok)
            if not mt:
                raise ValueError(f"bad braid letter {tok!r}")
            letters.append(int(mt.group(2)) * (-1 if mt.group(1) else 1))
        return cls(int(head), tuple(letters))


def commutator_word(x: BraidWord, y: BraidWord) -> BraidWord:
    return x * y * x.inverse() * y.inverse()


def clasp_generator(m: int, j: int) -> BraidWord:
    """A_1j = s_{j-1} ... s_2 s_1^2 s_2^-1 ... s_{j-1}^-1."""
    if not 2 <= j <= m:
        raise ValueError("need 2 <= j <= m")
    up = list(range(j - 1, 1, -1))
    return BraidWord(m, tuple(up) + (1, 1) + tuple(-g for g in reversed(up)))


def pure_braid_commutator(n: int) -> BraidWord:
    """[[...[A_12, A_13], ...], A_1n] on n strands."""
    if n < 3:
        raise ValueError("the commutator family starts at n = 3")
    w = clasp_generator(n, 2)
    for j in range(3, n + 1):
        w = commutator_word(w, clasp_generator(n, j))
    return w


# ----------------------------------------------------------------------
def braid_to_stringlink(w: BraidWord) -> LinkDiagram:
    """Diagram of a pure braid read bottom to top; one crossing per letter."""
    if not w.is_pure():
        raise ValueError(f"braid word is not pure (permutation {w.permutation()})")
    net = Net()
    net.n_colors = w.m
    for k in range(w.m):
        net.comps.append(CompInfo(STRING, k + 1, k + 1))
        net.join(("B", k, 0), ("B", k, 1))
    net.add_braid([("B", k, 0) for k in range(w.m)], [("B", k, 1) for k in range(w.m)],
                  w.letters, [True] * w.m, list(range(w.m)))
    return net.to_diagram()


def _require_stringlink(S: LinkDiagram) -> None:
    if not S.components or any(c.kind != STRING for c in S.components):
        raise ValueError("expected a string link (all components of kind string)")


def _close_net(net: Net) -> None:
    for k, info in enumerate(net.comps):
        if info.deleted or info.kind != STRING:
            continue
        a, b = net.nbr.pop(("B", k, 1)), net.nbr.pop(("B", k, 0))
        if _is_boundary(a):  # strand without crossings
            net.nbr.pop(a, None)
            net.nbr.pop(b, None)
        else:
            net.join(a, b)
        info.kind, info.end = CIRCLE, None


def closure(S: LinkDiagram) -> LinkDiagram:
    """Join top endpoint i to bottom endpoint i by nested arcs."""
    _require_stringlink(S)
    if any(c.end is not None and c.end != k for k, c in enumerate(S.components, 1)):
        raise ValueError("closure expects strand k to run from position k to position k")
    net = Net.from_diagram(S)
    _close_net(net)
    return net.to_diagram()


def is_brunnian_stringlink(S: LinkDiagram, b=None, workers: int | None = None) -> dict:
    """Delete each strand in turn and decide triviality rel boundary."""
    from concurrent.futures import ThreadPoolExecutor

    from .simplify import NONTRIVIAL, TRIVIAL, Budget, triviality

    _require_stringlink(S)
    b = b or Budget.default()
    idx = list(range(1, S.n_components + 1))

    def check(i):
        rest = delete_components(S, {i})
        if not rest.components:
            from .simplify import TrivialityVerdict
            return TrivialityVerdict(TRIVIAL)
        return triviality(rest, b)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        verdicts = dict(zip(idx, pool.map(check, idx)))
    statuses = {v.status for v in verdicts.values()}
    if statuses <= {TRIVIAL}:
        overall = "Brunnian"
    elif NONTRIVIAL in statuses:
        overall = "NotBrunnian"
    else:
        overall = "Unknown"
    return {"overall": overall, "deletions": verdicts}


# ----------------------------------------------------------------------
def _arc_ends(D: LinkDiagram) -> dict[int, tuple]:
    """arc label -> (tail node, head node) in Net coordinates."""
    ends: dict[int, list] = {}
    for seq in D.passages:
        for p in seq:
            x = D.crossing(p.crossing)
            ends.setdefault(x.arcs[p.in_slot], [None, None])[1] = (p.crossing, p.in_slot)
            ends.setdefault(x.arcs[p.out_slot], [None, None])[0] = (p.crossing, p.out_slot)
    return {a: tuple(v) for a, v in ends.items()}


def closed_braid_with_site(w: BraidWord) -> tuple[LinkDiagram, list[int]]:
    """Closure of an arbitrary braid, plus the m bottom arcs as an insertion site."""
    m = w.m
    perm = w.permutation()
    net = Net()
    net.n_colors = 1
    # components are filled in after tracing the cycles of the permutation
    owner = {}
    ncomp = 0
    for start in range(m):
        if start in owner:
            continue
        p = start
        while p not in owner:
            owner[p] = ncomp
            p = perm.index(p)  # strand at top position p came from bottom perm[p]
        ncomp += 1
    for _ in range(ncomp):
        net.comps.append(CompInfo(CIRCLE, 1))
    bottoms = [("P", p, 0) for p in range(m)]
    tops = [("P", p, 1) for p in range(m)]
    _add_braid_any(net, bottoms, tops, w.letters, [owner[p] for p in range(m)])
    # join top p to bottom p through the closure arcs
    first = []
    for p in range(m):
        below = net.nbr.pop(("P", p, 0))
        above = net.nbr.pop(("P", p, 1))
        if below == ("P", p, 1):
            raise ValueError("every strand needs a crossing to carry a site")
        net.join(above, below)
        first.append(below)
    D = net.to_diagram()
    return D, [D.crossing(cid).arcs[s] for cid, s in first]


def unknot_with_site(m: int) -> tuple[LinkDiagram, list[int]]:
    """The unknot as the closed braid s_1 s_2 ... s_{m-1}, with its m bottom arcs as a site.

    For m = 1 a single kink is used so that the site arc exists.
    """
    if m < 1:
        raise ValueError("a site needs at least one strand")
    if m == 1:
        return parse_pd("X(1,1,2,2)"), [1]
    return closed_braid_with_site(BraidWord(m, tuple(range(1, m))))


def _add_braid_any(net: Net, bottoms, tops, letters, comps) -> dict:
    """Like Net.add_braid but allows a non-pure word (used for closed braids)."""
    m = len(bottoms)
    for p in range(m):
        net.join(bottoms[p], tops[p])
    frontier = list(bottoms)
    cid = net.next_id()
    made = {}
    for n, g in enumerate(letters):
        i = abs(g) - 1
        order = ("SE", "NE", "NW", "SW") if g > 0 else ("SW", "SE", "NE", "NW")
        over_entry = "SW" if g > 0 else "SE"
        slot = {d: s for s, d in enumerate(order)}
        net.over_in[cid] = slot[over_entry]
        left, right = comps[i], comps[i + 1]
        for d in ("SW", "NE"):
            net.comp_of[(cid, slot[d])] = left
        for d in ("SE", "NW"):
            net.comp_of[(cid, slot[d])] = right
        net.join(frontier[i], (cid, slot["SW"]))
        net.join(frontier[i + 1], (cid, slot["SE"]))
        frontier[i], frontier[i + 1] = (cid, slot["NW"]), (cid, slot["NE"])
        comps[i], comps[i + 1] = right, left
        made[n] = cid
        cid += 1
    for p in range(m):
        net.join(frontier[p], tops[p])
    return made


def insert_stringlink(K: LinkDiagram, arcs: Iterable[int], S: LinkDiagram) -> LinkDiagram:
    """Cut the parallel arcs ``arcs`` of ``K`` and splice in the string link ``S``.

    The arcs must be met in order by a path through the faces of ``K`` and
    must all cross that path in the same direction; strand ``k`` of ``S``
    replaces the k-th arc counted from the left when the arcs point up.
    """
    arcs = list(arcs)
    _require_stringlink(S)
    if K.n_components != 1 or K.components[0].kind != CIRCLE:
        raise ValueError("insertion expects a knot diagram")
    if len(arcs) != S.n_components:
        raise ValueError(f"site has {len(arcs)} strands but the string link has {S.n_components}")
    if len(set(arcs)) != len(arcs):
        raise ValueError("site arcs must be distinct")
    ends = _arc_ends(K)
    missing = [a for a in arcs if a not in ends]
    if missing:
        raise ValueError(f"unknown or crossing-free arc(s) {missing}")
    net = Net.from_diagram(K)
    face_of = {}
    for f, darts in enumerate(net.faces()):
        for d in darts:
            face_of[d] = f
    tails = [ends[a][0] for a in arcs]
    heads = [ends[a][1] for a in arcs]
    pairs = list(zip(tails, heads))
    # each face lies to the right of its darts; see Net.faces
    fwd = all(face_of[pairs[i][0]] == face_of[pairs[i + 1][1]] for i in range(len(pairs) - 1))
    back = all(face_of[pairs[i][1]] == face_of[pairs[i + 1][0]] for i in range(len(pairs) - 1))
    if not fwd and not back:
        raise ValueError("site arcs are not parallel with matching orientations along one path")
    if not fwd:
        pairs.reverse()
    s_net = Net.from_diagram(S)
    shift = net.next_id() - 1
    for cid, o in s_net.over_in.items():
        net.over_in[cid + shift] = o
    for k, info in enumerate(s_net.comps):
        pos = (info.end or k + 1) - 1
        comp = net.comp_of[pairs[pos][0]]
        for (cid, s), kk in s_net.comp_of.items():
            if kk == k:
                net.comp_of[(cid + shift, s)] = comp

    def lift(node):
        return node if _is_boundary(node) else (node[0] + shift, node[1])

    for p, q in s_net.nbr.items():
        if not _is_boundary(p):
            net.nbr[lift(p)] = lift(q)
    for k, info in enumerate(s_net.comps):
        pos = (info.end or k + 1) - 1
        tail, head = pairs[pos]
        lo, hi = lift(s_net.nbr[("B", k, 0)]), lift(s_net.nbr[("B", k, 1)])
        if _is_boundary(lo):  # crossing-free strand: reconnect the cut arc
            net.join(tail, head)
            continue
        net.join(tail, lo)
        net.join(hi, head)
    return net.to_diagram()
