"""Framed twists along an unknotted circle component.

A twist site is a crossing-free-inside circle whose spanning disk is
crossed by ``m`` parallel strands.  Twisting ``f`` times deletes the circle
and puts ``|f|`` full twists on those strands.  The full twist is written as
the product over j = 2..m of

    delta_j = s_{j-1} ... s_1 s_1 ... s_{j-1}

so strand j meets every strand i < j exactly twice inside delta_j, once
on the way left and once on the way back.  Those two crossings form the
clasp between i and j; changing the second one lets the whole factor
collapse by R2 moves, which is what the undo set records.
"""
from __future__ import annotations

from dataclasses import dataclass

from .diagram import CIRCLE, LinkDiagram
from .net import Net


class TwistError(ValueError):
    pass


@dataclass(frozen=True)
class TwistSite:
    """Where to twist.

    ``chords`` lists the m strand segments through the disk from left to
    right, each as a pair of slot nodes ``(lower, upper)`` joined by an arc.
    ``piercing`` is the 2m crossings on the circle, counterclockwise around
    the disk starting at the lower end of chord 1.  ``component`` is the
    1-based circle to delete, or None for a bare strand bundle.
    """
    component: int | None
    chords: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    piercing: tuple[int, ...] = ()

    @property
    def m(self) -> int:
        return len(self.chords)

    def pairs(self) -> list[tuple[int, int]]:
        """Crossing ids (entry, exit side) of each passage, left to right."""
        return [(lo[0], hi[0]) for lo, hi in self.chords]

    def describe(self) -> str:
        head = f"component {self.component}" if self.component else "strand bundle"
        body = " ".join(f"({a},{b})" for a, b in self.pairs())
        return f"{head}: m={self.m} passages {body}".rstrip()


def _rotations(order, match):
    """Starting offsets r for which the chords read b_1..b_m t_m..t_1."""
    n = len(order)
    m = n // 2
    for r in range(n):
        if all(match[order[(r + p) % n]] == order[(r + n - 1 - p) % n] for p in range(m)):
            yield r


def detect_twist_site(D: LinkDiagram, component: int) -> TwistSite | None:
    """Recognize the disk normal form around a circle component.

    Every strand meeting the circle has to run straight across one side of
    it to another crossing on the circle, and the resulting chords have to
    be parallel.  The right-hand side is tried before the left; among the
    valid readings the one whose first chord carries the lowest arc label
    wins.
    """
    if not 1 <= component <= D.n_components:
        raise TwistError(f"no component {component}")
    if D.components[component - 1].kind != CIRCLE:
        raise TwistError(f"component {component} is not a circle")
    k = component - 1
    net = Net.from_diagram(D)
    if any(net.under_comp(c) == k and net.over_comp(c) == k for c in net.over_in):
        return None
    seq = net.component_passages(k)
    if not seq:
        return TwistSite(component, ())
    if len(seq) % 2:
        return None
    best = None
    for turn in (1, 3):  # right side, then left side, of the traversal
        sides = [(cid, (a + turn) % 4) for cid, a in seq]
        index = {node: i for i, node in enumerate(sides)}
        match = {}
        for i, node in enumerate(sides):
            j = index.get(net.nbr[node])
            if j is None or j == i:
                break
            match[i] = j
        else:
            # walking with the disk on the right goes clockwise round it
            order = list(range(len(seq)))[::-1] if turn == 1 else list(range(len(seq)))
            m = len(seq) // 2
            for r in _rotations(order, match):
                ccw = [order[(r + p) % len(order)] for p in range(len(order))]
                chords = tuple((sides[ccw[p]], sides[ccw[len(ccw) - 1 - p]]) for p in range(m))
                key = D.crossing(chords[0][0][0]).arcs[chords[0][0][1]]
                if best is None or key < best[0]:
                    best = (key, TwistSite(component, chords, tuple(sides[i][0] for i in ccw)))
        if best is not None:
            return best[1]
    return None


def full_twist_word(m: int, f: int) -> tuple[list[int], list[int]]:
    """Letters of the f-fold full twist and the indices of its undo letters."""
    letters: list[int] = []
    undo: list[int] = []
    sign = 1 if f > 0 else -1
    for _ in range(abs(f)):
        for j in range(2, m + 1):
            letters.extend(sign * g for g in range(j - 1, 0, -1))
            start = len(letters)
            letters.extend(sign * g for g in range(1, j))
            undo.extend(range(start, len(letters)))
    return letters, undo


def _check_site(D: LinkDiagram, site: TwistSite) -> Net:
    net = Net.from_diagram(D)
    for lo, hi in site.chords:
        if net.nbr.get(lo) != hi:
            raise TwistError(f"site chord {lo}-{hi} is not an arc of the diagram")
    if site.component is not None:
        if not 1 <= site.component <= D.n_components:
            raise TwistError(f"no component {site.component}")
        if site.component - 1 in {net.comp_of[lo] for lo, _ in site.chords}:
            raise TwistError("the twisted strands cannot belong to the site circle")
    return net


def twist_with_bundle(D: LinkDiagram, site: TwistSite, f: int):
    """apply_twist, plus the strand bundle just below the new twist region.

    The returned bundle is itself a valid site, so a second twist can be
    stacked on the same strands.  It is None when nothing was inserted.
    """
    net = _check_site(D, site)
    m = site.m
    bottoms = [lo for lo, _ in site.chords]
    tops = [hi for _, hi in site.chords]
    up = [not net.is_in(lo) for lo in bottoms]
    comps = [net.comp_of[lo] for lo in bottoms]
    letters, undo_idx = full_twist_word(m, f)
    for lo in bottoms:
        net.nbr.pop(lo)
    for hi in tops:
        net.nbr.pop(hi)
    made = net.add_braid(bottoms, tops, letters, up, comps)
    entry = [net.nbr[lo] for lo in bottoms]
    if site.component is not None:
        net.delete_components({site.component - 1})
    bundle = TwistSite(None, tuple((net.nbr[q], q) for q in entry)) if letters else None
    return net.to_diagram(), frozenset(made[i] for i in undo_idx), bundle


def apply_twist(D: LinkDiagram, site: TwistSite, f: int) -> tuple[LinkDiagram, frozenset[int]]:
    """Twist ``f`` times along the site and delete the site circle.

    Returns the new diagram and the undo set, one crossing per clasp per
    full twist.  Original crossing ids are kept; new ones follow the
    largest existing id.
    """
    if not isinstance(f, int):
        raise TwistError("framing must be an integer")
    D2, undo, _ = twist_with_bundle(D, site, f)
    return D2, undo


def twist_component(D: LinkDiagram, component: int, f: int) -> tuple[LinkDiagram, frozenset[int], TwistSite]:
    """detect_twist_site followed by apply_twist."""
    site = detect_twist_site(D, component)
    if site is None:
        raise TwistError(f"component {component} has no twist site in this diagram")
    D2, undo = apply_twist(D, site, f)
    return D2, undo, site
