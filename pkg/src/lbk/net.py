"""Mutable slot-graph used by every diagram rewrite.

A node is either a crossing slot ``(cid, slot)`` or a boundary point
``("B", component, end)`` of a string component (``end`` 0 is where the
string starts, 1 where it finishes).  ``nbr`` joins the two ends of every
arc.  Crossing ids survive all rewrites, so move traces can refer to them.
Components are 0-based here; LinkDiagram exposes them 1-based.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass

from .diagram import CIRCLE, STRING, Component, Crossing, LinkDiagram


@dataclass
class CompInfo:
    kind: str
    color: int
    end: int | None = None
    deleted: bool = False


def _is_boundary(node) -> bool:
    return node[0] == "B"


class Net:
    def __init__(self):
        self.nbr: dict = {}
        self.over_in: dict[int, int] = {}
        # component of the strand through each slot
        self.comp_of: dict[tuple[int, int], int] = {}
        self.comps: list[CompInfo] = []
        self.n_colors = 0

    # ------------------------------------------------------------------
    @classmethod
    def from_diagram(cls, D: LinkDiagram) -> "Net":
        net = cls()
        net.n_colors = D.n_colors
        for k, (comp, seq) in enumerate(zip(D.components, D.passages)):
            net.comps.append(CompInfo(comp.kind, comp.color, comp.end))
            for p in seq:
                net.comp_of[(p.crossing, p.in_slot)] = k
                net.comp_of[(p.crossing, p.out_slot)] = k
                if p.in_slot != 0:
                    net.over_in[p.crossing] = p.in_slot
            if comp.kind == STRING:
                if not seq:
                    net.join(("B", k, 0), ("B", k, 1))
                    continue
                net.join(("B", k, 0), (seq[0].crossing, seq[0].in_slot))
                net.join((seq[-1].crossing, seq[-1].out_slot), ("B", k, 1))
            for j in range(len(seq) - 1):
                net.join((seq[j].crossing, seq[j].out_slot), (seq[j + 1].crossing, seq[j + 1].in_slot))
            if comp.kind == CIRCLE and seq:
                net.join((seq[-1].crossing, seq[-1].out_slot), (seq[0].crossing, seq[0].in_slot))
        return net

    def copy(self) -> "Net":
        return copy.deepcopy(self)

    def join(self, p, q) -> None:
        self.nbr[p] = q
        self.nbr[q] = p

    @property
    def crossing_ids(self) -> list[int]:
        return sorted(self.over_in)

    @property
    def n_crossings(self) -> int:
        return len(self.over_in)

    def next_id(self) -> int:
        return max(self.over_in, default=0) + 1

    def sign(self, cid: int) -> int:
        return 1 if self.over_in[cid] == 3 else -1

    def out_slot(self, cid: int, s_in: int) -> int:
        return (s_in + 2) % 4

    def is_in(self, node) -> bool:
        if _is_boundary(node):
            return node[2] == 1
        cid, s = node
        return s == 0 or s == self.over_in[cid]

    def under_comp(self, cid: int) -> int:
        return self.comp_of[(cid, 0)]

    def over_comp(self, cid: int) -> int:
        return self.comp_of[(cid, 1)]

    def live_components(self) -> list[int]:
        return [k for k, c in enumerate(self.comps) if not c.deleted]

    def crossings_of(self, k: int) -> set[int]:
        return {cid for (cid, s), kk in self.comp_of.items() if kk == k}

    # ------------------------------------------------------------------
    def remove_crossings(self, doomed, through=None) -> list[list[tuple[int, int]]]:
        """Delete crossings, joining each strand straight through them.

        ``through`` maps a slot ``(cid, s)`` of a doomed crossing to the slot
        the strand leaves by; the default is the opposite slot.  Returns the
        closed loops that ran entirely inside the doomed crossings, each as
        the list of slots it visited.
        """
        doomed = set(doomed)
        if not doomed:
            return []
        if through is None:
            def through(node):
                return (node[0], (node[1] + 2) % 4)
        visited = set()
        ext = [p for p, q in self.nbr.items()
               if not (not _is_boundary(p) and p[0] in doomed)
               and not _is_boundary(q) and q[0] in doomed]
        joins = []
        done = set()
        for p in ext:
            if p in done:
                continue
            q = self.nbr[p]
            while not _is_boundary(q) and q[0] in doomed:
                visited.add(q)
                t = through(q)
                visited.add(t)
                q = self.nbr[t]
            done.add(p)
            done.add(q)
            joins.append((p, q))
        loops = []
        slots = [(cid, s) for cid in sorted(doomed) for s in range(4)]
        for start in slots:
            if start in visited:
                continue
            loop = []
            q = start
            while q not in visited:
                visited.add(q)
                t = through(q)
                visited.add(t)
                loop += [q, t]
                q = self.nbr[t]
            loops.append(loop)
        for cid in doomed:
            for s in range(4):
                self.nbr.pop((cid, s), None)
            del self.over_in[cid]
        for p, q in joins:
            self.join(p, q)
        for cid in doomed:
            for s in range(4):
                self.comp_of.pop((cid, s), None)
        return loops

    def delete_components(self, ks) -> None:
        ks = set(ks)
        doomed = {cid for (cid, s), k in self.comp_of.items() if k in ks}
        self.remove_crossings(doomed)
        for k in ks:
            if self.comps[k].kind == STRING:
                self.nbr.pop(("B", k, 0), None)
                self.nbr.pop(("B", k, 1), None)
            self.comps[k].deleted = True

    def change(self, cid: int) -> None:
        """Crossing change; slots are renumbered so slot 0 stays incoming-under."""
        shift = 1 if self.over_in[cid] == 3 else -1
        old = {s: self.nbr.pop((cid, s)) for s in range(4)}
        comps = {s: self.comp_of[(cid, s)] for s in range(4)}
        remap = {s: (s + shift) % 4 for s in range(4)}
        for s, q in old.items():
            if not _is_boundary(q) and q[0] == cid:
                q = (cid, remap[q[1]])
            self.nbr[(cid, remap[s])] = q
            self.nbr[q] = (cid, remap[s])
            self.comp_of[(cid, remap[s])] = comps[s]
        self.over_in[cid] = 1 if shift == 1 else 3

    # ------------------------------------------------------------------
    def faces(self) -> list[list]:
        """Faces as lists of darts; a dart is the node an edge leaves from."""
        seen = set()
        out = []
        for start in sorted(self.nbr, key=_node_key):
            if start in seen:
                continue
            face = []
            d = start
            while d not in seen:
                seen.add(d)
                face.append(d)
                a = self.nbr[d]
                d = a if _is_boundary(a) else (a[0], (a[1] + 1) % 4)
            out.append(face)
        return out

    def components_trace(self) -> list[tuple[str, list]]:
        """Trace strands from scratch, ignoring stored component labels.

        Returns ``(kind, in_nodes)`` per traced component.  Strings are
        traced from their starting boundary point.
        """
        seen = set()
        out = []
        starts = sorted((n for n in self.nbr if _is_boundary(n) and n[2] == 0), key=_node_key)
        for b in starts:
            path = []
            q = self.nbr[b]
            while not _is_boundary(q):
                path.append(q)
                seen.add(q)
                q = self.nbr[(q[0], (q[1] + 2) % 4)]
            out.append((STRING, path))
        for cid in sorted(self.over_in):
            for s in (0, self.over_in[cid]):
                if (cid, s) in seen:
                    continue
                path = []
                q = (cid, s)
                while q not in seen:
                    seen.add(q)
                    path.append(q)
                    q = self.nbr[(q[0], (q[1] + 2) % 4)]
                out.append((CIRCLE, path))
        return out

    # ------------------------------------------------------------------
    def component_passages(self, k: int) -> list[tuple[int, int]]:
        """In-nodes of component ``k`` in traversal order."""
        info = self.comps[k]
        seq = []
        if info.kind == STRING:
            q = self.nbr[("B", k, 0)]
            while not _is_boundary(q):
                seq.append(q)
                q = self.nbr[(q[0], (q[1] + 2) % 4)]
            return seq
        ins = sorted(n for n, kk in self.comp_of.items() if kk == k and self.is_in(n))
        if not ins:
            return seq
        q = ins[0]
        while True:
            seq.append(q)
            q = self.nbr[(q[0], (q[1] + 2) % 4)]
            if q == ins[0]:
                return seq

    def to_diagram(self) -> LinkDiagram:
        """Relabel arcs compactly, component by component."""
        label = 0
        arcs: dict[int, list[int]] = {cid: [0, 0, 0, 0] for cid in self.over_in}
        comps = []
        # boundary positions stay ordered but are renumbered 1..m after deletions
        ended = sorted((self.comps[k].end, k) for k in self.live_components()
                       if self.comps[k].end is not None)
        new_end = {k: i for i, (_, k) in enumerate(ended, 1)}
        for k in self.live_components():
            info = self.comps[k]
            seq = self.component_passages(k)
            n = len(seq)
            n_arcs = n + 1 if info.kind == STRING else n
            labels = list(range(label + 1, label + 1 + n_arcs))
            label += n_arcs
            for j, (cid, s) in enumerate(seq):
                arcs[cid][s] = labels[j]
                arcs[cid][(s + 2) % 4] = labels[(j + 1) % n_arcs]
            comps.append(Component(info.kind, info.color, tuple(labels), new_end.get(k)))
        xs = tuple(Crossing(cid, tuple(arcs[cid])) for cid in sorted(arcs))
        return LinkDiagram(xs, tuple(comps))

    # ------------------------------------------------------------------
    def add_braid(self, bottoms, tops, word, up, comps) -> dict:
        """Insert a braid box.

        ``bottoms[p]`` / ``tops[p]`` are nodes to attach below / above
        position ``p``; ``up[p]`` says whether the strand starting at bottom
        position ``p`` travels upward; ``comps[p]`` its component.  Letters
        are signed 1-based generators; ``+i`` puts the strand at position
        ``i`` over the one at ``i+1``.  Returns ``{letter index: crossing id}``.
        """
        m = len(bottoms)
        frontier = list(bottoms)
        strand = list(range(m))  # strand occupying each position
        made = {}
        cid = self.next_id()
        for n, g in enumerate(word):
            i = abs(g) - 1
            if not 0 <= i < m - 1:
                raise ValueError(f"generator {g} out of range for {m} strands")
            L, R = strand[i], strand[i + 1]
            if g > 0:
                order = ("SE", "NE", "NW", "SW") if up[R] else ("NW", "SW", "SE", "NE")
                over_entry = "SW" if up[L] else "NE"
            else:
                order = ("SW", "SE", "NE", "NW") if up[L] else ("NE", "NW", "SW", "SE")
                over_entry = "SE" if up[R] else "NW"
            slot = {d: s for s, d in enumerate(order)}
            self.over_in[cid] = slot[over_entry]
            for d in ("SW", "NE"):
                self.comp_of[(cid, slot[d])] = comps[L]
            for d in ("SE", "NW"):
                self.comp_of[(cid, slot[d])] = comps[R]
            self.join(frontier[i], (cid, slot["SW"]))
            self.join(frontier[i + 1], (cid, slot["SE"]))
            frontier[i] = (cid, slot["NW"])
            frontier[i + 1] = (cid, slot["NE"])
            strand[i], strand[i + 1] = R, L
            made[n] = cid
            cid += 1
        if strand != list(range(m)):
            raise ValueError("braid word is not pure")
        for p in range(m):
            self.join(frontier[p], tops[p])
        return made


def _node_key(node):
    if _is_boundary(node):
        return (1, node[1], node[2])
    return (0, node[0], node[1])
