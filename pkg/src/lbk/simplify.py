"""Budgeted Reidemeister simplification and a three-valued triviality test.

The search is deliberately simple: greedy R1/R2 to a fixpoint, a short
breadth-first hunt through R3 moves for a state that re-enables R1/R2, and
SPLIT steps that pull apart a set of components lying entirely over the
rest.  Anything it cannot finish is reported as Unknown, never guessed.
"""
from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, field

from .diagram import STRING, LinkDiagram, _as_indices, sublink
from .invariants import InvariantError, MAX_CROSSINGS, jones, linking_matrix, unlink_jones
from .moves import apply_r3, find_r3_face, r1_sites, r2_sites, r3_sites
from .net import Net

TRIVIAL = "Trivial"
NONTRIVIAL = "Nontrivial"
UNKNOWN = "Unknown"

# bipartition enumeration for SPLIT stops here (2^12 subsets)
MAX_SPLIT_COMPONENTS = 12


@dataclass(frozen=True)
class Budget:
    max_moves: int = 100000
    r3_depth: int = 3
    max_crossings_growth: int = 2

    def __post_init__(self):
        for name in ("max_moves", "r3_depth", "max_crossings_growth"):
            if getattr(self, name) < 0:
                raise ValueError(f"budget field {name} must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "Budget":
        """``"moves=500,r3=2,growth=0"`` or a bare integer for max_moves."""
        text = text.strip()
        if text.isdigit():
            return cls(max_moves=int(text))
        keys = {"moves": "max_moves", "max_moves": "max_moves", "r3": "r3_depth",
                "r3_depth": "r3_depth", "growth": "max_crossings_growth",
                "max_crossings_growth": "max_crossings_growth"}
        kw = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            k, _, v = part.partition("=")
            if k.strip() not in keys or not v.strip().lstrip("-").isdigit():
                raise ValueError(f"bad budget term {part!r}")
            kw[keys[k.strip()]] = int(v)
        return cls(**kw)

    @classmethod
    def default(cls) -> "Budget":
        env = os.environ.get("LBK_BUDGET")
        return cls.parse(env) if env else cls()


@dataclass(frozen=True)
class Move:
    kind: str  # R1 | R2 | R3 | SPLIT
    args: tuple[int, ...]

    def __str__(self):
        return " ".join([self.kind, *map(str, self.args)])

    @classmethod
    def parse(cls, line: str) -> "Move":
        words = line.split()
        arity = {"R1": 1, "R2": 2, "R3": 3}
        if not words or words[0] not in (*arity, "SPLIT"):
            raise ValueError(f"unknown move {line!r}")
        args = tuple(int(w) for w in words[1:])
        if words[0] in arity and len(args) != arity[words[0]]:
            raise ValueError(f"{words[0]} takes {arity[words[0]]} crossing ids")
        if words[0] == "SPLIT" and not args:
            raise ValueError("SPLIT needs component indices")
        return cls(words[0], args)


def format_trace(trace) -> str:
    return "".join(f"{m}\n" for m in trace)


def parse_trace(text: str) -> list[Move]:
    return [Move.parse(line) for line in text.splitlines() if line.strip() and not line.startswith("#")]


@dataclass
class TrivialityVerdict:
    status: str
    trace: list[Move] = field(default_factory=list)
    witness: dict | None = None
    report: dict | None = None

    @property
    def evidence(self):
        if self.status == TRIVIAL:
            return self.trace
        if self.status == NONTRIVIAL:
            return self.witness
        return self.report

    def describe(self) -> str:
        if self.status == TRIVIAL:
            return f"Trivial ({len(self.trace)} moves)"
        if self.status == NONTRIVIAL:
            w = self.witness
            return f"Nontrivial ({w['invariant']} = {w['value']}, unlink value {w['expected']})"
        return f"Unknown ({', '.join(f'{k}={v}' for k, v in self.report.items())})"


# ----------------------------------------------------------------------
def _state_key(net: Net):
    return (frozenset(net.nbr.items()), frozenset(net.over_in.items()))


class _Search:
    def __init__(self, budget: Budget):
        self.budget = budget
        self.moves = 0
        self.exhausted = False

    def spend(self) -> bool:
        if self.moves >= self.budget.max_moves:
            self.exhausted = True
            return False
        self.moves += 1
        return True

    def greedy(self, net: Net, trace: list) -> bool:
        """R1 before R2, lowest ids first; True if anything was removed."""
        changed = False
        while True:
            r1 = r1_sites(net)
            if r1:
                if not self.spend():
                    return changed
                net.remove_crossings({r1[0]})
                trace.append(Move("R1", (r1[0],)))
                changed = True
                continue
            r2 = r2_sites(net)
            if r2:
                if not self.spend():
                    return changed
                net.remove_crossings(set(r2[0]))
                trace.append(Move("R2", r2[0]))
                changed = True
                continue
            return changed

    def r3_unlock(self, net: Net, trace: list) -> bool:
        """Breadth-first R3 sequences (depth <= r3_depth) until R1/R2 applies."""
        depth = self.budget.r3_depth
        if depth == 0:
            return False
        seen = {_state_key(net)}
        queue = deque([(net, [])])
        while queue:
            cur, path = queue.popleft()
            if len(path) >= depth:
                continue
            for cids, face in r3_sites(cur):
                if not self.spend():
                    return False
                nxt = cur.copy()
                apply_r3(nxt, face)
                key = _state_key(nxt)
                if key in seen:
                    continue
                seen.add(key)
                npath = path + [cids]
                if r1_sites(nxt) or r2_sites(nxt):
                    for ids in npath:
                        apply_r3(net, find_r3_face(net, ids))
                        trace.append(Move("R3", ids))
                    return True
                queue.append((nxt, npath))
        return False

    def simplify(self, net: Net, trace: list) -> None:
        while True:
            self.greedy(net, trace)
            if self.exhausted or not net.over_in:
                return
            if not self.r3_unlock(net, trace):
                return


def _split_candidates(net: Net):
    live = [k for k in net.live_components() if net.crossings_of(k)]
    if len(live) < 2 or len(live) > MAX_SPLIT_COMPONENTS:
        return
    for size in range(1, len(live)):
        for chosen in itertools.combinations(live, size):
            yield set(chosen)


def _split_crossings(net: Net, chosen: set[int]) -> set[int] | None:
    """Crossings between ``chosen`` and the rest, if ``chosen`` is over at all of them."""
    between = set()
    for cid in net.over_in:
        u, o = net.under_comp(cid), net.over_comp(cid)
        if (u in chosen) == (o in chosen):
            continue
        if u in chosen:
            return None
        between.add(cid)
    return between or None


def _try_split(search: _Search, net: Net, trace: list) -> bool:
    for chosen in _split_candidates(net):
        doomed = _split_crossings(net, chosen)
        if doomed is None:
            continue
        if not search.spend():
            return False
        net.remove_crossings(doomed)
        trace.append(Move("SPLIT", tuple(sorted(k + 1 for k in chosen))))
        return True
    return False


# ----------------------------------------------------------------------
def simplify(D: LinkDiagram, b: Budget | None = None) -> tuple[LinkDiagram, list[Move]]:
    """Greedy R1/R2 with bounded R3 exploration; crossing ids are preserved."""
    b = b or Budget()
    net = Net.from_diagram(D)
    trace: list[Move] = []
    _Search(b).simplify(net, trace)
    return net.to_diagram(), trace


def layered_split(D: LinkDiagram, sel) -> tuple[LinkDiagram, LinkDiagram] | None:
    """(upper, lower) if the selected components are over at every mixed crossing."""
    chosen = _as_indices(D, sel)
    for cid, (u, o) in D.strand_components.items():
        if (u + 1 in chosen) != (o + 1 in chosen) and u + 1 in chosen:
            return None
    rest = [k for k in range(1, D.n_components + 1) if k not in chosen]
    return sublink(D, sorted(chosen)), sublink(D, rest)


def _nontrivial_witness(D: LinkDiagram, simplified: LinkDiagram):
    lk = linking_matrix(D)
    for i, row in enumerate(lk):
        for j, v in enumerate(row):
            if v:
                return {"invariant": "lk", "components": (i + 1, j + 1), "value": v, "expected": 0}
    closed = simplified
    if any(c.kind == STRING for c in simplified.components):
        from .stringlink import closure
        closed = closure(simplified)
    if not closed.components or closed.n_crossings > MAX_CROSSINGS:
        return None
    try:
        V = jones(closed)
    except InvariantError:
        return None
    expected = unlink_jones(closed.n_components)
    if V != expected:
        return {"invariant": "jones", "value": V, "expected": expected}
    return None


def triviality(D: LinkDiagram, b: Budget | None = None) -> TrivialityVerdict:
    """Trivial with a move trace, Nontrivial with an invariant witness, or Unknown."""
    b = b or Budget()
    search = _Search(b)
    net = Net.from_diagram(D)
    trace: list[Move] = []
    while True:
        search.simplify(net, trace)
        if not net.over_in:
            return TrivialityVerdict(TRIVIAL, trace)
        if search.exhausted or not _try_split(search, net, trace):
            break
    witness = _nontrivial_witness(D, net.to_diagram())
    if witness is not None:
        return TrivialityVerdict(NONTRIVIAL, witness=witness)
    report = {"moves": search.moves, "max_moves": b.max_moves, "r3_depth": b.r3_depth,
              "stuck_crossings": net.n_crossings, "budget_exhausted": search.exhausted}
    return TrivialityVerdict(UNKNOWN, report=report)


def replay(D: LinkDiagram, trace) -> LinkDiagram:
    """Apply a move trace, checking every move is legal; returns the result."""
    net = Net.from_diagram(D)
    for m in trace:
        if isinstance(m, str):
            m = Move.parse(m)
        if m.kind == "R1":
            if m.args[0] not in r1_sites(net):
                raise ValueError(f"illegal move {m}")
            net.remove_crossings(set(m.args))
        elif m.kind == "R2":
            if tuple(sorted(m.args)) not in r2_sites(net):
                raise ValueError(f"illegal move {m}")
            net.remove_crossings(set(m.args))
        elif m.kind == "R3":
            face = find_r3_face(net, m.args)
            if face is None:
                raise ValueError(f"illegal move {m}")
            apply_r3(net, face)
        else:
            chosen = {k - 1 for k in m.args}
            if not chosen <= set(net.live_components()):
                raise ValueError(f"illegal move {m}")
            doomed = _split_crossings(net, chosen)
            if doomed is None:
                raise ValueError(f"illegal move {m}")
            net.remove_crossings(doomed)
    return net.to_diagram()


def verify_trace(D: LinkDiagram, trace) -> bool:
    try:
        return replay(D, trace).n_crossings == 0
    except ValueError:
        return False
