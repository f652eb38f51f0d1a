"""Combinatorial link diagrams in PD form.

A crossing is written ``X(a,b,c,d)``: the four arc labels counterclockwise,
starting at the incoming under-arc.  Orientation of every strand is read off
the declared arc sequence of its component, never from label arithmetic.
Component indices and colors are 1-based throughout, matching the
``T ⊂ {1..n}`` convention for sublinks.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable

CIRCLE = "circle"
STRING = "string"

# passage through a crossing: (in_slot, out_slot)
UNDER = (0, 2)
_PASSAGES = ((0, 2), (1, 3), (3, 1))


class cached_property:
    """Per-instance memo without the class-wide lock of functools (3.10/3.11).

    That lock serializes every instance and can deadlock when two threads
    evaluate nested cached properties; a racing recomputation is harmless
    here because every cached value is a pure function of the instance.
    """

    def __init__(self, fn):
        self.fn = fn
        self.name = fn.__name__
        self.__doc__ = fn.__doc__

    def __get__(self, obj, owner=None):
        if obj is None:
            return self
        value = self.fn(obj)
        obj.__dict__[self.name] = value
        return value


class DiagramError(ValueError):
    """Raised for malformed or unrealizable diagram input."""


@dataclass(frozen=True)
class Crossing:
    id: int
    arcs: tuple[int, int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(int(a) for a in self.arcs))
        if len(self.arcs) != 4:
            raise DiagramError(f"crossing {self.id} needs 4 arcs")


@dataclass(frozen=True)
class Component:
    kind: str
    color: int
    arcs: tuple[int, ...] = ()
    # boundary position x_i for string components
    end: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(int(a) for a in self.arcs))
        if self.kind not in (CIRCLE, STRING):
            raise DiagramError(f"unknown component kind {self.kind!r}")
        if self.kind == STRING and not self.arcs:
            raise DiagramError("a string component needs at least one arc")


@dataclass(frozen=True)
class Passage:
    """One traversal of a component through a crossing."""

    crossing: int
    in_slot: int
    out_slot: int
    component: int  # 0-based position in LinkDiagram.components


@dataclass(frozen=True)
class LinkDiagram:
    """Validated, immutable PD diagram with ordered, colored components."""

    crossings: tuple[Crossing, ...] = ()
    components: tuple[Component, ...] = ()
    n_colors: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(sorted(self.crossings, key=lambda c: c.id)))
        object.__setattr__(self, "components", tuple(self.components))
        used = {comp.color for comp in self.components}
        if self.n_colors is None:
            object.__setattr__(self, "n_colors", max(used, default=0))
        for color in used:
            if not 1 <= color <= self.n_colors:
                raise DiagramError(f"undeclared color {color}")
        _validate(self)

    # ------------------------------------------------------------------
    @cached_property
    def _by_id(self) -> dict[int, Crossing]:
        return {c.id: c for c in self.crossings}

    def crossing(self, cid: int) -> Crossing:
        try:
            return self._by_id[cid]
        except KeyError:
            raise KeyError(f"unknown crossing id {cid}") from None

    @property
    def crossing_ids(self) -> tuple[int, ...]:
        return tuple(c.id for c in self.crossings)

    @cached_property
    def passages(self) -> tuple[tuple[Passage, ...], ...]:
        """Per component, the crossing passages in traversal order."""
        return _find_passages(self)

    @cached_property
    def over_in(self) -> dict[int, int]:
        """Slot (1 or 3) where the over-strand enters each crossing."""
        out = {}
        for seq in self.passages:
            for p in seq:
                if p.in_slot != 0:
                    out[p.crossing] = p.in_slot
        return out

    @cached_property
    def signs(self) -> dict[int, int]:
        # over-strand running from slot 4 to slot 2 is a positive crossing
        return {cid: (1 if slot == 3 else -1) for cid, slot in self.over_in.items()}

    def sign(self, cid: int) -> int:
        return self.signs[cid]

    @cached_property
    def strand_components(self) -> dict[int, tuple[int, int]]:
        """crossing id -> (under component, over component), 0-based."""
        under, over = {}, {}
        for k, seq in enumerate(self.passages):
            for p in seq:
                (under if p.in_slot == 0 else over)[p.crossing] = k
        return {cid: (under[cid], over[cid]) for cid in self._by_id}

    def under_component(self, cid: int) -> int:
        """1-based index of the component carrying the under-strand."""
        return self.strand_components[cid][0] + 1

    def over_component(self, cid: int) -> int:
        return self.strand_components[cid][1] + 1

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(c.color for c in self.components)

    @property
    def zero_crossing_unknots(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for comp in self.components:
            if comp.kind == CIRCLE and not comp.arcs:
                counts[comp.color] = counts.get(comp.color, 0) + 1
        return counts

    def writhe(self) -> int:
        return sum(self.signs.values())

    def self_crossings(self, component: int) -> list[int]:
        k = component - 1
        return [cid for cid, (u, o) in self.strand_components.items() if u == o == k]

    def __str__(self):
        return serialize(self)


# ----------------------------------------------------------------------
# validation


def _label_positions(crossings: Iterable[Crossing]) -> dict[int, list[tuple[int, int]]]:
    pos: dict[int, list[tuple[int, int]]] = {}
    for c in crossings:
        for s, a in enumerate(c.arcs):
            pos.setdefault(a, []).append((c.id, s))
    return pos


def _transitions(comp: Component) -> list[tuple[int, int]]:
    arcs = comp.arcs
    if comp.kind == CIRCLE:
        return [(arcs[j], arcs[(j + 1) % len(arcs)]) for j in range(len(arcs))] if arcs else []
    return [(arcs[j], arcs[j + 1]) for j in range(len(arcs) - 1)]


def _find_passages(D: LinkDiagram) -> tuple[tuple[Passage, ...], ...]:
    pos = _label_positions(D.crossings)
    by_id = {c.id: c for c in D.crossings}
    jobs = []  # (component, transition index, candidates)
    for k, comp in enumerate(D.components):
        for j, (x, y) in enumerate(_transitions(comp)):
            cands = []
            for cid, s in pos.get(x, ()):
                for s_in, s_out in _PASSAGES:
                    if s == s_in and by_id[cid].arcs[s_out] == y:
                        cands.append((cid, s_in, s_out))
            if not cands:
                raise DiagramError(
                    f"inconsistent strand continuation: arc {x} -> {y} of component {k + 1}")
            jobs.append((k, j, sorted(cands)))

    # each crossing hosts one under passage and one over passage
    used_under: set[int] = set()
    used_over: set[int] = set()
    chosen: dict[tuple[int, int], tuple[int, int, int]] = {}
    order = sorted(range(len(jobs)), key=lambda i: len(jobs[i][2]))

    def solve(i: int) -> bool:
        if i == len(order):
            return True
        k, j, cands = jobs[order[i]]
        for cid, s_in, s_out in cands:
            pool = used_under if s_in == 0 else used_over
            if cid in pool:
                continue
            pool.add(cid)
            chosen[(k, j)] = (cid, s_in, s_out)
            if solve(i + 1):
                return True
            pool.discard(cid)
        return False

    if not solve(0):
        raise DiagramError("inconsistent strand continuation: passages cannot be matched")
    missing = set(by_id) - (used_under & used_over)
    if missing:
        raise DiagramError(f"crossings not traversed by any component: {sorted(missing)}")
    out = []
    for k, comp in enumerate(D.components):
        seq = []
        for j in range(len(_transitions(comp))):
            cid, s_in, s_out = chosen[(k, j)]
            seq.append(Passage(cid, s_in, s_out, k))
        out.append(tuple(seq))
    return tuple(out)


def _validate(D: LinkDiagram) -> None:
    ids = [c.id for c in D.crossings]
    if len(set(ids)) != len(ids):
        raise DiagramError("duplicate crossing ids")
    pos = _label_positions(D.crossings)
    owner: dict[int, int] = {}
    for k, comp in enumerate(D.components):
        for a in comp.arcs:
            if a in owner:
                raise DiagramError(f"arc {a} assigned to two components")
            owner[a] = k
    for a, occ in pos.items():
        if a not in owner:
            raise DiagramError(f"arc {a} belongs to no component")
    for k, comp in enumerate(D.components):
        for j, a in enumerate(comp.arcs):
            expected = 2
            if comp.kind == STRING:
                expected = 2 - (j == 0) - (j == len(comp.arcs) - 1)
            got = len(pos.get(a, ()))
            if got != expected:
                raise DiagramError(f"arc label {a} used {got} times, expected {expected}")
    ends = [c.end for c in D.components if c.kind == STRING]
    if any(e is not None for e in ends) and sorted(ends) != list(range(1, len(ends) + 1)):
        raise DiagramError("string endpoints must be a permutation of 1..m")
    D.passages  # raises on inconsistent continuation
    _check_planar(D)


def _dart_map(D: LinkDiagram, close_strings: bool = True) -> dict[tuple[int, int], tuple[int, int]]:
    """Directed arc map: out-slot -> in-slot, closing strings end to start."""
    nxt: dict[tuple[int, int], tuple[int, int]] = {}
    for k, seq in enumerate(D.passages):
        comp = D.components[k]
        if not seq:
            continue
        n = len(seq)
        for j in range(n - 1):
            nxt[(seq[j].crossing, seq[j].out_slot)] = (seq[j + 1].crossing, seq[j + 1].in_slot)
        if comp.kind == CIRCLE or close_strings:
            nxt[(seq[-1].crossing, seq[-1].out_slot)] = (seq[0].crossing, seq[0].in_slot)
    return nxt


def _check_planar(D: LinkDiagram) -> None:
    if not D.crossings:
        return
    nxt = _dart_map(D)
    nbr = dict(nxt)
    nbr.update({v: k for k, v in nxt.items()})
    if len(nbr) != 4 * len(D.crossings):
        raise DiagramError("dangling crossing slots")
    seen: set[tuple[int, int]] = set()
    faces = 0
    for start in nbr:
        if start in seen:
            continue
        faces += 1
        dart = start
        while dart not in seen:
            seen.add(dart)
            cid, s = nbr[dart]
            dart = (cid, (s + 1) % 4)
    # connected pieces of the crossing graph
    parent = {c.id: c.id for c in D.crossings}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (c1, _), (c2, _) in nbr.items():
        parent[find(c1)] = find(c2)
    pieces = len({find(c) for c in parent})
    if faces != 2 * pieces + len(D.crossings):
        raise DiagramError(
            f"planarity (Euler) failure: V={len(D.crossings)} E={2 * len(D.crossings)} "
            f"F={faces} over {pieces} piece(s)")


# ----------------------------------------------------------------------
# selectors and transformations


@dataclass(frozen=True)
class ComponentSelector:
    """A non-empty (or empty, meaning 'nothing') set of 1-based indices or colors."""

    values: frozenset[int] = field(default_factory=frozenset)
    mode: str = "index"

    def __post_init__(self):
        object.__setattr__(self, "values", frozenset(int(v) for v in self.values))
        if self.mode not in ("index", "color"):
            raise ValueError(f"unknown selector mode {self.mode!r}")

    @classmethod
    def indices(cls, *values: int) -> "ComponentSelector":
        return cls(frozenset(values), "index")

    @classmethod
    def colors(cls, *values: int) -> "ComponentSelector":
        return cls(frozenset(values), "color")

    def resolve(self, D: LinkDiagram) -> frozenset[int]:
        """Return the selected 1-based component indices of ``D``."""
        if self.mode == "index":
            bad = [v for v in self.values if not 1 <= v <= D.n_components]
            if bad:
                raise DiagramError(f"selector references missing component(s) {sorted(bad)}")
            return self.values
        present = set(D.colors)
        bad = [v for v in self.values if v not in present]
        if bad:
            raise DiagramError(f"selector references missing color(s) {sorted(bad)}")
        return frozenset(i + 1 for i, c in enumerate(D.colors) if c in self.values)


def _as_indices(D: LinkDiagram, sel) -> frozenset[int]:
    if isinstance(sel, ComponentSelector):
        return sel.resolve(D)
    return ComponentSelector(frozenset(sel)).resolve(D)


def change_crossing_arcs(c: Crossing, over_in: int) -> Crossing:
    a, b, cc, d = c.arcs
    # new incoming under-arc is the old incoming over-arc
    if over_in == 3:
        return Crossing(c.id, (d, a, b, cc))
    return Crossing(c.id, (b, cc, d, a))


def crossing_change(D: LinkDiagram, ids: Iterable[int]) -> LinkDiagram:
    """Swap over and under at each listed crossing; all labels are kept."""
    ids = set(ids)
    unknown = ids - set(D.crossing_ids)
    if unknown:
        raise DiagramError(f"unknown crossing id(s) {sorted(unknown)}")
    if not ids:
        return D
    over_in = D.over_in
    new = [change_crossing_arcs(c, over_in[c.id]) if c.id in ids else c for c in D.crossings]
    return LinkDiagram(tuple(new), D.components, D.n_colors)


def mirror(D: LinkDiagram) -> LinkDiagram:
    return crossing_change(D, D.crossing_ids)


def delete_components(D: LinkDiagram, sel) -> LinkDiagram:
    """Delete the selected components; surviving arcs are merged and relabeled."""
    from .net import Net

    doomed = _as_indices(D, sel)
    if not doomed:
        return D
    net = Net.from_diagram(D)
    net.delete_components({k - 1 for k in doomed})
    return net.to_diagram()


def sublink(D: LinkDiagram, keep) -> LinkDiagram:
    keep = _as_indices(D, keep)
    return delete_components(D, set(range(1, D.n_components + 1)) - set(keep))


def relabel_crossings(D: LinkDiagram, mapping: dict[int, int]) -> LinkDiagram:
    new = [Crossing(mapping.get(c.id, c.id), c.arcs) for c in D.crossings]
    return LinkDiagram(tuple(new), D.components, D.n_colors)


def permute_components(D: LinkDiagram, order: list[int]) -> LinkDiagram:
    """Reorder components; ``order`` lists old 1-based indices in new order."""
    if sorted(order) != list(range(1, D.n_components + 1)):
        raise DiagramError("order must be a permutation of the component indices")
    return LinkDiagram(D.crossings, tuple(D.components[i - 1] for i in order), D.n_colors)


def recolor(D: LinkDiagram, colors: list[int]) -> LinkDiagram:
    if len(colors) != D.n_components:
        raise DiagramError("one color per component is required")
    comps = tuple(Component(c.kind, col, c.arcs, c.end) for c, col in zip(D.components, colors))
    return LinkDiagram(D.crossings, comps, max(colors, default=0))


def disjoint_union(D1: LinkDiagram, D2: LinkDiagram) -> LinkDiagram:
    """Place ``D2`` beside ``D1``; labels and ids of ``D2`` are shifted."""
    lab = max((a for c in D1.crossings for a in c.arcs), default=0)
    lab = max([lab] + [a for comp in D1.components for a in comp.arcs])
    cid = max(D1.crossing_ids, default=0)
    xs = list(D1.crossings) + [
        Crossing(c.id + cid, tuple(a + lab for a in c.arcs)) for c in D2.crossings]
    comps = list(D1.components) + [
        Component(c.kind, c.color, tuple(a + lab for a in c.arcs), c.end) for c in D2.components]
    return LinkDiagram(tuple(xs), tuple(comps), max(D1.n_colors, D2.n_colors))


# ----------------------------------------------------------------------
# text and JSON formats

_X_RE = re.compile(r"^X(\d*)\((-?\d+),(-?\d+),(-?\d+),(-?\d+)\)$")
_O_RE = re.compile(r"^O\((\d+)\)$")


def parse_pd(text: str) -> LinkDiagram:
    """Parse the diagram grammar (or its JSON equivalent)."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return from_json(json.loads(stripped))
    crossings: list[tuple[int | None, tuple[int, ...]]] = []
    headers: dict[int, Component] = {}
    free_colors: list[int] = []
    n_colors = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == "component":
            idx, comp = _parse_header(words, lineno)
            if idx in headers:
                raise DiagramError(f"line {lineno}: component {idx} declared twice")
            headers[idx] = comp
            continue
        if words[0] == "colors":
            if len(words) != 2 or not words[1].isdigit():
                raise DiagramError(f"line {lineno}: syntax error in colors line")
            n_colors = int(words[1])
            continue
        for w in re.sub(r"\s*,\s*", ",", line).split():
            m = _X_RE.match(w)
            if m:
                cid = int(m.group(1)) if m.group(1) else None
                crossings.append((cid, tuple(int(g) for g in m.groups()[1:])))
                continue
            m = _O_RE.match(w)
            if m:
                free_colors.append(int(m.group(1)))
                continue
            raise DiagramError(f"line {lineno}: syntax error at {w!r}")
    xs = []
    for pos, (cid, arcs) in enumerate(crossings, 1):
        xs.append(Crossing(cid if cid is not None else pos, arcs))
    if headers:
        if sorted(headers) != list(range(1, len(headers) + 1)):
            raise DiagramError("component headers must be numbered 1..k")
        comps = [headers[i] for i in sorted(headers)]
    else:
        comps = _infer_components(xs)
    comps += [Component(CIRCLE, col) for col in free_colors]
    if n_colors is not None:
        for comp in comps:
            if not 1 <= comp.color <= n_colors:
                raise DiagramError(f"undeclared color {comp.color}")
        if {c.color for c in comps} != set(range(1, n_colors + 1)):
            raise DiagramError("every declared color must be used")
    return LinkDiagram(tuple(xs), tuple(comps), n_colors)


def _parse_header(words: list[str], lineno: int) -> tuple[int, Component]:
    if len(words) < 2 or not words[1].isdigit():
        raise DiagramError(f"line {lineno}: syntax error in component header")
    fields = {}
    for w in words[2:]:
        if "=" not in w:
            raise DiagramError(f"line {lineno}: syntax error at {w!r}")
        k, v = w.split("=", 1)
        fields[k] = v
    unknown = set(fields) - {"kind", "color", "arcs", "end"}
    if unknown:
        raise DiagramError(f"line {lineno}: unknown header field(s) {sorted(unknown)}")
    try:
        arcs_txt = fields.get("arcs", "")
        arcs = tuple(int(a) for a in arcs_txt.split(",")) if arcs_txt not in ("", "-") else ()
        comp = Component(fields.get("kind", CIRCLE), int(fields.get("color", words[1])), arcs,
                         int(fields["end"]) if "end" in fields else None)
    except ValueError as exc:
        raise DiagramError(f"line {lineno}: {exc}") from None
    return int(words[1]), comp


def _infer_components(xs: list[Crossing]) -> list[Component]:
    """Trace closed components of a header-less PD code."""
    pos = _label_positions(xs)
    by_id = {c.id: c for c in xs}
    for a, occ in pos.items():
        if len(occ) != 2:
            raise DiagramError(f"arc label {a} used {len(occ)} times, expected 2")
    other = {1: 3, 3: 1, 0: 2, 2: 0}
    seen: set[int] = set()
    comps = []
    # components with an under-passage fix their own direction, so trace
    # those first; the rest are over-only and either direction is valid
    order = sorted(pos, key=lambda a: (all(s != 0 for _, s in pos[a]), a))
    for start in order:
        if start in seen:
            continue
        # prefer a start where the arc is known to leave an under-passage
        occ = pos[start]
        if occ[0][1] == 0 or occ[1][1] == 0:
            dep = occ[1] if occ[0][1] == 0 else occ[0]
        else:
            dep = next((p for p in occ if p[1] == 2), min(occ))
        arcs = []
        label, (cid, s) = start, dep
        while label not in seen:
            seen.add(label)
            arcs.append(label)
            a, b = pos[label]
            here = (cid, s)
            cid, s = b if a == here else a  # arrive at the other end
            out_slot = other[s]
            if s == 2:
                raise DiagramError("inconsistent strand continuation while tracing")
            s = out_slot
            label = by_id[cid].arcs[s]
        comps.append(Component(CIRCLE, len(comps) + 1, tuple(arcs)))
    return comps


def serialize(D: LinkDiagram) -> str:
    lines = []
    if D.n_colors != max(D.colors, default=0):
        lines.append(f"colors {D.n_colors}")
    for i, comp in enumerate(D.components, 1):
        arcs = ",".join(str(a) for a in comp.arcs) or "-"
        end = f" end={comp.end}" if comp.end is not None else ""
        lines.append(f"component {i} kind={comp.kind} color={comp.color} arcs={arcs}{end}")
    plain = [c.id for c in D.crossings] == list(range(1, D.n_crossings + 1))
    terms = []
    for c in D.crossings:
        tag = "" if plain else str(c.id)
        terms.append(f"X{tag}({','.join(str(a) for a in c.arcs)})")
    if terms:
        lines.append(" ".join(terms))
    return "\n".join(lines) + "\n"


def to_json(D: LinkDiagram) -> dict:
    return {
        "n_colors": D.n_colors,
        "crossings": [{"id": c.id, "arcs": list(c.arcs)} for c in D.crossings],
        "components": [
            {"kind": c.kind, "color": c.color, "arcs": list(c.arcs),
             **({"end": c.end} if c.end is not None else {})}
            for c in D.components],
    }


def from_json(data: dict) -> LinkDiagram:
    try:
        xs = tuple(Crossing(int(c["id"]), tuple(c["arcs"])) for c in data.get("crossings", []))
        comps = tuple(Component(c["kind"], int(c["color"]), tuple(c.get("arcs", ())), c.get("end"))
                      for c in data.get("components", []))
    except (KeyError, TypeError) as exc:
        raise DiagramError(f"malformed structured diagram: {exc}") from None
    if not comps and xs:
        comps = tuple(_infer_components(list(xs)))
    return LinkDiagram(xs, comps, data.get("n_colors"))
