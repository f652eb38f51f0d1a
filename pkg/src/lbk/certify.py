"""n-triviality certificates: generation from the Brunnian constructions and
exhaustive verification.

A certificate is a diagram plus disjoint crossing sets S_1..S_n.  It claims
that changing every crossing in any nonempty union of the sets gives a
trivial link.  Verification checks all 2^n - 1 unions; Unknown verdicts make
the result inconclusive and never count as a refutation.
"""
from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .diagram import (CIRCLE, ComponentSelector, DiagramError, LinkDiagram, crossing_change,
                      delete_components, mirror, parse_pd, permute_components, serialize)
from .invariants import jones
from .simplify import NONTRIVIAL, TRIVIAL, UNKNOWN, Budget, TrivialityVerdict, triviality
from .twist import TwistError, detect_twist_site, twist_with_bundle

VERIFIED = "verified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


class CertificateError(ValueError):
    """Malformed certificate or invalid generator input."""


class NotBrunnian(CertificateError):
    def __init__(self, verdicts):
        self.verdicts = verdicts
        bad = [k for k, v in verdicts.items() if v.status == NONTRIVIAL]
        super().__init__(f"deleting {bad[0]} leaves a nontrivial link ({verdicts[bad[0]].describe()})")


class NotColorBrunnian(NotBrunnian):
    pass


class Inconclusive(CertificateError):
    def __init__(self, message, verdicts=None):
        self.verdicts = verdicts
        super().__init__(message)


class NoTrivializingSet(CertificateError):
    pass


# ----------------------------------------------------------------------
@dataclass(frozen=True)
class TrivialityCertificate:
    base: LinkDiagram
    sets: tuple[frozenset[int], ...]
    provenance: str = "manual"
    R: frozenset[int] | None = None
    # extra provenance, e.g. the component permutation or set colors
    notes: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        if self.R is not None:
            object.__setattr__(self, "R", frozenset(self.R))

    @property
    def level(self) -> int:
        return len(self.sets)

    def validate(self) -> None:
        ids = set(self.base.crossing_ids)
        for i, s in enumerate(self.sets, 1):
            if s - ids:
                raise CertificateError(f"S{i} has unknown crossing id(s) {sorted(s - ids)}")
        for (i, a), (j, b) in itertools.combinations(enumerate(self.sets, 1), 2):
            if a & b:
                raise CertificateError(f"S{i} and S{j} overlap in {sorted(a & b)}")
        if self.R is not None:
            if self.R - ids:
                raise CertificateError(f"R has unknown crossing id(s) {sorted(self.R - ids)}")
            for i, s in enumerate(self.sets, 1):
                if s & self.R:
                    raise CertificateError(f"R meets S{i} in {sorted(s & self.R)}")

    def diagram_for(self, T) -> LinkDiagram:
        """L(T): change every crossing of the sets indexed by T (1-based)."""
        ids = set()
        for i in T:
            ids |= self.sets[i - 1]
        return crossing_change(self.base, ids)

    def to_text(self) -> str:
        lines = ["# n-triviality certificate", f"provenance = {self.provenance}", f"level = {self.level}"]
        for i, s in enumerate(self.sets, 1):
            lines.append(f"S{i} = {_fmt_ids(s)}")
        if self.R is not None:
            lines.append(f"R = {_fmt_ids(self.R)}")
        for k, v in self.notes:
            lines.append(f"{k} = {v}")
        lines.append("base:")
        return "\n".join(lines) + "\n" + serialize(self.base)

    def to_json(self) -> dict:
        from .diagram import to_json
        out = {"provenance": self.provenance, "level": self.level,
               "sets": [sorted(s) for s in self.sets], "base": to_json(self.base)}
        if self.R is not None:
            out["R"] = sorted(self.R)
        if self.notes:
            out["notes"] = dict(self.notes)
        return out


def _fmt_ids(ids) -> str:
    return "[" + ", ".join(str(i) for i in sorted(ids)) + "]"


def _parse_ids(text: str, where: str) -> frozenset[int]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise CertificateError(f"{where}: expected [id, ...]")
    body = text[1:-1].strip()
    try:
        return frozenset(int(x) for x in body.split(",")) if body else frozenset()
    except ValueError:
        raise CertificateError(f"{where}: crossing ids must be integers") from None


def parse_certificate(text: str) -> TrivialityCertificate:
    """Read the text format written by ``TrivialityCertificate.to_text`` (or JSON)."""
    if text.lstrip().startswith("{"):
        from .diagram import from_json
        data = json.loads(text)
        try:
            return TrivialityCertificate(from_json(data["base"]), tuple(frozenset(s) for s in data["sets"]),
                                         data.get("provenance", "manual"),
                                         frozenset(data["R"]) if "R" in data else None,
                                         tuple(sorted((k, str(v)) for k, v in data.get("notes", {}).items())))
        except KeyError as exc:
            raise CertificateError(f"missing field {exc}") from None
    head, sep, body = text.partition("\nbase:")
    if not sep:
        raise CertificateError("certificate has no 'base:' section")
    fields: dict[str, str] = {}
    for n, line in enumerate(head.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, value = line.partition("=")
        if not eq:
            raise CertificateError(f"line {n}: expected 'key = value'")
        fields[key.strip()] = value.strip()
    try:
        level = int(fields.pop("level"))
    except (KeyError, ValueError):
        raise CertificateError("certificate needs an integer 'level'") from None
    sets = []
    for i in range(1, level + 1):
        if f"S{i}" not in fields:
            raise CertificateError(f"missing S{i}")
        sets.append(_parse_ids(fields.pop(f"S{i}"), f"S{i}"))
    extra = [k for k in fields if k.startswith("S") and k[1:].isdigit()]
    if extra:
        raise CertificateError(f"sets beyond level {level}: {', '.join(sorted(extra))}")
    R = _parse_ids(fields.pop("R"), "R") if "R" in fields else None
    provenance = fields.pop("provenance", "manual")
    try:
        base = parse_pd(body.lstrip("\n"))
    except DiagramError as exc:
        raise CertificateError(f"base diagram: {exc}") from None
    return TrivialityCertificate(base, tuple(sets), provenance, R, tuple(fields.items()))


# ----------------------------------------------------------------------
@dataclass
class VerificationReport:
    results: list[tuple[tuple[int, ...], TrivialityVerdict]]
    overall: str
    timing: float = field(default=0.0, compare=False)

    def to_text(self, timing: bool = False) -> str:
        lines = []
        for T, v in self.results:
            lines.append(f"T = {{{','.join(map(str, T))}}}: {v.describe()}")
        lines.append(f"overall: {self.overall}")
        if timing:
            lines.append(f"seconds: {self.timing:.3f}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        out = []
        for T, v in self.results:
            entry = {"T": list(T), "status": v.status}
            if v.status == TRIVIAL:
                entry["trace"] = [str(m) for m in v.trace]
            elif v.status == NONTRIVIAL:
                entry["witness"] = {k: str(x) for k, x in v.witness.items()}
            else:
                entry["report"] = v.report
            out.append(entry)
        return {"subsets": out, "overall": self.overall}


def subsets(level: int) -> list[tuple[int, ...]]:
    """Nonempty subsets of 1..level, by size and then lexicographically."""
    return [T for r in range(1, level + 1) for T in itertools.combinations(range(1, level + 1), r)]


def verify_certificate(c: TrivialityCertificate, b: Budget | None = None,
                       workers: int | None = None) -> VerificationReport:
    """Decide L(T) for every nonempty T.

    Subsets are evaluated on a thread pool when ``workers`` > 1; the report
    lists them in the fixed order of ``subsets`` whatever the completion
    order.
    """
    c.validate()
    b = b or Budget.default()
    start = time.perf_counter()
    Ts = subsets(c.level)

    def run(T):
        return triviality(c.diagram_for(T), b)

    if workers and workers > 1 and len(Ts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(run, Ts))
    else:
        verdicts = [run(T) for T in Ts]
    statuses = {v.status for v in verdicts}
    if NONTRIVIAL in statuses:
        overall = REFUTED
    elif statuses <= {TRIVIAL}:
        overall = VERIFIED
    else:
        overall = INCONCLUSIVE
    return VerificationReport(list(zip(Ts, verdicts)), overall, time.perf_counter() - start)


# ----------------------------------------------------------------------
def brunnian_verdicts(D: LinkDiagram, b: Budget | None = None, by_color: bool = False) -> dict[int, TrivialityVerdict]:
    """Verdict for the link left after deleting each component (or color)."""
    b = b or Budget.default()
    keys = sorted(set(D.colors)) if by_color else range(1, D.n_components + 1)
    mode = ComponentSelector.colors if by_color else ComponentSelector.indices
    return {k: triviality(delete_components(D, mode(k)), b) for k in keys}


def _require_brunnian(D, b, by_color=False):
    verdicts = brunnian_verdicts(D, b, by_color)
    statuses = {v.status for v in verdicts.values()}
    if NONTRIVIAL in statuses:
        raise (NotColorBrunnian if by_color else NotBrunnian)(verdicts)
    if UNKNOWN in statuses:
        raise Inconclusive("a sublink could not be decided within the budget", verdicts)
    return verdicts


def under_crossings(D: LinkDiagram, components) -> frozenset[int]:
    """Crossings whose under-strand lies on one of the 1-based ``components``."""
    ks = {k - 1 for k in components}
    return frozenset(cid for cid, (u, _) in D.strand_components.items() if u in ks)


def _components_of_color(D, color):
    return [i for i, c in enumerate(D.colors, 1) if c == color]


def _finish(cert: TrivialityCertificate, b: Budget, check: bool) -> TrivialityCertificate:
    cert.validate()
    if check:
        report = verify_certificate(cert, b)
        if report.overall == INCONCLUSIVE:
            raise Inconclusive("generated certificate could not be verified within the budget")
        if report.overall == REFUTED:
            raise CertificateError("generated certificate was refuted; the input is not in normal form")
    return cert


def thm1_certificate(D: LinkDiagram, b: Budget | None = None, check: bool = True) -> TrivialityCertificate:
    """Level n-1 certificate for a Brunnian link of n circle components.

    S_i collects every crossing whose under-strand is on component i,
    self-crossings included, for i = 1..n-1.
    """
    b = b or Budget.default()
    n = D.n_components
    if n < 2 or any(c.kind != CIRCLE for c in D.components):
        raise CertificateError("need at least two circle components")
    _require_brunnian(D, b)
    sets = tuple(under_crossings(D, [i]) for i in range(1, n))
    return _finish(TrivialityCertificate(D, sets, "thm1"), b, check)


def thm1_extended_check(D: LinkDiagram, b: Budget | None = None) -> dict:
    """Add S_n to the Theorem 1 sets and test the extra claims.

    Every proper nonempty T should give a trivial link, and changing all n
    sets changes every crossing, giving the mirror image.
    """
    b = b or Budget.default()
    n = D.n_components
    cert = TrivialityCertificate(D, tuple(under_crossings(D, [i]) for i in range(1, n + 1)), "thm1-extended")
    proper = {}
    for T in subsets(n):
        if len(T) < n:
            proper[T] = triviality(cert.diagram_for(T), b)
    full = cert.diagram_for(range(1, n + 1))
    return {"proper": proper,
            "proper_trivial": all(v.status == TRIVIAL for v in proper.values()),
            "full_is_mirror": jones(full) == jones(mirror(D))}


def self_crossings_of(D: LinkDiagram, components) -> list[int]:
    ks = {k - 1 for k in components}
    return sorted(cid for cid, (u, o) in D.strand_components.items() if u in ks and o in ks)


def _search_R(D, candidates, max_size, b):
    if triviality(D, b).status == TRIVIAL:
        return frozenset()
    for size in range(1, max_size + 1):
        for R in itertools.combinations(candidates, size):
            if triviality(crossing_change(D, R), b).status == TRIVIAL:
                return frozenset(R)
    return None


def find_trivializing_self_set(D: LinkDiagram, color: int, max_size: int = 2,
                              b: Budget | None = None) -> frozenset[int] | None:
    """Smallest set of same-color crossings whose change trivializes D.

    Candidates are crossings with both strands of ``color``; sizes are tried
    in increasing order and ids lexicographically.  Returns the empty set if
    D is already trivial and None if the search runs out.
    """
    b = b or Budget.default()
    if color not in D.colors and D.n_components:
        raise CertificateError(f"no component has color {color}")
    comps = _components_of_color(D, color)
    return _search_R(D, self_crossings_of(D, comps), max_size, b)


def thm2_certificate(D: LinkDiagram, ht_component: int | None = None, R=None,
                     b: Budget | None = None, max_size: int = 2, check: bool = True) -> TrivialityCertificate:
    """Level n certificate for a Brunnian link with a homotopically trivial component.

    The chosen component is moved to the last position first; the order
    used is recorded in the certificate notes.
    """
    b = b or Budget.default()
    n = D.n_components
    if n < 2 or any(c.kind != CIRCLE for c in D.components):
        raise CertificateError("need at least two circle components")
    ht = n if ht_component is None else ht_component
    if not 1 <= ht <= n:
        raise CertificateError(f"no component {ht}")
    notes = ()
    if ht != n:
        order = [k for k in range(1, n + 1) if k != ht] + [ht]
        D = permute_components(D, order)
        notes = (("order", ",".join(map(str, order))),)
    _require_brunnian(D, b)
    own = self_crossings_of(D, [n])
    if R is None:
        R = _search_R(D, own, max_size, b)
        if R is None:
            raise NoTrivializingSet(f"no set of at most {max_size} self-crossings of component {ht} trivializes the link")
    else:
        R = frozenset(R)
        if R - set(own):
            raise CertificateError(f"R must consist of self-crossings of component {ht}")
        if triviality(crossing_change(D, R), b).status != TRIVIAL:
            raise NoTrivializingSet("changing R does not give a recognizably trivial link")
    sets = [under_crossings(D, [i]) for i in range(1, n)]
    sets.append(under_crossings(D, [n]) - R)
    return _finish(TrivialityCertificate(D, tuple(sets), "thm2", R, notes), b, check)


def _framing_for(framings, color):
    if isinstance(framings, int):
        return framings
    if color not in framings:
        raise CertificateError(f"no framing given for color {color}")
    return framings[color]


def twisted_link(D: LinkDiagram, U, framings) -> tuple[LinkDiagram, dict[int, frozenset[int]], frozenset[int], dict]:
    """L^U: twist along and delete every component whose color is in U.

    Returns the diagram, the undo set per color, all crossings the twists
    introduced, and the colors of the strands that passed through the
    twisted disks.
    """
    U = set(U)
    undo = {c: frozenset() for c in U}
    pierced_by = set()
    targets = [i for i, c in enumerate(D.colors, 1) if c in U]
    before = set(D.crossing_ids)
    # highest index first so the remaining indices stay valid
    for idx in sorted(targets, reverse=True):
        comp = D.components[idx - 1]
        if comp.kind != CIRCLE:
            raise CertificateError(f"component {idx} (color {comp.color}) is not a circle")
        site = detect_twist_site(D, idx)
        if site is None:
            raise CertificateError(f"component {idx} (color {comp.color}) has no twist site")
        for lo, _ in site.chords:
            pierced_by.add(D.colors[D.strand_components[lo[0]][0 if lo[1] in (0, 2) else 1]])
        try:
            D, u, _ = twist_with_bundle(D, site, _framing_for(framings, comp.color))
        except TwistError as exc:
            raise CertificateError(str(exc)) from None
        undo[comp.color] = undo[comp.color] | u
    introduced = frozenset(set(D.crossing_ids) - before)
    return D, undo, introduced, {"pierced_by": sorted(pierced_by)}


def thmG_certificate(D: LinkDiagram, U=(), framings=None, ht_color: int | None = None,
                     b: Budget | None = None, max_size: int = 2, check: bool = True) -> TrivialityCertificate:
    """Certificate for the twisted colored link L^U.

    Colors in U get the twist undo sets.  The remaining colors get their
    under-crossings, except the top color, which is left out (level n-1)
    or, when ``ht_color`` is homotopically trivial, kept minus R and minus
    every twist crossing (level n).  Without ``ht_color`` the top color is
    the one whose strands pierce the twisted disks if there is exactly one,
    otherwise the highest color outside U.
    """
    b = b or Budget.default()
    colors = sorted(set(D.colors))
    U = set(U)
    if U - set(colors):
        raise CertificateError(f"unknown color(s) {sorted(U - set(colors))}")
    if U == set(colors):
        raise CertificateError("U must leave at least one color out")
    if ht_color is not None and (ht_color in U or ht_color not in colors):
        raise CertificateError("ht_color must be a color outside U")
    _require_brunnian(D, b, by_color=True)
    R = None
    if ht_color is not None:
        R = _search_R(D, self_crossings_of(D, _components_of_color(D, ht_color)), max_size, b)
        if R is None:
            raise NoTrivializingSet(f"no set of at most {max_size} crossings of color {ht_color} trivializes the link")
    LU, undo, introduced, info = twisted_link(D, U, framings if framings is not None else {})
    rest = [c for c in colors if c not in U]
    if ht_color is not None:
        top = ht_color
    elif U and len(info["pierced_by"]) == 1 and info["pierced_by"][0] in rest:
        top = info["pierced_by"][0]
    else:
        top = rest[-1]
    sets, set_colors = [], []
    for c in colors:
        if c == top:
            continue
        sets.append(undo[c] if c in U else under_crossings(LU, _components_of_color(LU, c)))
        set_colors.append(c)
    if ht_color is not None:
        sets.append(under_crossings(LU, _components_of_color(LU, top)) - R - introduced)
        set_colors.append(top)
    notes = [("colors", ",".join(map(str, set_colors)))]
    if U:
        notes.append(("twisted", ",".join(f"{c}:{_framing_for(framings, c)}" for c in sorted(U))))
    cert = TrivialityCertificate(LU, tuple(sets), "thmG", R, tuple(notes))
    return _finish(cert, b, check)
