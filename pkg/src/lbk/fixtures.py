"""Bundled example diagrams.

The multi-component fixtures were produced by projecting explicit polygonal
models and are frozen here as text.  BORROMEAN is drawn so that components
1 and 3 are disjoint flat circles and component 2 threads through both
disks in the commutator pattern ``a b a^-1 b^-1``; each circle is then a
twist site with two passages.
"""
from __future__ import annotations

from .diagram import LinkDiagram, mirror, parse_pd

UNKNOT_TEXT = "O(1)\n"

HOPF_TEXT = """\
component 1 kind=circle color=1 arcs=1,2
component 2 kind=circle color=2 arcs=3,4
X(1,3,2,4) X(3,1,4,2)
"""

TREFOIL_TEXT = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)\n"

FIGURE8_TEXT = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)\n"

BORROMEAN_TEXT = """\
component 1 kind=circle color=1 arcs=1,2,3,4
component 2 kind=circle color=2 arcs=5,6,7,8,9,10,11,12
component 3 kind=circle color=3 arcs=13,14,15,16
X(1,11,2,10) X(2,5,3,6) X(6,3,7,4) X(9,1,10,4) X(8,14,9,15) X(15,7,16,8) X(11,14,12,13) X(16,5,13,12)
"""

# component 2 clasps itself once (crossing 5); changing it unlinks
WHITEHEAD_TEXT = """\
component 1 kind=circle color=1 arcs=1,2,3,4
component 2 kind=circle color=2 arcs=5,6,7,8,9,10
X(8,2,9,1) X(2,5,3,6) X(6,3,7,4) X(4,10,1,9) X(10,7,5,8)
"""

# three circles in a row, each Hopf-linked to its neighbours
CHAIN3_TEXT = """\
component 1 kind=circle color=1 arcs=1,2
component 2 kind=circle color=2 arcs=3,4,5,6
component 3 kind=circle color=3 arcs=7,8
X(4,2,5,1) X(2,6,1,5) X(3,7,4,8) X(8,6,7,3)
"""

# BORROMEAN with component 1 doubled by a concentric copy of the same color
DOUBLED_BORROMEAN_TEXT = """\
component 1 kind=circle color=1 arcs=1,2,3,4
component 2 kind=circle color=1 arcs=5,6,7,8
component 3 kind=circle color=2 arcs=9,10,11,12,13,14,15,16,17,18,19,20
component 4 kind=circle color=3 arcs=21,22,23,24
X(1,19,2,18) X(2,9,3,10) X(12,3,13,4) X(15,1,16,4) X(5,18,6,17) X(6,10,7,11) X(11,7,12,8) X(16,5,17,8) X(14,22,15,23) X(23,13,24,14) X(19,22,20,21) X(24,9,21,20)
"""

# two circles stacked by a single R2 pair
UNLINK2_R2_TEXT = """\
component 1 kind=circle color=1 arcs=1,2
component 2 kind=circle color=2 arcs=3,4
X(4,1,3,2) X(3,1,4,2)
"""

# three circles, the middle one clasped to each neighbour by an R2 pair
UNLINK3_R2_TEXT = """\
component 1 kind=circle color=1 arcs=1,2
component 2 kind=circle color=2 arcs=3,4,5,6
component 3 kind=circle color=3 arcs=7,8
X(1,4,2,5) X(2,6,1,5) X(7,4,8,3) X(8,6,7,3)
"""


def _load(text: str) -> LinkDiagram:
    return parse_pd(text)


UNKNOT = _load(UNKNOT_TEXT)
HOPF = _load(HOPF_TEXT)
TREFOIL = _load(TREFOIL_TEXT)
TREFOIL_NEG = mirror(TREFOIL)
FIGURE8 = _load(FIGURE8_TEXT)
BORROMEAN = _load(BORROMEAN_TEXT)
WHITEHEAD = _load(WHITEHEAD_TEXT)
CHAIN3 = _load(CHAIN3_TEXT)
DOUBLED_BORROMEAN = _load(DOUBLED_BORROMEAN_TEXT)
UNLINK2_R2 = _load(UNLINK2_R2_TEXT)
UNLINK3_R2 = _load(UNLINK3_R2_TEXT)


def unlink(k: int) -> LinkDiagram:
    """k crossing-free circles with colors 1..k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return parse_pd(" ".join(f"O({i})" for i in range(1, k + 1)))


def commutator(n: int) -> LinkDiagram:
    """Closure of the iterated pure-braid commutator on n strands."""
    from .stringlink import braid_to_stringlink, closure, pure_braid_commutator
    return closure(braid_to_stringlink(pure_braid_commutator(n)))


NAMED = {
    "unknot": UNKNOT,
    "hopf": HOPF,
    "trefoil": TREFOIL,
    "trefoil-": TREFOIL_NEG,
    "figure8": FIGURE8,
    "borromean": BORROMEAN,
    "whitehead": WHITEHEAD,
    "chain3": CHAIN3,
    "doubled-borromean": DOUBLED_BORROMEAN,
}


def by_name(name: str) -> LinkDiagram:
    """Look up a fixture; ``unlink<k>`` and ``commutator<n>`` are generated."""
    key = name.lower()
    if key in NAMED:
        return NAMED[key]
    for prefix, make in (("unlink", unlink), ("commutator", commutator)):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            return make(int(key[len(prefix):]))
    raise KeyError(f"unknown example {name!r}")
