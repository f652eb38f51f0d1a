"""Reidemeister move detection and application on a :class:`Net`.

Sites are found from the faces of the diagram: monogons give R1 sites,
non-alternating bigons R2 sites, and triangles with a strand lying over (or
under) both of its triangle crossings give R3 sites.  Faces touching a
string endpoint are never used.
"""
from __future__ import annotations

from .net import Net, _is_boundary


def _inner_faces(net: Net):
    for face in net.faces():
        if any(_is_boundary(d) for d in face):
            continue
        yield face


def r1_sites(net: Net) -> list[int]:
    return sorted({face[0][0] for face in _inner_faces(net) if len(face) == 1})


def r2_sites(net: Net) -> list[tuple[int, int]]:
    out = set()
    for face in _inner_faces(net):
        if len(face) != 2:
            continue
        (c1, s1), (c2, t2) = face
        if c1 == c2:
            continue
        _, u = net.nbr[(c1, s1)]
        if s1 % 2 == u % 2:
            out.add((min(c1, c2), max(c1, c2)))
    return sorted(out)


def _triangle_edges(net: Net, face):
    """Edges of a triangular face as ((X, slot), (Y, slot)) pairs."""
    return [(d, net.nbr[d]) for d in face]


def r3_sites(net: Net) -> list[tuple[tuple[int, int, int], tuple]]:
    """Valid R3 triangles as (sorted crossing ids, face darts)."""
    out = []
    for face in _inner_faces(net):
        if len(face) != 3:
            continue
        cids = {d[0] for d in face}
        if len(cids) != 3:
            continue
        edges = _triangle_edges(net, face)
        if not any(a[1] % 2 == b[1] % 2 for a, b in edges):
            continue
        tri_slots = {(c, s) for c in cids for s in range(4)}
        ok = True
        for a, b in edges:
            for x in (a, b):
                ext = net.nbr[(x[0], (x[1] + 2) % 4)]
                if ext in tri_slots:
                    ok = False
        if ok:
            out.append((tuple(sorted(cids)), tuple(face)))
    out.sort()
    return out


def apply_r1(net: Net, cid: int) -> None:
    net.remove_crossings({cid})


def apply_r2(net: Net, pair) -> None:
    net.remove_crossings(set(pair))


def apply_r3(net: Net, face) -> None:
    """Slide the triangle across: every strand meets its two crossings in reverse order."""
    edges = _triangle_edges(net, face)
    new = []
    for (X, xt), (Y, yt) in edges:
        xe, ye = (xt + 2) % 4, (yt + 2) % 4
        ex, ey = net.nbr[(X, xe)], net.nbr[(Y, ye)]
        new += [((X, xe), (Y, ye)), ((X, xt), ey), ((Y, yt), ex)]
    for p, q in new:
        net.join(p, q)


def find_r3_face(net: Net, cids) -> tuple | None:
    key = tuple(sorted(cids))
    for ids, face in r3_sites(net):
        if ids == key:
            return face
    return None
