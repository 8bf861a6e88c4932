"""Connected components of a type space, decided at the piece level.

Boxes are closed, so two boxes lie in the same component exactly when a
chain of pairwise-intersecting boxes joins them. Points of a point-set
piece are treated individually: a point joins a box that contains it, or
an identical point elsewhere, and is otherwise its own component.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistencyError, MembershipError
from .model import BoxPiece, Piece, PointSetPiece, TypeSpace, Valuation, fmt_valuation


@dataclass(frozen=True)
class Component:
    """``pieces`` are the member atoms; ``sources`` maps each to ``(piece index, point index or None)``."""

    id: int
    pieces: tuple
    sources: tuple

    def contains(self, v: Valuation) -> bool:
        return any(p.contains(v) for p in self.pieces)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            # smaller root wins so component ids follow piece order
            if rj < ri:
                ri, rj = rj, ri
            self.parent[rj] = ri


def boxes_intersect(a: BoxPiece, b: BoxPiece) -> bool:
    return all(max(la, lb) <= min(ua, ub)
               for la, ua, lb, ub in zip(a.lower, a.upper, b.lower, b.upper))


def _atoms(ts: TypeSpace):
    out = []
    for k, piece in enumerate(ts.pieces):
        if isinstance(piece, PointSetPiece):
            for t, pt in enumerate(piece.points):
                out.append((PointSetPiece((pt,)), (k, t)))
        else:
            out.append((piece, (k, None)))
    return out


def _linked(p: Piece, q: Piece) -> bool:
    if isinstance(p, BoxPiece) and isinstance(q, BoxPiece):
        return boxes_intersect(p, q)
    if isinstance(p, BoxPiece):
        return p.contains(q.points[0])
    if isinstance(q, BoxPiece):
        return q.contains(p.points[0])
    return p.points[0] == q.points[0]


def connected_components(ts: TypeSpace) -> list:
    atoms = _atoms(ts)
    uf = UnionFind(len(atoms))
    for i in range(len(atoms)):
        for j in range(i + 1, len(atoms)):
            if _linked(atoms[i][0], atoms[j][0]):
                uf.union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(len(atoms)):
        groups.setdefault(uf.find(i), []).append(i)
    comps = []
    for cid, root in enumerate(sorted(groups)):
        members = groups[root]
        comps.append(Component(cid, tuple(atoms[i][0] for i in members),
                               tuple(atoms[i][1] for i in members)))
    return comps


def component_of(comps, v: Valuation) -> Component:
    """The component containing ``v``.

    ``comps`` may be a TypeSpace (decomposed on the fly) or the output of
    ``connected_components``.
    """
    if isinstance(comps, TypeSpace):
        comps = connected_components(comps)
    hits = [comp for comp in comps if comp.contains(v)]
    if not hits:
        raise MembershipError(f"{fmt_valuation(v)} is not in the type space")
    if len(hits) > 1:
        raise InconsistencyError(
            f"{fmt_valuation(v)} lies in components {[h.id for h in hits]}")
    return hits[0]
