"""Price graphs and exact single-source shortest paths.

The optimal per-vertex price levels ``h`` are the shortest-path distances
from the source ``s``: ``h[v] <= cost(s, v)`` is individual rationality for
types realising ``v``, ``h[v] - h[u] <= cost(u, v)`` is incentive
compatibility between them, and shortest paths make every ``h`` as large
as those constraints permit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import InconsistencyError
from .infima import (InfResult, alloc_image, inf_diff_given_eff, inf_welfare,
                     inf_welfare_given_eff)
from .model import TypeSpace
from .numerics import INF, ExtRat, Rat, render
from .welfare import ExternalityContext

SOURCE = -1


@dataclass
class PriceGraph:
    """Source plus content vertices ``0..n-1``.

    ``keys[k]`` is the allocation index (kind ``"allocation"``) or component
    id (kind ``"component"``) behind vertex ``k``. ``cost[u][v]`` is INF when
    the edge is absent; the diagonal is unused.
    """

    kind: str
    keys: list
    labels: list
    source_cost: list
    cost: list
    source_witness: list = field(default_factory=list)
    edge_witness: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.keys)

    def vertex_of(self, key) -> Optional[int]:
        try:
            return self.keys.index(key)
        except ValueError:
            return None

    def edges(self):
        """Finite content edges ``(u, v, cost)`` in deterministic order."""
        for u in range(self.n):
            for v in range(self.n):
                if u != v and self.cost[u][v] is not INF:
                    yield u, v, self.cost[u][v]


@dataclass(frozen=True)
class ShortestPaths:
    h: tuple
    pred: tuple  # SOURCE or a content vertex index


def _better(new: InfResult, old: Optional[InfResult]) -> bool:
    if old is None or not old.feasible:
        return new.feasible
    if not new.feasible:
        return False
    if new.value != old.value:
        return new.value < old.value
    return new.attained and not old.attained


def build_allocation_graph(ts: TypeSpace, ctx: ExternalityContext,
                           alloc_labels=None) -> PriceGraph:
    pieces = ts.pieces
    images = [alloc_image(p, ctx) for p in pieces]
    verts = sorted(set().union(*images))
    n = len(verts)
    src: list = [None] * n
    cost = [[INF] * n for _ in range(n)]
    edge_w = {}
    for k, a in enumerate(verts):
        for p, img in zip(pieces, images):
            if a not in img:
                continue
            r = inf_welfare_given_eff(p, a, ctx)
            if _better(r, src[k]):
                src[k] = r
            for j, b in enumerate(verts):
                if j == k:
                    continue
                r = inf_diff_given_eff(p, a, b, ctx)
                if _better(r, edge_w.get((j, k))):
                    edge_w[(j, k)] = r
    for (j, k), r in edge_w.items():
        cost[j][k] = r.value
    labels = [alloc_labels[a] if alloc_labels else str(a) for a in verts]
    return PriceGraph("allocation", verts, labels, [r.value for r in src], cost,
                      src, edge_w)


def build_component_graph(comps, ctx: ExternalityContext) -> PriceGraph:
    """Component graph; ``cost(D, C)`` splits the joint infimum over the
    allocation realised in ``C`` and the one realised by the type in ``D``."""
    n = len(comps)
    images = [[alloc_image(p, ctx) for p in comp.pieces] for comp in comps]
    comp_images = [frozenset().union(*imgs) for imgs in images]
    src = []
    for comp in comps:
        best = None
        for p in comp.pieces:
            r = inf_welfare(p, ctx)
            if _better(r, best):
                best = r
        src.append(best)
    cost = [[INF] * n for _ in range(n)]
    edge_w = {}
    for ci, comp in enumerate(comps):
        for di in range(n):
            if di == ci:
                continue
            best = None
            for p, img in zip(comp.pieces, images[ci]):
                for a in sorted(img):
                    for b in sorted(comp_images[di]):
                        if a == b:
                            # zero loss: the C-type itself realises b
                            r = inf_welfare_given_eff(p, a, ctx)
                            r = InfResult(Rat(0), r.witness, r.attained)
                        else:
                            r = inf_diff_given_eff(p, a, b, ctx)
                        if _better(r, best):
                            best = r
            if best is not None and best.feasible:
                cost[di][ci] = best.value
                edge_w[(di, ci)] = best
    return PriceGraph("component", [c.id for c in comps], [f"C{c.id}" for c in comps],
                      [r.value for r in src], cost, src, edge_w)


def _tree(g: PriceGraph, h) -> tuple:
    """Deterministic predecessor tree over tight edges.

    Vertices are attached in hop layers from ``s``; within a layer each one
    takes ``s`` if tight, else the smallest-index tight predecessor already
    attached. Layering keeps zero-cost cycles from closing a loop.
    """
    n = g.n
    pred: list = [None] * n
    attached = set()
    for v in range(n):
        if g.source_cost[v] == h[v]:
            pred[v] = SOURCE
    layer = {v for v in range(n) if pred[v] == SOURCE}
    attached |= layer
    while layer:
        new = set()
        for v in range(n):
            if pred[v] is not None:
                continue
            for u in sorted(attached):
                c = g.cost[u][v]
                if u != v and c is not INF and h[u] + c == h[v]:
                    pred[v] = u
                    new.add(v)
                    break
        attached |= new
        layer = new
    if any(p is None for p in pred):
        raise InconsistencyError("shortest-path labels are not supported by tight edges")
    return tuple(pred)


def shortest_paths(g: PriceGraph) -> ShortestPaths:
    """Bellman-Ford from the source, in exact arithmetic."""
    n = g.n
    if any(c is INF or c is None for c in g.source_cost):
        raise InconsistencyError("every vertex needs a finite source edge")
    h = list(g.source_cost)
    edges = list(g.edges())
    for _ in range(max(n - 1, 0)):
        changed = False
        for u, v, c in edges:
            if h[u] + c < h[v]:
                h[v] = h[u] + c
                changed = True
        if not changed:
            break
    for u, v, c in edges:
        if h[u] + c < h[v]:
            raise InconsistencyError("negative cycle in price graph")
    return ShortestPaths(tuple(h), _tree(g, h))


def enumerate_paths_oracle(g: PriceGraph, cap: int = 10) -> ShortestPaths:
    """Minimum over every simple ``s -> v`` path, by exhaustive search."""
    n = g.n
    if n > cap:
        raise ValueError(f"path enumeration capped at {cap} vertices, graph has {n}")
    best: list[ExtRat] = [INF] * n

    def walk(v, dist, seen):
        if dist < best[v]:
            best[v] = dist
        for w in range(n):
            c = g.cost[v][w]
            if w not in seen and c is not INF:
                walk(w, dist + c, seen | {w})

    for v in range(n):
        walk(v, g.source_cost[v], frozenset([v]))
    h = tuple(best)
    return ShortestPaths(h, _tree(g, h))


def _quote(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: PriceGraph, sp: Optional[ShortestPaths] = None, name: str = "G") -> str:
    """DOT text; shortest-path tree edges solid, every other edge dashed."""
    if sp is None:
        sp = shortest_paths(g)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;",
             '  s [label="s", shape=circle];']
    for v in range(g.n):
        lines.append(f"  v{v} [label={_quote(g.labels[v])}, xlabel={_quote('h=' + render(sp.h[v]))}];")

    def edge(tail, v, c, solid):
        style = "solid" if solid else "dashed"
        return f"  {tail} -> v{v} [label={_quote(render(c))}, style={style}];"

    for v in range(g.n):
        lines.append(edge("s", v, g.source_cost[v], sp.pred[v] == SOURCE))
    for u, v, c in g.edges():
        lines.append(edge(f"v{u}", v, c, sp.pred[v] == u))
    lines.append("}")
    return "\n".join(lines) + "\n"
