"""Coregularity of symmetric loopless quiver settings via connected sums.

A symmetric strongly connected loopless setting is coregular exactly when it
is glued, at dimension-1 vertices, from pieces of four shapes (``=k=`` means
``k`` arrows in each direction, ``=`` a single arrow each way):

    I    n = m
    II   1 =k= n   with k <= n
    III  1 = n = m
    IV   n = 2 = m

This module is independent of the reduction engine and serves to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .quiver import QuiverError, QuiverSetting, is_strongly_connected, is_symmetric


@dataclass(frozen=True)
class ConnectedSumDecomposition:
    components: tuple[QuiverSetting, ...]
    junction_vertices: tuple[str, ...]

    def reassemble(self) -> QuiverSetting:
        dims: dict[str, int] = {}
        arrows = []
        for c in self.components:
            dims.update(c.alpha)
            arrows.extend(c.arrows)
        return QuiverSetting.build(dims, arrows)


def _check(s: QuiverSetting) -> None:
    q = s.quiver
    if not s.vertices:
        raise QuiverError("empty setting")
    if not s.genuine():
        raise QuiverError("setting has a zero-dimensional vertex")
    if q.loop_count:
        raise QuiverError("setting has loops")
    if not is_symmetric(q):
        raise QuiverError("setting is not symmetric")
    if not is_strongly_connected(q):
        raise QuiverError("setting is not strongly connected")


def connected_sum_decompose(s: QuiverSetting) -> ConnectedSumDecomposition:
    """Cut at every dimension-1 articulation vertex of the underlying graph."""
    _check(s)
    g = nx.Graph()
    g.add_nodes_from(s.vertices)
    g.add_edges_from((a, b) for a, b in s.quiver.counts)
    if g.number_of_edges() == 0:
        return ConnectedSumDecomposition((s,), ())

    blocks = [set(map(frozenset, b)) for b in nx.biconnected_component_edges(g)]
    vertex_blocks: dict[str, list[int]] = {}
    for i, b in enumerate(blocks):
        for e in b:
            for v in e:
                vertex_blocks.setdefault(v, [])
                if i not in vertex_blocks[v]:
                    vertex_blocks[v].append(i)

    # blocks meeting at a vertex of dimension != 1 cannot be separated
    parent = list(range(len(blocks)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for v, bs in vertex_blocks.items():
        if s.alpha[v] != 1:
            for b in bs[1:]:
                parent[find(b)] = find(bs[0])

    groups: dict[int, set[str]] = {}
    for i, b in enumerate(blocks):
        vs = groups.setdefault(find(i), set())
        for e in b:
            vs.update(e)
    comps = sorted((sorted(vs) for vs in groups.values()), key=lambda c: c)
    junctions = sorted(v for v in s.vertices if sum(v in c for c in comps) > 1)
    return ConnectedSumDecomposition(tuple(s.restrict(c) for c in comps), tuple(junctions))


def prime_type(c: QuiverSetting) -> str | None:
    """Which of the shapes I-IV the piece ``c`` matches, if any."""
    vs = c.vertices
    counts = c.quiver.counts
    d = c.alpha
    if len(vs) == 2:
        a, b = vs
        k = counts.get((a, b), 0)
        if k == 1:
            return "I"
        for one, n in ((a, b), (b, a)):
            if d[one] == 1 and k <= d[n]:
                return "II"
        return None
    if len(vs) == 3:
        if any(k != 1 for k in counts.values()):
            return None
        deg = {v: sum(1 for (x, _) in counts if x == v) for v in vs}
        mids = [v for v in vs if deg[v] == 2]
        if len(counts) != 4 or len(mids) != 1:
            return None
        mid = mids[0]
        ends = [v for v in vs if v != mid]
        if any(d[e] == 1 for e in ends):
            return "III"
        if d[mid] == 2:
            return "IV"
        return None
    return None


def classify_symmetric(s: QuiverSetting) -> bool:
    """A lone vertex counts as the empty connected sum and is coregular."""
    dec = connected_sum_decompose(s)
    if len(s.vertices) == 1:
        return True
    return all(prime_type(c) is not None for c in dec.components)
