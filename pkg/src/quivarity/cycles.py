"""Cycles of a quiver and the trace-monomial generators they label.

A cycle is stored as a tuple of arrow indices ``(a_1, ..., a_p)`` into
``quiver.arrows`` with ``source(a_i) == target(a_{i+1})`` read cyclically, so
the associated invariant is ``Tr(W[a_1] @ ... @ W[a_p])``.  Cyclic rotations
label the same invariant; a ``Cycle`` always holds its lexicographically
least rotation.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .quiver import Quiver, QuiverError, QuiverSetting, is_strongly_connected


def least_rotation(seq: Sequence[int]) -> tuple[int, ...]:
    t = tuple(seq)
    if not t:
        return t
    return min(t[i:] + t[:i] for i in range(len(t)))


@dataclass(frozen=True)
class Cycle:
    arrows: tuple[int, ...]

    def __post_init__(self):
        if not self.arrows:
            raise QuiverError("a cycle has at least one arrow")
        object.__setattr__(self, "arrows", least_rotation(self.arrows))

    @classmethod
    def from_arrows(cls, q: Quiver, arrows: Sequence[int]) -> Cycle:
        """Validate closure against ``q`` before canonicalising."""
        p = len(arrows)
        for i in range(p):
            a, b = q.arrows[arrows[i]], q.arrows[arrows[(i + 1) % p]]
            if a[0] != b[1]:
                raise QuiverError(f"arrows {arrows[i]} and {arrows[(i + 1) % p]} do not compose")
        return cls(tuple(arrows))

    @property
    def canonical_rotation(self) -> tuple[int, ...]:
        return self.arrows

    def __len__(self) -> int:
        return len(self.arrows)

    def vertices(self, q: Quiver) -> list[str]:
        """Visited vertices with multiplicity (the source of each arrow)."""
        return [q.arrows[a][0] for a in self.arrows]

    def label(self, q: Quiver) -> str:
        return " ".join(f"{q.arrows[a][0]}>{q.arrows[a][1]}#{a}" for a in self.arrows)


def _walk_cycles(q: Quiver, max_len: int, cap: dict[str, int]) -> Iterator[Cycle]:
    """DFS over arrow sequences; ``cap[v]`` bounds how often ``v`` may be passed."""
    arrows = q.arrows
    into: dict[str, list[int]] = {v: [] for v in q.vertices}
    for i, (_, t) in enumerate(arrows):
        into[t].append(i)
    visits = {v: 0 for v in q.vertices}

    for first, (s0, t0) in enumerate(arrows):
        if cap[s0] < 1:
            continue
        visits[s0] += 1
        path = [first]
        # stack of iterators over candidate next arrows
        stack = [iter(into[s0])]
        if s0 == t0:
            yield Cycle(tuple(path))
        while stack:
            advanced = False
            if len(path) < max_len:
                for nxt in stack[-1]:
                    if nxt < first:
                        continue
                    src = arrows[nxt][0]
                    if visits[src] >= cap[src]:
                        continue
                    visits[src] += 1
                    path.append(nxt)
                    if src == t0 and least_rotation(path) == tuple(path):
                        yield Cycle(tuple(path))
                    stack.append(iter(into[src]))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                a = path.pop()
                visits[arrows[a][0]] -= 1


def primitive_cycles(q: Quiver) -> list[Cycle]:
    """Cycles passing each vertex at most once, loops included, up to rotation."""
    cap = {v: 1 for v in q.vertices}
    return list(_walk_cycles(q, max(len(q.vertices), 1), cap))


def quasi_primitive_cycles(s: QuiverSetting, max_len: int | None = None) -> list[Cycle]:
    """Cycles whose repeatedly passed vertices all have dimension at least 2.

    ``max_len`` defaults to ``|alpha|**2``.  Vertices of dimension 0 are never
    passed (the trace of any cycle through them vanishes).
    """
    if max_len is None:
        max_len = s.alpha.size ** 2
    if max_len < 1:
        raise QuiverError(f"max_len must be at least 1, got {max_len}")
    cap = {}
    for v in s.vertices:
        d = s.alpha[v]
        cap[v] = 0 if d == 0 else (1 if d == 1 else max_len)
    return list(_walk_cycles(s.quiver, max_len, cap))


def count_primitive_cycles(q: Quiver) -> int:
    """Count primitive cycles from vertex-simple cycles times arrow multiplicities.

    Independent of the arrow-level walk in :func:`primitive_cycles`.
    """
    verts = q.vertices
    n = len(verts)
    idx = dict(zip(verts, range(n)))
    total = 0
    succ: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (s, t), c in q.counts.items():
        if s == t:
            total += c
        else:
            succ[idx[s]].append((idx[t], c))
    # each vertex-simple cycle is counted once, from its least vertex
    for start in range(n):
        stack = [(start, 1, 1 << start)]
        while stack:
            v, weight, seen = stack.pop()
            for w, c in succ[v]:
                if w == start:
                    total += weight * c
                elif w > start and not seen >> w & 1:
                    stack.append((w, weight * c, seen | 1 << w))
    return total


def iss_dimension_alpha_one(q: Quiver) -> int:
    """``#A - #V + 1``, the quotient dimension for a strongly connected quiver at dimension one."""
    return len(q.arrows) - len(q.vertices) + 1


def coregular_alpha_one(s: QuiverSetting) -> bool:
    """Coregularity at dimension vector one: primitive cycle count equals the quotient dimension."""
    if not s.alpha.is_unit():
        raise QuiverError("coregular_alpha_one needs the dimension vector with every entry 1")
    if not s.vertices or not is_strongly_connected(s.quiver):
        raise QuiverError("coregular_alpha_one needs a non-empty strongly connected quiver")
    return count_primitive_cycles(s.quiver) == iss_dimension_alpha_one(s.quiver)
