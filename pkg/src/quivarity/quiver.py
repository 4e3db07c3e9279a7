"""Quivers, dimension vectors, quiver settings and the Euler form.

A quiver is a finite directed multigraph.  Loops and parallel arrows are
stored by repetition in a canonically sorted arrow tuple, so two quivers
with the same vertices and the same arrow multiset compare equal.
Vertex identifiers are opaque strings ordered lexicographically.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property


class QuiverError(ValueError):
    """Raised when a quiver, dimension vector or setting is malformed."""


Arrow = tuple[str, str]


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        verts = tuple(sorted(str(v) for v in self.vertices))
        if len(set(verts)) != len(verts):
            raise QuiverError(f"duplicate vertex identifiers in {list(self.vertices)}")
        vset = set(verts)
        arrows = []
        for a in self.arrows:
            s, t = a
            s, t = str(s), str(t)
            if s not in vset or t not in vset:
                raise QuiverError(f"arrow {s}->{t} has an undeclared endpoint")
            arrows.append((s, t))
        arrows.sort()
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", tuple(arrows))

    @classmethod
    def _trusted(
        cls, vertices: tuple[str, ...], arrows: tuple[Arrow, ...] | None = None, counts: Mapping[Arrow, int] | None = None
    ) -> Quiver:
        """Skip validation; callers guarantee sorted unique vertices and valid arrows.

        With ``arrows=None`` the arrows are rebuilt from ``counts``, which then
        also seeds the cached counter.
        """
        q = object.__new__(cls)
        object.__setattr__(q, "vertices", vertices)
        if arrows is None:
            c = Counter()
            dict.update(c, sorted(counts.items()))
            object.__setattr__(q, "arrows", tuple(c.elements()))
            q.__dict__["counts"] = c
        else:
            object.__setattr__(q, "arrows", tuple(sorted(arrows)))
        return q

    @classmethod
    def from_counts(cls, vertices: Iterable[str], counts: Mapping[Arrow, int]) -> Quiver:
        arrows = []
        for (s, t), c in counts.items():
            if c < 0:
                raise QuiverError(f"negative arrow count {c} for {s}->{t}")
            arrows.extend([(s, t)] * c)
        return cls(tuple(vertices), tuple(arrows))

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def counts(self) -> Counter:
        """Arrow multiplicities keyed by ``(source, target)``."""
        return Counter(self.arrows)

    def loops(self, v: str) -> int:
        return self.counts.get((v, v), 0)

    def arrows_between(self, s: str, t: str) -> int:
        return self.counts.get((s, t), 0)

    def successors(self, v: str) -> list[str]:
        return sorted({t for (s, t) in self.counts if s == v})

    def predecessors(self, v: str) -> list[str]:
        return sorted({s for (s, t) in self.counts if t == v})

    @property
    def loop_count(self) -> int:
        return sum(1 for s, t in self.arrows if s == t)

    def restrict(self, keep: Iterable[str]) -> Quiver:
        """Full subquiver on ``keep``: all arrows with both ends kept."""
        keep = set(keep)
        return Quiver(
            tuple(v for v in self.vertices if v in keep),
            tuple(a for a in self.arrows if a[0] in keep and a[1] in keep),
        )

    def __len__(self) -> int:
        return len(self.vertices)


class DimensionVector(Mapping):
    """Immutable map from vertex id to a non-negative integer."""

    __slots__ = ("_items", "_map")

    def __init__(self, dims: Mapping[str, int] | Iterable[tuple[str, int]]):
        pairs = dims.items() if isinstance(dims, Mapping) else dims
        items = []
        for v, d in pairs:
            d = int(d)
            if d < 0:
                raise QuiverError(f"negative dimension {d} at vertex {v!r}")
            items.append((str(v), d))
        items.sort()
        m = dict(items)
        if len(m) != len(items):
            raise QuiverError("duplicate vertex in dimension vector")
        object.__setattr__(self, "_items", tuple(items))
        object.__setattr__(self, "_map", m)

    def __setattr__(self, name, value):
        raise AttributeError("DimensionVector is immutable")

    @classmethod
    def _trusted(cls, items: tuple[tuple[str, int], ...]) -> DimensionVector:
        """Skip validation; ``items`` must be sorted by vertex with non-negative dims."""
        d = object.__new__(cls)
        object.__setattr__(d, "_items", items)
        object.__setattr__(d, "_map", dict(items))
        return d

    @classmethod
    def unit(cls, vertices: Iterable[str]) -> DimensionVector:
        return cls((v, 1) for v in vertices)

    @classmethod
    def eps(cls, vertices: Iterable[str], v: str) -> DimensionVector:
        vertices = list(vertices)
        if v not in vertices:
            raise QuiverError(f"unknown vertex {v!r}")
        return cls((w, int(w == v)) for w in vertices)

    @classmethod
    def zero(cls, vertices: Iterable[str]) -> DimensionVector:
        return cls((v, 0) for v in vertices)

    def __getitem__(self, v: str) -> int:
        return self._map[v]

    def __iter__(self) -> Iterator[str]:
        return (v for v, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        return hash(self._items)

    def __eq__(self, other) -> bool:
        if isinstance(other, DimensionVector):
            return self._items == other._items
        return NotImplemented

    def __repr__(self) -> str:
        return "DimensionVector({%s})" % ", ".join(f"{v!r}: {d}" for v, d in self._items)

    def __add__(self, other: DimensionVector) -> DimensionVector:
        if set(self) != set(other):
            raise QuiverError("dimension vectors live on different vertex sets")
        return DimensionVector((v, d + other[v]) for v, d in self._items)

    def __sub__(self, other: DimensionVector) -> DimensionVector:
        if set(self) != set(other):
            raise QuiverError("dimension vectors live on different vertex sets")
        return DimensionVector((v, d - other[v]) for v, d in self._items)

    def __rmul__(self, k: int) -> DimensionVector:
        return DimensionVector((v, k * d) for v, d in self._items)

    @property
    def size(self) -> int:
        return sum(d for _, d in self._items)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(v for v, d in self._items if d)

    def values_tuple(self) -> tuple[int, ...]:
        return tuple(d for _, d in self._items)

    def restrict(self, keep: Iterable[str]) -> DimensionVector:
        keep = set(keep)
        return DimensionVector((v, d) for v, d in self._items if v in keep)

    def is_unit(self) -> bool:
        return not self._items or set(self._map.values()) == {1}


@dataclass(frozen=True)
class QuiverSetting:
    quiver: Quiver
    alpha: DimensionVector

    def __post_init__(self):
        if not isinstance(self.alpha, DimensionVector):
            object.__setattr__(self, "alpha", DimensionVector(self.alpha))
        if tuple(self.alpha) != self.quiver.vertices:
            raise QuiverError(
                f"dimension vector keys {list(self.alpha)} do not match vertices {list(self.quiver.vertices)}"
            )

    @classmethod
    def _trusted(cls, quiver: Quiver, alpha: DimensionVector) -> QuiverSetting:
        s = object.__new__(cls)
        object.__setattr__(s, "quiver", quiver)
        object.__setattr__(s, "alpha", alpha)
        return s

    @classmethod
    def build(cls, dims: Mapping[str, int], arrows: Iterable[Arrow] = ()) -> QuiverSetting:
        """Convenience constructor: ``build({"a": 1, "b": 2}, [("a", "b")])``."""
        return cls(Quiver(tuple(dims), tuple(arrows)), DimensionVector(dims))

    @classmethod
    def from_counts(cls, dims: Mapping[str, int], counts: Mapping[Arrow, int]) -> QuiverSetting:
        return cls(Quiver.from_counts(dims, counts), DimensionVector(dims))

    @classmethod
    def empty(cls) -> QuiverSetting:
        return cls(Quiver(()), DimensionVector(()))

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    def dim(self, v: str) -> int:
        return self.alpha[v]

    def genuine(self) -> bool:
        return 0 not in self.alpha._map.values()

    def restrict(self, keep: Iterable[str]) -> QuiverSetting:
        keep = set(keep)
        verts = tuple(v for v in self.quiver.vertices if v in keep)
        arrows = tuple(a for a in self.quiver.arrows if a[0] in keep and a[1] in keep)
        alpha = DimensionVector._trusted(tuple((v, self.alpha[v]) for v in verts))
        return QuiverSetting._trusted(Quiver._trusted(verts, arrows), alpha)

    def with_alpha(self, dims: Mapping[str, int]) -> QuiverSetting:
        return QuiverSetting(self.quiver, DimensionVector(dims))

    def __str__(self) -> str:
        verts = ", ".join(f"{v}/{self.alpha[v]}" for v in self.vertices)
        arr = ", ".join(
            f"{s}->{t}" + (f" x{c}" if c > 1 else "") for (s, t), c in sorted(self.quiver.counts.items())
        )
        return f"[{verts} | {arr}]"


@dataclass(frozen=True)
class EulerForm:
    """Integer matrix ``m[i][j] = delta_ij - #{arrows j -> i}``."""

    vertices: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...] = field(repr=False)

    def entry(self, i: str, j: str) -> int:
        idx = {v: k for k, v in enumerate(self.vertices)}
        return self.matrix[idx[i]][idx[j]]

    def is_symmetric(self) -> bool:
        n = len(self.vertices)
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(n) for j in range(i))

    def to_quiver(self) -> Quiver:
        """Recover the quiver; a quiver is determined by its Euler form."""
        counts = {}
        for i, vi in enumerate(self.vertices):
            for j, vj in enumerate(self.vertices):
                c = int(i == j) - self.matrix[i][j]
                if c < 0:
                    raise QuiverError(f"matrix entry ({vi},{vj}) is not an Euler form entry")
                if c:
                    counts[(vj, vi)] = c
        return Quiver.from_counts(self.vertices, counts)


def euler_matrix(q: Quiver) -> EulerForm:
    n = len(q.vertices)
    idx = q.index
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for s, t in q.arrows:
        m[idx[t]][idx[s]] -= 1
    return EulerForm(q.vertices, tuple(tuple(r) for r in m))


def chi(e: EulerForm | Quiver, a: Mapping[str, int], b: Mapping[str, int]) -> int:
    """The Euler form ``a^T M b``; exact integer arithmetic."""
    if isinstance(e, Quiver):
        e = euler_matrix(e)
    if set(a) != set(e.vertices) or set(b) != set(e.vertices):
        raise QuiverError("vectors are not indexed by the Euler form's vertex set")
    av = [a[v] for v in e.vertices]
    bv = [b[v] for v in e.vertices]
    return sum(av[i] * sum(r * y for r, y in zip(row, bv)) for i, row in enumerate(e.matrix) if av[i])


def chi_setting(s: QuiverSetting, a: Mapping[str, int], b: Mapping[str, int]) -> int:
    """``chi`` evaluated from arrow counts; avoids building the matrix.

    Equals ``sum_v a_v b_v - sum_{arrows u->w} a_w b_u``, so ``chi(alpha, eps_v)``
    sees the arrows leaving ``v`` and ``chi(eps_v, alpha)`` those entering it.
    """
    total = sum(a[v] * b[v] for v in s.quiver.vertices)
    for (u, w), c in s.quiver.counts.items():
        total -= c * a[w] * b[u]
    return total


def _closure(start: int, masks: list[int]) -> int:
    """Bitmask of vertices reachable from ``start`` along ``masks``."""
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= masks[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def _scc_masks(n: int, out: list[int], inn: list[int]) -> list[int]:
    comps = []
    done = 0
    for i in range(n):
        if done >> i & 1:
            continue
        mask = _closure(i, out) & _closure(i, inn)
        done |= mask
        comps.append(mask)
    return comps


def strongly_connected_components(vertices: Iterable[str], succ: Mapping[str, Iterable[str]]) -> list[list[str]]:
    """Strongly connected components, ordered by their first vertex.

    Each component is the intersection of forward and backward reachability
    sets held as bitmasks, which is quick for the small graphs handled here.
    """
    verts = list(vertices)
    pos = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    out = [0] * n
    inn = [0] * n
    for v, ws in succ.items():
        i = pos[v]
        for w in ws:
            j = pos[w]
            out[i] |= 1 << j
            inn[j] |= 1 << i
    return [[verts[j] for j in range(n) if m >> j & 1] for m in _scc_masks(n, out, inn)]


def _quiver_masks(q: Quiver) -> tuple[list[int], list[int]]:
    """Successor and predecessor bitmasks per vertex index, cached on the quiver."""
    cached = q.__dict__.get("_masks")
    if cached is not None:
        return cached
    n = len(q.vertices)
    idx = dict(zip(q.vertices, range(n)))
    out = [0] * n
    inn = [0] * n
    for s, t in q.counts:
        i, j = idx[s], idx[t]
        out[i] |= 1 << j
        inn[j] |= 1 << i
    q.__dict__["_masks"] = out, inn
    return out, inn


def _successor_map(q: Quiver) -> dict[str, list[str]]:
    succ: dict[str, list[str]] = {v: [] for v in q.vertices}
    for s, t in q.counts:
        succ[s].append(t)
    return succ


def scc_decompose(s: QuiverSetting) -> list[QuiverSetting]:
    """Strongly connected components with their internal arrows, sorted by least vertex."""
    q = s.quiver
    n = len(q.vertices)
    out, inn = _quiver_masks(q)
    full = (1 << n) - 1
    if n == 0 or _closure(0, out) & _closure(0, inn) == full:
        return [s]
    verts = q.vertices
    return [s.restrict(verts[j] for j in range(n) if m >> j & 1) for m in _scc_masks(n, out, inn)]


def is_strongly_connected(q: Quiver) -> bool:
    n = len(q.vertices)
    if n == 0:
        return True
    out, inn = _quiver_masks(q)
    return _closure(0, out) & _closure(0, inn) == (1 << n) - 1


def strip_zero_vertices(s: QuiverSetting) -> QuiverSetting:
    if s.genuine():
        return s
    return s.restrict(v for v in s.vertices if s.alpha[v] > 0)


def is_subquiver(small: Quiver, big: Quiver) -> bool:
    """Vertex inclusion plus arrow multiset inclusion, matching identifiers by identity."""
    if not set(small.vertices) <= set(big.vertices):
        return False
    bc = big.counts
    return all(bc.get(a, 0) >= c for a, c in small.counts.items())


def is_symmetric(q: Quiver) -> bool:
    c = q.counts
    return all(c.get((t, s), 0) == n for (s, t), n in c.items())


def subquiver_settings(s: QuiverSetting, *, proper_only: bool = False) -> Iterator[QuiverSetting]:
    """Every subquiver setting: a vertex subset with any sub-multiset of the arrows it spans.

    The dimension vector is restricted.  Yields the input itself unless ``proper_only``.
    """
    from itertools import combinations, product

    verts = s.vertices
    for r in range(len(verts), 0, -1):
        for keep in combinations(verts, r):
            sub = s.restrict(keep)
            pairs = sorted(sub.quiver.counts.items())
            for choice in product(*(range(c + 1) for _, c in pairs)):
                if proper_only and r == len(verts) and all(k == c for k, (_, c) in zip(choice, pairs)):
                    continue
                counts = {p: k for (p, _), k in zip(pairs, choice) if k}
                yield QuiverSetting(Quiver.from_counts(keep, counts), sub.alpha)
