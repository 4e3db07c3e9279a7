"""Existence of simple representations and decompositions into simple types."""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum

from .quiver import (
    DimensionVector,
    Quiver,
    QuiverSetting,
    chi_setting,
    is_strongly_connected,
    strip_zero_vertices,
)


class ClassCount(str, Enum):
    ZERO = "zero"
    ONE = "one"
    INFINITE = "infinite"


@dataclass(frozen=True)
class SimpleClassInfo:
    exists: bool
    class_count: ClassCount
    iss_dimension: int | None


def special_form(q: Quiver) -> str | None:
    """Name of the exceptional shape ``q`` has, if any.

    ``"point"`` (one vertex, no arrow), ``"loop"`` (one vertex, one loop) or
    ``"cycle"`` (an oriented cycle through all of at least two vertices).
    """
    n, m = len(q.vertices), len(q.arrows)
    if n == 1:
        if m == 0:
            return "point"
        if m == 1:
            return "loop"
        return None
    if n < 2 or m != n:
        return None
    outdeg = {v: 0 for v in q.vertices}
    indeg = {v: 0 for v in q.vertices}
    for s, t in q.arrows:
        if s == t:
            return None
        outdeg[s] += 1
        indeg[t] += 1
    if any(outdeg[v] != 1 or indeg[v] != 1 for v in q.vertices):
        return None
    return "cycle" if is_strongly_connected(q) else None


def _criterion(s: QuiverSetting) -> bool:
    """Simplicity test on a genuine setting."""
    if not s.vertices:
        return False
    if special_form(s.quiver) is not None:
        return s.alpha.is_unit()
    if not is_strongly_connected(s.quiver):
        return False
    alpha = s.alpha
    vs = s.vertices
    for v in vs:
        e = DimensionVector.eps(vs, v)
        if chi_setting(s, alpha, e) > 0 or chi_setting(s, e, alpha) > 0:
            return False
    return True


def has_simple(s: QuiverSetting) -> SimpleClassInfo:
    g = strip_zero_vertices(s)
    if not _criterion(g):
        return SimpleClassInfo(False, ClassCount.ZERO, None)
    dim = 1 - chi_setting(g, g.alpha, g.alpha)
    count = ClassCount.ONE if dim == 0 else ClassCount.INFINITE
    return SimpleClassInfo(True, count, dim)


def enumerate_simple_dimvectors(q: Quiver, cap: int) -> list[DimensionVector]:
    """Every ``beta`` with entries in ``0..cap`` admitting simples, ordered by ``(|beta|, entries)``."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    found = []
    for dims in itertools.product(range(cap + 1), repeat=len(q.vertices)):
        if not any(dims):
            continue
        s = QuiverSetting(q, DimensionVector(zip(q.vertices, dims)))
        if has_simple(s).exists:
            found.append(s.alpha)
    found.sort(key=lambda b: (b.size, b.values_tuple()))
    return found


@dataclass(frozen=True)
class Decomposition:
    """``alpha = sum(multiplicity * beta)`` over simple types ``beta``.

    Factors are kept sorted; two factors may share ``beta`` when that
    dimension vector carries infinitely many simple classes.
    """

    factors: tuple[tuple[DimensionVector, int], ...]

    def total(self) -> DimensionVector:
        it = iter(self.factors)
        b, a = next(it)
        acc = a * b
        for b, a in it:
            acc = acc + a * b
        return acc

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        return " + ".join(f"{a}x({','.join(map(str, b.values_tuple()))})" for b, a in self.factors)


@dataclass(frozen=True)
class DecompositionList:
    items: tuple[Decomposition, ...]
    truncated: bool

    def __iter__(self) -> Iterator[Decomposition]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, i):
        return self.items[i]


def simple_types_below(s: QuiverSetting) -> list[tuple[DimensionVector, SimpleClassInfo]]:
    """Simple dimension vectors ``beta <= alpha`` (componentwise) with their class info."""
    vs = s.vertices
    out = []
    for dims in itertools.product(*(range(s.alpha[v] + 1) for v in vs)):
        if not any(dims):
            continue
        beta = DimensionVector(zip(vs, dims))
        info = has_simple(QuiverSetting(s.quiver, beta))
        if info.exists:
            out.append((beta, info))
    out.sort(key=lambda p: (p[0].size, p[0].values_tuple()))
    return out


def enumerate_decompositions(s: QuiverSetting, limit: int = 10_000) -> DecompositionList:
    """All ways of writing ``alpha`` as a sum of simple types with multiplicities.

    A ``beta`` with a unique simple class may occur in at most one factor.
    Output order is deterministic; at most ``limit`` decompositions are kept
    and ``truncated`` records whether more exist.
    """
    s = strip_zero_vertices(s)
    vs = s.vertices
    types = simple_types_below(s)
    # (beta vector as tuple, multiplicity, unique-class flag)
    items = []
    for beta, info in types:
        bt = beta.values_tuple()
        top = min(s.alpha[v] // b for v, b in zip(vs, bt) if b)
        for a in range(1, top + 1):
            items.append((bt, a, info.class_count is ClassCount.ONE, beta))
    target = s.alpha.values_tuple()
    results: list[Decomposition] = []
    truncated = False

    def search(start: int, rest: tuple[int, ...], chosen: list, used_unique: set) -> bool:
        nonlocal truncated
        if not any(rest):
            if len(results) >= limit:
                truncated = True
                return False
            results.append(Decomposition(tuple((it[3], it[1]) for it in chosen)))
            return True
        for i in range(start, len(items)):
            bt, a, unique, _ = items[i]
            if unique and bt in used_unique:
                continue
            new = tuple(r - a * b for r, b in zip(rest, bt))
            if min(new) < 0:
                continue
            chosen.append(items[i])
            if unique:
                used_unique.add(bt)
            # a unique type cannot be reused, so move past it
            ok = search(i + 1 if unique else i, new, chosen, used_unique)
            if unique:
                used_unique.discard(bt)
            chosen.pop()
            if not ok:
                return False
        return True

    if vs:
        search(0, target, [], set())
    return DecompositionList(tuple(results), truncated)
