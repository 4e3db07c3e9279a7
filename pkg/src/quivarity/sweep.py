"""Exhaustive enumeration of small quiver settings up to isomorphism.

Settings are generated orderly: dimension vectors as sorted tuples, then
off-diagonal arrow counts that are lexicographically least among all vertex
permutations fixing the dimension vector, then loop counts that are least
under the automorphisms of what came before.  Vertices are named ``a, b, c, ...``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .quiver import DimensionVector, Quiver, QuiverSetting

NAMES = "abcdefghij"


@dataclass(frozen=True)
class SweepSpec:
    max_vertices: int
    max_dim: int
    max_arrows: int  # per ordered pair (per unordered pair when symmetric)
    loops: bool = True
    symmetric: bool = False
    alpha_one: bool = False
    strongly_connected: bool = True
    min_vertices: int = 1


def _positions(n: int, symmetric: bool) -> list[tuple[int, int]]:
    if symmetric:
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def _perm_maps(n: int, pos: list[tuple[int, int]], perms, symmetric: bool) -> np.ndarray:
    where = {p: k for k, p in enumerate(pos)}
    maps = []
    for p in perms:
        row = []
        for i, j in pos:
            a, b = p[i], p[j]
            if symmetric and a > b:
                a, b = b, a
            row.append(where[(a, b)])
        maps.append(row)
    return np.array(maps, dtype=np.intp)


def _canonical_offdiag(n, dims, spec) -> list[tuple[np.ndarray, list]]:
    """Canonical off-diagonal count vectors for sorted ``dims`` with their automorphisms."""
    pos = _positions(n, spec.symmetric)
    perms = [p for p in itertools.permutations(range(n)) if all(dims[p[i]] == dims[i] for i in range(n))]
    base = spec.max_arrows + 1
    if not pos:
        return [(np.zeros(0, dtype=np.int64), perms)]
    grid = np.array(list(itertools.product(range(base), repeat=len(pos))), dtype=np.int64)
    weights = base ** np.arange(len(pos) - 1, -1, -1, dtype=np.int64)
    code = grid @ weights
    maps = _perm_maps(n, pos, perms, spec.symmetric)
    best = code.copy()
    for m in maps:
        best = np.minimum(best, grid[:, m] @ weights)
    keep = grid[code == best]
    if spec.strongly_connected and n > 1:
        adj = np.zeros((len(keep), n, n), dtype=np.int64)
        for k, (i, j) in enumerate(pos):
            adj[:, i, j] = keep[:, k] > 0
            if spec.symmetric:
                adj[:, j, i] = keep[:, k] > 0
        reach = adj | np.eye(n, dtype=np.int64)[None]
        for _ in range(n.bit_length()):
            reach = (reach @ reach > 0).astype(np.int64)
        keep = keep[reach.reshape(len(keep), -1).all(axis=1)]
    kcode = keep @ weights
    fixed = (keep[:, maps] @ weights) == kcode[:, None]
    return [(row, [p for p, f in zip(perms, flags) if f]) for row, flags in zip(keep, fixed.tolist())]


def _loop_vectors(n: int, max_loops: int, aut: list) -> list[tuple[int, ...]]:
    out = []
    for lv in itertools.product(range(max_loops + 1), repeat=n):
        if all(lv <= tuple(lv[p[i]] for i in range(n)) for p in aut):
            out.append(lv)
    return out


def enumerate_settings(spec: SweepSpec) -> Iterator[QuiverSetting]:
    """Every setting in the family, once per isomorphism class."""
    for n in range(spec.min_vertices, spec.max_vertices + 1):
        names = tuple(NAMES[:n])
        pos = _positions(n, spec.symmetric)
        if spec.alpha_one:
            dimsets = [(1,) * n]
        else:
            dimsets = list(itertools.combinations_with_replacement(range(1, spec.max_dim + 1), n))
        loop_cache: dict[tuple, list] = {}
        for dims in dimsets:
            alpha = DimensionVector._trusted(tuple(zip(names, dims)))
            for row, aut in _canonical_offdiag(n, dims, spec):
                base_counts = {}
                for (i, j), c in zip(pos, row.tolist()):
                    if c:
                        base_counts[names[i], names[j]] = c
                        if spec.symmetric:
                            base_counts[names[j], names[i]] = c
                if not spec.loops:
                    yield QuiverSetting._trusted(Quiver._trusted(names, counts=base_counts), alpha)
                    continue
                key = tuple(aut)
                if key not in loop_cache:
                    loop_cache[key] = _loop_vectors(n, spec.max_arrows, aut)
                for lv in loop_cache[key]:
                    counts = dict(base_counts)
                    for i, c in enumerate(lv):
                        if c:
                            counts[names[i], names[i]] = c
                    yield QuiverSetting._trusted(Quiver._trusted(names, counts=counts), alpha)


# corpora named by the acceptance criteria that use them
SYMMETRIC_CORPUS = SweepSpec(max_vertices=4, max_dim=4, max_arrows=3, loops=False, symmetric=True)
ALPHA_ONE_CORPUS = SweepSpec(max_vertices=4, max_dim=1, max_arrows=2, loops=True, alpha_one=True)
SMALL_CORPUS = SweepSpec(max_vertices=3, max_dim=3, max_arrows=2, loops=True)
