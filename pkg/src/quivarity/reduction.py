"""Reduction calculus on quiver settings and the coregularity classifier.

Three rewriting steps shrink a setting while keeping its invariant ring
intact up to a tensor factor with a polynomial ring:

* ``RI``   delete a loopless vertex whose in- or out-flow is small, composing
           every incoming arrow with every outgoing arrow;
* ``RII``  delete the loops at a dimension-1 vertex (``k`` free variables);
* ``RIII`` delete the single loop at a vertex of dimension ``k >= 2`` that has
           exactly one incoming arrow from (or one outgoing arrow to) a
           dimension-1 vertex, and replace that arrow by ``k`` parallel copies
           (``k`` free variables).

A strongly connected genuine setting is coregular iff its fully reduced form
is a lone vertex, a lone vertex with one loop, or a dimension-2 vertex with two
loops.
"""

from __future__ import annotations

import random
from enum import Enum
from typing import NamedTuple

from .quiver import DimensionVector, Quiver, QuiverError, QuiverSetting, scc_decompose, strip_zero_vertices


class ReductionError(QuiverError):
    """A reduction step was requested where it does not apply."""


class Terminal(str, Enum):
    T1 = "T1"  # lone vertex, no arrows
    T2 = "T2"  # lone vertex, one loop
    T3 = "T3"  # dimension 2, two loops


class ReductionStep(NamedTuple):
    kind: str
    vertex: str
    # RI: created arrows as ((source, target), count) pairs; RII: number of loops
    # removed; RIII: ("in" | "out", k, neighbour).
    detail: tuple | int

    @property
    def split_off(self) -> int:
        if self.kind == "RII":
            return self.detail
        if self.kind == "RIII":
            return self.detail[1]
        return 0

    def describe(self) -> str:
        if self.kind == "RI":
            made = ", ".join(f"{s}->{t}" + (f" x{c}" if c > 1 else "") for (s, t), c in self.detail)
            return f"RI at {self.vertex}: created [{made}]"
        if self.kind == "RII":
            return f"RII at {self.vertex}: removed {self.detail} loop(s)"
        side, k, w = self.detail
        arrow = f"{w}->{self.vertex}" if side == "in" else f"{self.vertex}->{w}"
        return f"RIII at {self.vertex}: removed loop, {arrow} multiplied by {k}"


class ReductionTrace(NamedTuple):
    initial: QuiverSetting
    steps: tuple[ReductionStep, ...]
    polynomial_part: int
    final: QuiverSetting

    def replay(self) -> QuiverSetting:
        s = self.initial
        for st in self.steps:
            s = apply_step(s, st)
        return s


# ---------------------------------------------------------------------------
# internal mutable state: dims plus mirrored adjacency count maps


class _State:
    __slots__ = ("dims", "out", "inn")

    def __init__(self, s: QuiverSetting):
        verts = s.quiver.vertices
        self.dims = dict(zip(verts, s.alpha.values_tuple()))
        out = self.out = {v: {} for v in verts}
        inn = self.inn = {v: {} for v in verts}
        for (a, b), c in s.quiver.counts.items():
            out[a][b] = c
            inn[b][a] = c

    def add(self, a, b, c):
        o = self.out[a]
        o[b] = o.get(b, 0) + c
        i = self.inn[b]
        i[a] = i.get(a, 0) + c

    def remove_all(self, a, b):
        del self.out[a][b]
        del self.inn[b][a]

    def to_setting(self) -> QuiverSetting:
        counts = {}
        for a, nbrs in self.out.items():
            for b, c in nbrs.items():
                counts[a, b] = c
        return QuiverSetting._trusted(
            Quiver._trusted(tuple(self.dims), counts=counts), DimensionVector._trusted(tuple(self.dims.items()))
        )


def _ri_ok(st: _State, v: str, allow_isolated: bool = True) -> bool:
    out = st.out[v]
    if v in out:
        return False
    inn = st.inn[v]
    if not (out or inn):
        return allow_isolated
    dims = st.dims
    d = dims[v]
    total = 0
    for u, c in inn.items():
        total += c * dims[u]
    if total <= d:
        return True
    total = 0
    for w, c in out.items():
        total += c * dims[w]
    return total <= d


def _rii_ok(st: _State, v: str) -> bool:
    return st.dims[v] == 1 and v in st.out[v]


def _riii_side(st: _State, v: str) -> tuple[str, str] | None:
    """Which arrow RIII would multiply: ("in", source) or ("out", target); incoming preferred."""
    dims = st.dims
    if dims[v] < 2 or st.out[v].get(v) != 1:
        return None
    for side, nbrs in (("in", st.inn[v]), ("out", st.out[v])):
        count = 0
        hit = None
        for w, c in nbrs.items():
            if w == v:
                continue
            count += c
            hit = w
        if count == 1 and dims[hit] == 1:
            return side, hit
    return None


def _do_ri(st: _State, v: str) -> ReductionStep:
    out, inn = st.out, st.inn
    ins = sorted(inn.pop(v).items())
    outs = sorted(out.pop(v).items())
    del st.dims[v]
    for u, _ in ins:
        del out[u][v]
    for w, _ in outs:
        del inn[w][v]
    made = []
    for u, a in ins:
        ou = out[u]
        for w, b in outs:
            c = a * b
            ou[w] = ou.get(w, 0) + c
            iw = inn[w]
            iw[u] = iw.get(u, 0) + c
            made.append(((u, w), c))
    return ReductionStep("RI", v, tuple(made))


def _do_rii(st: _State, v: str) -> ReductionStep:
    k = st.out[v][v]
    st.remove_all(v, v)
    return ReductionStep("RII", v, k)


def _do_riii(st: _State, v: str, side: str, w: str) -> ReductionStep:
    k = st.dims[v]
    st.remove_all(v, v)
    if side == "in":
        st.add(w, v, k - 1)
    else:
        st.add(v, w, k - 1)
    return ReductionStep("RIII", v, (side, k, w))


def _check_vertex(s: QuiverSetting, v: str) -> None:
    if v not in s.quiver.index:
        raise ReductionError(f"unknown vertex {v!r}")


# ---------------------------------------------------------------------------
# public single-step API


def applicable_RI(s: QuiverSetting, v: str) -> bool:
    _check_vertex(s, v)
    return _ri_ok(_State(s), v)


def apply_RI(s: QuiverSetting, v: str) -> QuiverSetting:
    return _apply(s, v, "RI")[0]


def applicable_RII(s: QuiverSetting, v: str) -> bool:
    _check_vertex(s, v)
    return s.alpha[v] == 1 and s.quiver.loops(v) >= 1


def apply_RII(s: QuiverSetting, v: str) -> tuple[QuiverSetting, int]:
    """Strip the loops at ``v``; returns the new setting and the number of loops removed."""
    new, step = _apply(s, v, "RII")
    return new, step.detail


def applicable_RIII(s: QuiverSetting, v: str) -> bool:
    _check_vertex(s, v)
    return _riii_side(_State(s), v) is not None


def apply_RIII(s: QuiverSetting, v: str) -> QuiverSetting:
    return _apply(s, v, "RIII")[0]


def _apply(s: QuiverSetting, v: str, kind: str) -> tuple[QuiverSetting, ReductionStep]:
    _check_vertex(s, v)
    st = _State(s)
    if kind == "RI":
        if not _ri_ok(st, v):
            raise ReductionError(f"RI does not apply at {v!r}")
        step = _do_ri(st, v)
    elif kind == "RII":
        if not _rii_ok(st, v):
            raise ReductionError(f"RII does not apply at {v!r}")
        step = _do_rii(st, v)
    elif kind == "RIII":
        side = _riii_side(st, v)
        if side is None:
            raise ReductionError(f"RIII does not apply at {v!r}")
        step = _do_riii(st, v, *side)
    else:
        raise ValueError(f"unknown step kind {kind!r}")
    return st.to_setting(), step


def apply_step(s: QuiverSetting, step: ReductionStep) -> QuiverSetting:
    new, redo = _apply(s, step.vertex, step.kind)
    if redo != step:
        raise ReductionError(f"step {step} does not replay: got {redo}")
    return new


# ---------------------------------------------------------------------------
# full reduction


def _moves(st: _State) -> list[tuple[str, str]]:
    moves = []
    for v in st.dims:
        if _ri_ok(st, v, allow_isolated=False):
            moves.append(("RI", v))
        if _rii_ok(st, v):
            moves.append(("RII", v))
        if _riii_side(st, v) is not None:
            moves.append(("RIII", v))
    return moves


def _step(st: _State, kind: str, v: str) -> ReductionStep:
    if kind == "RI":
        return _do_ri(st, v)
    if kind == "RII":
        return _do_rii(st, v)
    return _do_riii(st, v, *_riii_side(st, v))


def reduce(s: QuiverSetting, strategy: str = "canonical", seed: int | None = None) -> ReductionTrace:
    """Apply reduction steps until none applies.

    ``strategy="canonical"`` sweeps the vertices in order, applying at each
    the first of RI, RII, RIII that fits, and repeats sweeps until a sweep
    changes nothing.  ``strategy="randomized"`` picks uniformly among all
    applicable moves with a ``random.Random(seed)`` stream.

    RI is never applied to an isolated vertex: that would only delete a
    trivial factor and the lone-vertex normal form could not be reached.
    """
    st = _State(s)
    steps = []
    if strategy == "canonical":
        dims, out = st.dims, st.out
        changed = True
        while changed:
            changed = False
            for v in list(dims):
                if v not in dims:
                    continue
                if _ri_ok(st, v, allow_isolated=False):
                    steps.append(_do_ri(st, v))
                elif dims[v] == 1 and v in out[v]:
                    steps.append(_do_rii(st, v))
                else:
                    side = _riii_side(st, v)
                    if side is None:
                        continue
                    steps.append(_do_riii(st, v, *side))
                changed = True
    elif strategy == "randomized":
        rng = random.Random(seed)
        while True:
            moves = _moves(st)
            if not moves:
                break
            kind, v = moves[rng.randrange(len(moves))]
            steps.append(_step(st, kind, v))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    poly = 0
    for step in steps:
        if step.kind != "RI":
            poly += step.split_off
    final = st.to_setting() if steps else s
    return ReductionTrace(s, tuple(steps), poly, final)


def is_reduced(s: QuiverSetting) -> bool:
    return not _moves(_State(s))


def is_terminal(s: QuiverSetting) -> Terminal | None:
    if len(s.vertices) != 1:
        return None
    (v,) = s.vertices
    k = s.alpha[v]
    n = len(s.arrows)
    if k < 1:
        return None
    if n == 0:
        return Terminal.T1
    if n == 1:
        return Terminal.T2
    if n == 2 and k == 2:
        return Terminal.T3
    return None


def terminal_contribution(s: QuiverSetting, kind: Terminal) -> int:
    """Number of polynomial generators of the terminal setting's invariant ring."""
    if kind is Terminal.T1:
        return 0
    if kind is Terminal.T2:
        return s.alpha[s.vertices[0]]
    return 5


class ComponentVerdict(NamedTuple):
    setting: QuiverSetting
    trace: ReductionTrace
    terminal: Terminal | None

    @property
    def coregular(self) -> bool:
        return self.terminal is not None

    @property
    def dimension(self) -> int | None:
        """Split-off variables plus terminal generators; None when not coregular."""
        if self.terminal is None:
            return None
        return self.trace.polynomial_part + terminal_contribution(self.trace.final, self.terminal)


class Verdict(NamedTuple):
    setting: QuiverSetting
    components: tuple[ComponentVerdict, ...] = ()

    @property
    def coregular(self) -> bool:
        return all(c.terminal is not None for c in self.components)

    @property
    def polynomial_part(self) -> int:
        return sum(c.trace.polynomial_part for c in self.components)

    @property
    def terminal_matches(self) -> tuple[Terminal | None, ...]:
        return tuple(c.terminal for c in self.components)

    @property
    def trace_per_component(self) -> dict[QuiverSetting, ReductionTrace]:
        return {c.setting: c.trace for c in self.components}

    @property
    def dimension(self) -> int | None:
        """Krull dimension of the invariant ring when coregular, else None."""
        if not self.coregular:
            return None
        return sum(c.dimension for c in self.components)


def classify(s: QuiverSetting, strategy: str = "canonical", seed: int | None = None) -> Verdict:
    s0 = strip_zero_vertices(s)
    comps = []
    for c in scc_decompose(s0) if s0.vertices else []:
        tr = reduce(c, strategy, seed)
        comps.append(ComponentVerdict(c, tr, is_terminal(tr.final)))
    return Verdict(s, tuple(comps))


def is_coregular(s: QuiverSetting) -> bool:
    return classify(s).coregular
