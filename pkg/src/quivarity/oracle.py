"""Numerical cross-checks: random representations, trace invariants, Jacobian rank.

Real Gaussian sampling is enough here: the generators are polynomials with
real coefficients, so their generic Jacobian rank is attained on a dense set
of real points.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .cycles import Cycle, quasi_primitive_cycles
from .quiver import QuiverError, QuiverSetting, strip_zero_vertices


class OracleError(QuiverError):
    pass


@dataclass(frozen=True)
class Representation:
    """Matrix ``W[a]`` of shape ``(dim target, dim source)`` for every arrow index ``a``."""

    setting: QuiverSetting
    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        arrows = self.setting.arrows
        if len(self.matrices) != len(arrows):
            raise OracleError(f"expected {len(arrows)} matrices, got {len(self.matrices)}")
        for i, ((s, t), m) in enumerate(zip(arrows, self.matrices)):
            want = (self.setting.alpha[t], self.setting.alpha[s])
            if m.shape != want:
                raise OracleError(f"arrow {i} ({s}->{t}) has shape {m.shape}, expected {want}")

    def __getitem__(self, a: int) -> np.ndarray:
        return self.matrices[a]

    @classmethod
    def zero(cls, s: QuiverSetting) -> Representation:
        return cls(s, tuple(np.zeros((s.alpha[t], s.alpha[u])) for u, t in s.arrows))

    @classmethod
    def random(cls, s: QuiverSetting, rng: np.random.Generator) -> Representation:
        return cls(s, tuple(rng.standard_normal((s.alpha[t], s.alpha[u])) for u, t in s.arrows))

    @classmethod
    def from_vector(cls, s: QuiverSetting, x: np.ndarray) -> Representation:
        mats = []
        pos = 0
        for u, t in s.arrows:
            r, c = s.alpha[t], s.alpha[u]
            mats.append(x[pos : pos + r * c].reshape(r, c))
            pos += r * c
        return cls(s, tuple(mats))

    def to_vector(self) -> np.ndarray:
        if not self.matrices:
            return np.zeros(0)
        return np.concatenate([m.ravel() for m in self.matrices])

    @classmethod
    def simple_at(cls, s: QuiverSetting, v: str, loop_value: float = 0.0) -> Representation:
        """The one-dimensional representation at ``v``: every arrow zero except loops at ``v``."""
        if s.alpha[v] != 1 or any(s.alpha[w] for w in s.vertices if w != v):
            raise OracleError("simple_at needs the dimension vector eps_v")
        mats = []
        for a, b in s.arrows:
            m = np.zeros((s.alpha[b], s.alpha[a]))
            if a == b == v:
                m[0, 0] = loop_value
            mats.append(m)
        return cls(s, tuple(mats))


@dataclass(frozen=True)
class GaugeElement:
    blocks: Mapping[str, np.ndarray]

    @classmethod
    def identity(cls, s: QuiverSetting) -> GaugeElement:
        return cls({v: np.eye(s.alpha[v]) for v in s.vertices})

    @classmethod
    def random(cls, s: QuiverSetting, rng: np.random.Generator, max_cond: float = 50.0) -> GaugeElement:
        blocks = {}
        for v in s.vertices:
            n = s.alpha[v]
            while True:
                g = rng.standard_normal((n, n))
                if n == 0 or np.linalg.cond(g) < max_cond:
                    break
            blocks[v] = g
        return cls(blocks)


def eval_cycle_trace(w: Representation, c: Cycle) -> float:
    mats = [w[a] for a in c.arrows]
    prod = mats[0]
    for m in mats[1:]:
        if prod.shape[1] != m.shape[0]:
            raise OracleError("matrix shapes along the cycle do not compose")
        prod = prod @ m
    if prod.shape[0] != prod.shape[1]:
        raise OracleError("cycle product is not square")
    return float(np.trace(prod))


def apply_gauge(w: Representation, g: GaugeElement, cond_bound: float = 1e12) -> Representation:
    """``W[a] -> g[target] W[a] g[source]^{-1}``."""
    inv = {}
    for v, b in g.blocks.items():
        if b.size and np.linalg.cond(b) > cond_bound:
            raise OracleError(f"gauge block at {v!r} is singular")
        inv[v] = np.linalg.inv(b) if b.size else b
    out = []
    for (s, t), m in zip(w.setting.arrows, w.matrices):
        out.append(g.blocks[t] @ m @ inv[s])
    return Representation(w.setting, tuple(out))


def _offsets(s: QuiverSetting) -> list[int]:
    off = [0]
    for u, t in s.arrows:
        off.append(off[-1] + s.alpha[t] * s.alpha[u])
    return off


def cycle_gradient(w: Representation, c: Cycle) -> np.ndarray:
    """Gradient of ``Tr(W[a_1] ... W[a_p])`` in the flattened arrow coordinates.

    ``d/dW[a]_{rs}`` is the ``(s, r)`` entry of the cyclic product of the other
    factors, summed over the positions where ``a`` occurs.
    """
    s = w.setting
    off = _offsets(s)
    grad = np.zeros(off[-1])
    mats = [w[a] for a in c.arrows]
    p = len(mats)
    # prefix[i] = M_0 ... M_{i-1}; suffix[i] = M_{i+1} ... M_{p-1}
    prefix = [None] * p
    suffix = [None] * p
    acc = None
    for i in range(p):
        prefix[i] = acc
        acc = mats[i] if acc is None else acc @ mats[i]
    acc = None
    for i in range(p - 1, -1, -1):
        suffix[i] = acc
        acc = mats[i] if acc is None else mats[i] @ acc
    for i, a in enumerate(c.arrows):
        if suffix[i] is None and prefix[i] is None:
            rest = np.eye(mats[i].shape[1])
        elif suffix[i] is None:
            rest = prefix[i]
        elif prefix[i] is None:
            rest = suffix[i]
        else:
            rest = suffix[i] @ prefix[i]
        grad[off[a] : off[a + 1]] += rest.T.ravel()
    return grad


def jacobian(w: Representation, cycles: Sequence[Cycle]) -> np.ndarray:
    n = _offsets(w.setting)[-1]
    if not cycles:
        return np.zeros((0, n))
    return np.vstack([cycle_gradient(w, c) for c in cycles])


def finite_difference_jacobian(w: Representation, cycles: Sequence[Cycle], step: float = 1e-6) -> np.ndarray:
    x = w.to_vector()
    jac = np.zeros((len(cycles), x.size))
    for k in range(x.size):
        xp, xm = x.copy(), x.copy()
        xp[k] += step
        xm[k] -= step
        wp = Representation.from_vector(w.setting, xp)
        wm = Representation.from_vector(w.setting, xm)
        for i, c in enumerate(cycles):
            jac[i, k] = (eval_cycle_trace(wp, c) - eval_cycle_trace(wm, c)) / (2 * step)
    return jac


def numerical_rank(jac: np.ndarray, tol: float = 1e-8) -> int:
    """Rank after scaling rows to unit length; singular values above ``tol * max``.

    Row scaling does not change the rank but keeps high-degree generators from
    swamping low-degree ones.
    """
    if jac.size == 0:
        return 0
    norms = np.linalg.norm(jac, axis=1)
    rows = jac[norms > 0] / norms[norms > 0, None]
    if rows.size == 0:
        return 0
    sv = np.linalg.svd(rows, compute_uv=False)
    return int(np.sum(sv > tol * sv[0]))


def jacobian_rank(
    s: QuiverSetting, cycles: Sequence[Cycle], samples: int = 8, tol: float = 1e-8, seed: int = 0
) -> int:
    """Largest numerical rank of the generator Jacobian over ``samples`` random points."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    best = 0
    for _ in range(samples):
        w = Representation.random(s, rng)
        best = max(best, numerical_rank(jacobian(w, cycles), tol))
    return best


def estimate_iss_dimension(
    s: QuiverSetting, samples: int = 8, tol: float = 1e-8, seed: int = 0, max_len: int | None = None
) -> int:
    """Generic rank of the quasi-primitive trace generators, i.e. ``dim iss_alpha Q``."""
    s = strip_zero_vertices(s)
    cycles = quasi_primitive_cycles(s, max_len) if s.vertices else []
    if not cycles:
        if quasi_primitive_cycles(s, max(len(s.vertices), 1)) if s.vertices else []:
            raise OracleError("no generator cycles within the length bound; raise max_len")
        return 0
    return jacobian_rank(s, cycles, samples, tol, seed)
