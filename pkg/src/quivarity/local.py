"""Local quiver settings attached to semisimple representation types."""

from __future__ import annotations

from dataclasses import dataclass, field

from .quiver import DimensionVector, QuiverError, QuiverSetting, chi_setting, strip_zero_vertices, subquiver_settings
from .reduction import classify
from .simples import Decomposition, enumerate_decompositions, has_simple


class DecompositionError(QuiverError):
    """The decomposition does not describe a semisimple representation type of the setting."""


@dataclass(frozen=True)
class LocalQuiverSetting:
    setting: QuiverSetting
    provenance: Decomposition


def factor_names(d: Decomposition) -> list[str]:
    width = len(str(len(d.factors) - 1))
    return [f"f{i:0{width}d}" for i in range(len(d.factors))]


def validate_decomposition(s: QuiverSetting, d: Decomposition) -> None:
    if not d.factors:
        raise DecompositionError("empty decomposition")
    for beta, a in d.factors:
        if tuple(beta) != s.vertices:
            raise DecompositionError(f"factor {beta} is not indexed by the setting's vertices")
        if a < 1:
            raise DecompositionError(f"multiplicity {a} is not positive")
    if d.total() != s.alpha:
        raise DecompositionError(f"factors sum to {d.total()}, not {s.alpha}")
    seen_unique = set()
    for beta, _ in d.factors:
        info = has_simple(QuiverSetting(s.quiver, beta))
        if not info.exists:
            raise DecompositionError(f"no simple representation of dimension {beta}")
        if info.class_count.value == "one":
            if beta in seen_unique:
                raise DecompositionError(f"{beta} has a unique simple class but appears twice")
            seen_unique.add(beta)


def local_quiver(s: QuiverSetting, d: Decomposition, validate: bool = True) -> LocalQuiverSetting:
    """One vertex per factor with dimension its multiplicity; ``delta_ij - chi(beta_i, beta_j)`` arrows j -> i."""
    if validate:
        validate_decomposition(s, d)
    names = factor_names(d)
    betas = [b for b, _ in d.factors]
    counts = {}
    for i, bi in enumerate(betas):
        for j, bj in enumerate(betas):
            c = int(i == j) - chi_setting(s, bi, bj)
            if c < 0:
                raise DecompositionError(
                    f"negative arrow count {c} between factors {j} and {i}; decomposition or Euler form is invalid"
                )
            if c:
                counts[(names[j], names[i])] = c
    dims = {n: a for n, (_, a) in zip(names, d.factors)}
    return LocalQuiverSetting(QuiverSetting.from_counts(dims, counts), d)


def all_eps_decomposition(s: QuiverSetting) -> Decomposition:
    vs = s.vertices
    return Decomposition(tuple((DimensionVector.eps(vs, v), s.alpha[v]) for v in vs if s.alpha[v]))


@dataclass(frozen=True)
class LocalCheckReport:
    setting: QuiverSetting
    coregular: bool
    decompositions_checked: int
    truncated: bool
    # coregular input: local quivers that classify non-coregular (must stay empty)
    violations: tuple[LocalQuiverSetting, ...] = ()
    # non-coregular input: a non-coregular local quiver or subquiver of one
    witness: QuiverSetting | None = None
    witness_source: LocalQuiverSetting | None = None
    local_verdicts: tuple[bool, ...] = field(default=(), repr=False)

    @property
    def consistent(self) -> bool:
        return not self.violations

    @property
    def conclusive(self) -> bool:
        return self.coregular or self.witness is not None


def local_consistency_check(
    s: QuiverSetting, limit: int = 500, subquiver_budget: int = 2000
) -> LocalCheckReport:
    """Classify the local quiver of every enumerated decomposition.

    For a coregular setting every local quiver must be coregular; offenders
    are reported as ``violations``.  For a non-coregular setting the search
    looks for a non-coregular local quiver, then for a non-coregular
    subquiver of one (at most ``subquiver_budget`` subquivers per local
    quiver).  Finding nothing is inconclusive.
    """
    s = strip_zero_vertices(s)
    coreg = classify(s).coregular
    decs = enumerate_decompositions(s, limit)
    locs = [local_quiver(s, d, validate=False) for d in decs]
    verdicts = tuple(classify(lq.setting).coregular for lq in locs)
    if coreg:
        bad = tuple(lq for lq, ok in zip(locs, verdicts) if not ok)
        return LocalCheckReport(s, True, len(locs), decs.truncated, violations=bad, local_verdicts=verdicts)

    for lq, ok in zip(locs, verdicts):
        if not ok:
            return LocalCheckReport(
                s, False, len(locs), decs.truncated, witness=lq.setting, witness_source=lq, local_verdicts=verdicts
            )
    for lq in locs:
        for n, sub in enumerate(subquiver_settings(lq.setting, proper_only=True)):
            if n >= subquiver_budget:
                break
            if not classify(sub).coregular:
                return LocalCheckReport(
                    s, False, len(locs), decs.truncated, witness=sub, witness_source=lq, local_verdicts=verdicts
                )
    return LocalCheckReport(s, False, len(locs), decs.truncated, local_verdicts=verdicts)
