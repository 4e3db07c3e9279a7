"""Decide whether the quotient of a quiver setting by its base-change group is smooth."""

from .quiver import (
    DimensionVector,
    EulerForm,
    Quiver,
    QuiverError,
    QuiverSetting,
    chi,
    euler_matrix,
    is_strongly_connected,
    is_subquiver,
    is_symmetric,
    scc_decompose,
    strip_zero_vertices,
)
from .reduction import (
    ReductionStep,
    ReductionTrace,
    Terminal,
    Verdict,
    apply_RI,
    apply_RII,
    apply_RIII,
    applicable_RI,
    applicable_RII,
    applicable_RIII,
    classify,
    is_terminal,
    reduce,
)

__version__ = "0.1.0"

__all__ = [
    "DimensionVector",
    "EulerForm",
    "Quiver",
    "QuiverError",
    "QuiverSetting",
    "ReductionStep",
    "ReductionTrace",
    "Terminal",
    "Verdict",
    "apply_RI",
    "apply_RII",
    "apply_RIII",
    "applicable_RI",
    "applicable_RII",
    "applicable_RIII",
    "chi",
    "classify",
    "euler_matrix",
    "is_strongly_connected",
    "is_subquiver",
    "is_symmetric",
    "is_terminal",
    "reduce",
    "scc_decompose",
    "strip_zero_vertices",
]
