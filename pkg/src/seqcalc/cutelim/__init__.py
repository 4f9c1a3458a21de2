"""Cut elimination for the exponential-storage calculi."""

from seqcalc.cutelim.engine import (
    CutElimError,
    CutElimResult,
    SUPPORTED_CALCULI,
    Step,
    cut_step,
    eliminate_cuts,
)
from seqcalc.cutelim.multicut import NoCase, count_cuts

__all__ = [
    "CutElimError",
    "CutElimResult",
    "SUPPORTED_CALCULI",
    "Step",
    "cut_step",
    "eliminate_cuts",
    "NoCase",
    "count_cuts",
]
