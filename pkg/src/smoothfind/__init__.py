"""Instrumented quicksort / Hoare's find under smoothed perturbations."""

__version__ = "0.1.0"

from .core import (
    PivotRule,
    RunResult,
    hoare_find,
    hoare_find_trace,
    partition_count,
    quicksort_count,
    scan_maxima,
    select_pivot,
)
from .errors import ConfigError, ContractViolation
from .perturbation import (
    AdditiveUniform,
    NoPerturbation,
    PartialPermutation,
    RngStream,
    derive_stream,
    perturb_additive,
    perturb_partial,
)

__all__ = [
    "AdditiveUniform",
    "ConfigError",
    "ContractViolation",
    "NoPerturbation",
    "PartialPermutation",
    "PivotRule",
    "RngStream",
    "RunResult",
    "derive_stream",
    "hoare_find",
    "hoare_find_trace",
    "partition_count",
    "perturb_additive",
    "perturb_partial",
    "quicksort_count",
    "scan_maxima",
    "select_pivot",
]
