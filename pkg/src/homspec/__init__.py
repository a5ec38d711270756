"""Exact spectra of invariant operators on SU(2)/Gamma and T^3."""

from .catalog import CASES, rigidity_report, run_case
from .operators import Frame, OperatorSpec, block_matrix
from .scalars import Cyc
from .solver import Problem, certified_cutoff, solve

__all__ = [
    "CASES",
    "Cyc",
    "Frame",
    "OperatorSpec",
    "Problem",
    "block_matrix",
    "certified_cutoff",
    "rigidity_report",
    "run_case",
    "solve",
]
__version__ = "0.1.0"
