"""
Randomized low-rank decompositions, coherence diagnostics and error metrics.
"""

from .cx import CxResult, CurResult, t_cx, t_cur, lateral_plan, horizontal_probs
from .truncate import truncated_tsvd
from .coherence import CoherenceReport, coherence, mu0, mu1
from .metrics import rfe, rse_spec, rse_frob, max_abs_diff
from .regression import regression_baseline, slice_regression

__all__ = [
    "CxResult",
    "CurResult",
    "t_cx",
    "t_cur",
    "lateral_plan",
    "horizontal_probs",
    "truncated_tsvd",
    "CoherenceReport",
    "coherence",
    "mu0",
    "mu1",
    "rfe",
    "rse_spec",
    "rse_frob",
    "max_abs_diff",
    "regression_baseline",
    "slice_regression",
]
