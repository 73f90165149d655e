"""
Robust PCA and completion: proximal maps, ADMM and CUR t-NN.
"""

from .prox import t_svt, soft_threshold, svt_stack
from .masks import ObservationMask, make_mask, corrupt_salt_pepper
from .admm import AdmmConfig, AdmmReport, StopReason, admm_rpca, admm_complete, default_lambda
from .cur_tnn import Problem, cur_tnn, master_bound_terms

__all__ = [
    "t_svt",
    "soft_threshold",
    "svt_stack",
    "ObservationMask",
    "make_mask",
    "corrupt_salt_pepper",
    "AdmmConfig",
    "AdmmReport",
    "StopReason",
    "admm_rpca",
    "admm_complete",
    "default_lambda",
    "Problem",
    "cur_tnn",
    "master_bound_terms",
]
