"""
Tubal CUR Toolkit
=================

Tubal (t-product) tensor algebra with randomized slice sampling: the
rt-product, t-CX / t-CUR decompositions, ADMM robust PCA and completion,
and the CUR t-NN divide-and-conquer solver.
"""

__version__ = "1.0.0"

from .algebra import Tensor3, t_product, t_transpose, t_svd, t_pinv, tubal_rank, tnn
from .sampling import ProbSpec, SamplingPlan, rt_product, lateral_leverage, horizontal_leverage, approx_leverage
from .decomp import t_cx, t_cur, truncated_tsvd, coherence
from .solvers import AdmmConfig, admm_rpca, admm_complete, cur_tnn, ObservationMask
from .tensorfile import read_tensor, write_tensor, read_mask, write_mask
from .utils import save_json

__all__ = [
    "Tensor3",
    "t_product",
    "t_transpose",
    "t_svd",
    "t_pinv",
    "tubal_rank",
    "tnn",
    "ProbSpec",
    "SamplingPlan",
    "rt_product",
    "lateral_leverage",
    "horizontal_leverage",
    "approx_leverage",
    "t_cx",
    "t_cur",
    "truncated_tsvd",
    "coherence",
    "AdmmConfig",
    "admm_rpca",
    "admm_complete",
    "cur_tnn",
    "ObservationMask",
    "read_tensor",
    "write_tensor",
    "read_mask",
    "write_mask",
    "save_json",
]
