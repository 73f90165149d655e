"""
Tubal tensor algebra: tensors, Fourier helpers, t-product and t-SVD.
"""

from .tensor import Tensor3, SpectralTensor
from .ops import (
    dft3,
    idft3,
    t_product,
    t_product_chain,
    t_transpose,
    t_identity,
    slice_lateral,
    slice_horizontal,
    gather_lateral,
    gather_horizontal,
)
from .svd import (
    TSvd,
    SpectralSvd,
    t_svd,
    spectral_svd,
    tubal_rank,
    multi_rank,
    tnn,
    spectral_norm,
    t_pinv,
    t_project,
)
from .oracle import circ_matrix, circ_oracle, fold, unfold

__all__ = [
    "Tensor3",
    "SpectralTensor",
    "dft3",
    "idft3",
    "t_product",
    "t_product_chain",
    "t_transpose",
    "t_identity",
    "slice_lateral",
    "slice_horizontal",
    "gather_lateral",
    "gather_horizontal",
    "TSvd",
    "SpectralSvd",
    "t_svd",
    "spectral_svd",
    "tubal_rank",
    "multi_rank",
    "tnn",
    "spectral_norm",
    "t_pinv",
    "t_project",
    "circ_matrix",
    "circ_oracle",
    "fold",
    "unfold",
]
