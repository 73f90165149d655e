"""
Randomized t-product (rt-product).
"""

import numpy as np

from ..algebra import Tensor3, spectral_svd, t_product, t_transpose
from ..errors import DimMismatch
from .plan import SamplingPlan, draw_plan


def rt_product(a: Tensor3, b: Tensor3, probs, c: float, seed: int) -> tuple[Tensor3, SamplingPlan]:
    """
    Approximate A * B by C * R built from sampled, rescaled slices.

    C holds the selected lateral slices of A and R the matching horizontal
    slices of B, each scaled by the plan weight. S and D are never formed.

    Returns:
        (C * R, plan used)
    """
    if a.n2 != b.n1 or a.n3 != b.n3:
        raise DimMismatch("rt_product needs a.n2 == b.n1 and equal n3", a.dims, b.dims)
    plan = draw_plan(probs, c, seed)
    return t_product(plan.gather_lateral(a), plan.gather_horizontal(b)), plan


def near_orthogonality(v: Tensor3, plan: SamplingPlan) -> np.ndarray:
    """
    Singular values of V^T * S * D for every independent Fourier slice.

    Args:
        v: n2 x r x n3 orthonormal factor.
        plan: Lateral sampling plan over the n2 index.

    Returns:
        (n3//2 + 1, r) array, zero-padded when fewer than r slices were kept.
    """
    vsd = t_transpose(plan.gather_horizontal(v))
    s = spectral_svd(vsd).s
    out = np.zeros((s.shape[0], v.n2))
    out[:, :s.shape[1]] = s[:, :v.n2]
    return out
