"""
Slice sampling: probabilities, selection plans and the randomized t-product.
"""

from .probs import (
    ProbKind,
    ProbSpec,
    check_probs,
    uniform_probs,
    lateral_norms,
    horizontal_norms,
    probs_norm_product,
    probs_norm_a,
    lateral_leverage,
    horizontal_leverage,
    approx_leverage,
    probs_for,
)
from .plan import SamplingPlan, draw_plan, draw_distinct_plan, full_plan, inclusion_probs
from .multiply import rt_product, near_orthogonality
from .sizes import spectral_sample_size, coherent_sample_size, leverage_sample_size, auto_slices

__all__ = [
    "ProbKind",
    "ProbSpec",
    "check_probs",
    "uniform_probs",
    "lateral_norms",
    "horizontal_norms",
    "probs_norm_product",
    "probs_norm_a",
    "lateral_leverage",
    "horizontal_leverage",
    "approx_leverage",
    "probs_for",
    "SamplingPlan",
    "draw_plan",
    "draw_distinct_plan",
    "full_plan",
    "inclusion_probs",
    "rt_product",
    "near_orthogonality",
    "spectral_sample_size",
    "coherent_sample_size",
    "leverage_sample_size",
    "auto_slices",
]
