"""
Slice-sampled tensor regression estimates.
"""

from ..algebra import Tensor3, t_pinv, t_product_chain
from ..config import TOLERANCES
from ..errors import DimMismatch
from ..sampling import SamplingPlan


def regression_baseline(a: Tensor3, lowrank: Tensor3, tol: float = TOLERANCES["rank"]) -> Tensor3:
    """A * L^† * L, the exact projection of A onto the row space of L."""
    if a.dims != lowrank.dims:
        raise DimMismatch("regression needs equal dims", a.dims, lowrank.dims)
    return t_product_chain(a, t_pinv(lowrank, tol), lowrank)


def slice_regression(a: Tensor3, lowrank: Tensor3, plan: SamplingPlan,
                     tol: float = TOLERANCES["rank"]) -> Tensor3:
    """
    A * S * D * (L * S * D)^† * L from the lateral slices in ``plan``.

    ``tol`` is the relative pseudoinverse cutoff; it must sit above round-off
    so numerically null directions of L are not inverted. With a plan that
    holds every slice at unit scale this equals the baseline.
    """
    if a.dims != lowrank.dims:
        raise DimMismatch("regression needs equal dims", a.dims, lowrank.dims)
    return t_product_chain(plan.gather_lateral(a), t_pinv(plan.gather_lateral(lowrank), tol), lowrank)
