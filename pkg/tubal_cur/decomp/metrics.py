"""
Relative error metrics.
"""

import numpy as np

from ..algebra import Tensor3, spectral_norm
from ..errors import DegenerateInput, DimMismatch


def _diff(exact: Tensor3, approx: Tensor3) -> Tensor3:
    if exact.dims != approx.dims:
        raise DimMismatch("metric operands differ in dims", exact.dims, approx.dims)
    return exact - approx


def _ratio(num: float, den: float, what: str) -> float:
    if not den > 0.0:
        raise DegenerateInput(f"{what}: zero denominator")
    return float(num / den)


def rfe(exact: Tensor3, approx: Tensor3, norm_sq: float | None = None) -> float:
    """
    Relative Frobenius error of a product estimate.

    Args:
        exact: The exact product (e.g. U^T * U).
        approx: Its estimate.
        norm_sq: Denominator; callers pass ||U||_F^2. Defaults to ||exact||_F.
    """
    den = exact.frob_norm() if norm_sq is None else norm_sq
    return _ratio(_diff(exact, approx).frob_norm(), den, "rfe")


def rse_spec(exact: Tensor3, approx: Tensor3, norm_sq: float | None = None) -> float:
    """Relative spectral error; denominator defaults to ||exact|| (pass ||U||^2 for products)."""
    den = spectral_norm(exact) if norm_sq is None else norm_sq
    return _ratio(spectral_norm(_diff(exact, approx)), den, "rse_spec")


def rse_frob(exact: Tensor3, approx: Tensor3) -> float:
    """||exact - approx||_F / ||exact||_F."""
    return _ratio(_diff(exact, approx).frob_norm(), exact.frob_norm(), "rse_frob")


def max_abs_diff(a: Tensor3, b: Tensor3) -> float:
    return float(np.abs(_diff(a, b).array).max())
