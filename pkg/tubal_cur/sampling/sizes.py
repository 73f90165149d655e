"""
Sample-size formulas for slice sampling guarantees.
"""

import math


def spectral_sample_size(r: int, eps: float, delta: float, beta: float = 1.0) -> int:
    """c >= 48 r log(4r / (beta delta)) / (beta eps^2)."""
    _check(eps, delta, beta)
    return math.ceil(48.0 * r * math.log(4.0 * r / (beta * delta)) / (beta * eps ** 2))


def coherent_sample_size(rho: float, eps: float, delta: float, const: float = 1.0) -> int:
    """Uniform-sampling count const * rho log(rho) log(1/delta) / eps^2."""
    _check(eps, delta, 1.0)
    rho = max(rho, 1.0)
    return max(1, math.ceil(const * rho * max(math.log(rho), 1.0) * math.log(1.0 / delta) / eps ** 2))


def leverage_sample_size(r: int, eps: float, delta: float, beta: float = 1.0, const: float = 1.0) -> int:
    """Nonuniform-sampling count const * r log(r/beta) log(1/delta) / (beta eps^2)."""
    _check(eps, delta, beta)
    return max(1, math.ceil(const * r * max(math.log(r / beta), 1.0) * math.log(1.0 / delta) / (beta * eps ** 2)))


def auto_slices(r: int) -> int:
    """l ~ r log r slices."""
    return max(1, math.ceil(r * math.log(max(r, 2))))


def _check(eps: float, delta: float, beta: float) -> None:
    if not (0.0 < eps <= 1.0):
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if not (0.0 < beta <= 1.0):
        raise ValueError(f"beta must lie in (0, 1], got {beta}")
