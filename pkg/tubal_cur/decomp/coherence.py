"""
Coherence diagnostics for tubal low-rank tensors.
"""

from dataclasses import dataclass

import numpy as np

from ..algebra import Tensor3, t_product, t_svd, t_transpose, tubal_rank
from ..errors import RankTooLarge


@dataclass(frozen=True)
class CoherenceReport:
    mu0_u: float
    mu0_v: float
    mu1: float
    r: int
    rho: float
    rho_c: float | None = None


def mu0(f: Tensor3, r: int | None = None) -> float:
    """
    μ0 of an orthonormal factor: (n n3 / r) max_i ||F_{i::}||_F^2.

    Args:
        f: n x r' x n3 factor with orthonormal lateral slices.
        r: Use the first r lateral slices (default: all).
    """
    r = f.n2 if r is None else r
    rows = np.einsum("ijk,ijk->i", f.array[:, :r, :], f.array[:, :r, :])
    return float(f.n1 * f.n3 / r * rows.max())


def mu1(u: Tensor3, v: Tensor3) -> float:
    """μ1 = (n1 n2 n3^2 / r) ||U * V^T||_inf^2 for rank-r factors."""
    r = u.n2
    joint = t_product(u, t_transpose(v))
    return float(u.n1 * v.n1 * u.n3 ** 2 / r * np.abs(joint.array).max() ** 2)


def coherence(l: Tensor3, r: int, c_opt: int | None = None) -> CoherenceReport:
    """
    μ0 of both rank-r singular factors, μ1, and the sampling parameters ϱ, ϱ_c.

    ϱ_c uses μ0 of the full left factor, which a sampled lateral subtensor of
    an exact rank-r tensor shares.
    """
    if r < 1 or r > min(l.n1, l.n2) or tubal_rank(l) < r:
        raise RankTooLarge(f"tensor does not have tubal rank >= {r}")
    svd = t_svd(l).truncate(r)
    mu0_u = mu0(svd.U)
    mu0_v = mu0(svd.V)
    return CoherenceReport(
        mu0_u=mu0_u,
        mu0_v=mu0_v,
        mu1=mu1(svd.U, svd.V),
        r=r,
        rho=r * mu0_v / l.n3,
        rho_c=None if c_opt is None else c_opt * mu0_u / l.n3,
    )
