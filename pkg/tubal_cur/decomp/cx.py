"""
t-CX and t-CUR randomized decompositions.
"""

from dataclasses import dataclass, replace

import numpy as np

from ..algebra import Tensor3, t_pinv, t_product_chain, t_project, t_svd
from ..config import TOLERANCES
from ..errors import RankTooLarge
from ..rng import derive_seed
from ..sampling import (
    ProbKind,
    ProbSpec,
    SamplingPlan,
    draw_distinct_plan,
    draw_plan,
    horizontal_leverage,
    probs_for,
    uniform_probs,
)
from .metrics import rse_frob


@dataclass(frozen=True, eq=False)
class CxResult:
    c_tensor: Tensor3
    approx: Tensor3
    plan: SamplingPlan
    rse: float


@dataclass(frozen=True, eq=False)
class CurResult:
    c_tensor: Tensor3
    u_tensor: Tensor3
    r_tensor: Tensor3
    lateral_plan: SamplingPlan
    horizontal_plan: SamplingPlan
    approx: Tensor3
    rse: float

    def recompute(self) -> Tensor3:
        return t_product_chain(self.c_tensor, self.u_tensor, self.r_tensor)


def _check_rank(a: Tensor3, r: int) -> None:
    if not (1 <= r <= min(a.n1, a.n2)):
        raise RankTooLarge(f"rank {r} outside [1, {min(a.n1, a.n2)}]")


def select(probs: np.ndarray, count: int, seed: int, distinct: bool) -> SamplingPlan:
    """Distinct (unit-scale) or Bernoulli plan over ``probs``."""
    if distinct:
        return draw_distinct_plan(probs, min(count, int(np.count_nonzero(probs > 0))), seed)
    return draw_plan(probs, count, seed)


def lateral_plan(a: Tensor3, r: int, c: int, probs: ProbSpec, seed: int) -> SamplingPlan:
    """Draw the lateral slices for t-CX / t-CUR."""
    spec = replace(probs, rank=r) if probs.kind.is_leverage else probs
    p = probs_for(spec, a, "lateral", seed=derive_seed(seed, "lateral-scores"))
    return select(p, c, derive_seed(seed, "lateral"), spec.kind is ProbKind.UNIFORM)


def horizontal_probs(c_tensor: Tensor3, probs: ProbSpec) -> np.ndarray:
    """Row probabilities from the left factor of C (its full thin width)."""
    if probs.kind is ProbKind.UNIFORM:
        return uniform_probs(c_tensor.n1)
    return horizontal_leverage(t_svd(c_tensor).U)


def t_cx(a: Tensor3, r: int, c: int, probs: ProbSpec, seed: int) -> CxResult:
    """
    Project A onto the span of c sampled lateral slices.

    Args:
        a: Source tensor.
        r: Target tubal rank (drives leverage scores).
        c: Expected (Bernoulli) or exact (uniform) number of slices.
        probs: Sampling distribution spec.
        seed: Base seed.

    Returns:
        CxResult with C, Π_C(A), the plan and the relative error.
    """
    _check_rank(a, r)
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    plan = lateral_plan(a, r, c, probs, seed)
    c_tensor = plan.gather_lateral(a)
    approx = t_project(c_tensor, a)
    return CxResult(c_tensor=c_tensor, approx=approx, plan=plan, rse=rse_frob(a, approx))


def t_cur(a: Tensor3, r: int, c: int, l: int, probs: ProbSpec, seed: int) -> CurResult:
    """
    C * U * R from sampled lateral and horizontal slices.

    Horizontal scores come from the left factor of the sampled C, and U is the
    Fourier-slice pseudoinverse of C's sampled (rescaled) rows, cut at the
    rank tolerance so round-off directions of an exact low-rank W stay
    uninverted.
    """
    _check_rank(a, r)
    if c < 1 or l < 1:
        raise ValueError(f"c and l must be >= 1, got c={c}, l={l}")
    lplan = lateral_plan(a, r, c, probs, seed)
    c_tensor = lplan.gather_lateral(a)
    hplan = select(
        horizontal_probs(c_tensor, probs), l, derive_seed(seed, "horizontal"),
        probs.kind is ProbKind.UNIFORM,
    )
    w = hplan.gather_horizontal(c_tensor)
    u_tensor = t_pinv(w, TOLERANCES["rank"])
    r_tensor = hplan.gather_horizontal(a)
    approx = t_product_chain(c_tensor, u_tensor, r_tensor)
    return CurResult(
        c_tensor=c_tensor,
        u_tensor=u_tensor,
        r_tensor=r_tensor,
        lateral_plan=lplan,
        horizontal_plan=hplan,
        approx=approx,
        rse=rse_frob(a, approx),
    )
