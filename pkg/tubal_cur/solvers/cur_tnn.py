"""
CUR t-NN: robust PCA / completion on sampled slices.

Only the c sampled lateral slices and the l sampled horizontal slices are
ever solved; the pieces are joined through the pseudoinverse of their
intersection. No SVD of the full tensor is taken on this path.
"""

import math
import time
import warnings
from dataclasses import replace
from enum import Enum

import numpy as np

from ..algebra import Tensor3, gather_horizontal, gather_lateral, t_pinv, t_product_chain, t_svd, tubal_rank
from ..decomp.cx import CurResult, select
from ..decomp.metrics import rse_frob
from ..errors import DimMismatch, IntersectionRankDeficient, RankTooLarge
from ..rng import derive_seed
from ..sampling import approx_leverage, horizontal_leverage, probs_norm_a, uniform_probs
from .admm import AdmmConfig, AdmmReport, StopReason, admm_complete, admm_rpca, default_lambda
from .masks import ObservationMask

# Relative pseudoinverse cutoff for the intersection tensor; solver output is
# only accurate to roughly the stopping tolerance.
INTERSECTION_PINV_TOL = 1e-6


class Problem(Enum):
    RPCA = "rpca"
    COMPLETE = "complete"


def _sub_solve(x: Tensor3, cfg: AdmmConfig, problem: Problem, mask: ObservationMask | None) -> AdmmReport:
    if problem is Problem.COMPLETE:
        return admm_complete(mask.apply(x), mask, cfg)
    if cfg.lam is None:
        cfg = replace(cfg, lam=default_lambda(*x.dims))
    return admm_rpca(x, cfg)


def _lateral_scores(x: Tensor3, r: int, problem: Problem, mask, lateral: str, seed: int) -> np.ndarray:
    if lateral == "uniform":
        return uniform_probs(x.n2)
    if problem is Problem.COMPLETE:
        return probs_norm_a(mask.apply(x))
    return approx_leverage(x, r, seed=seed, side="lateral")


def _merge_reports(parts: list[AdmmReport], l_hat: Tensor3, e_hat: Tensor3, wall_s: float) -> AdmmReport:
    stop = StopReason.CONVERGED
    for p in parts:
        if p.stop_reason is not StopReason.CONVERGED:
            stop = p.stop_reason
    return AdmmReport(
        l_hat=l_hat,
        e_hat=e_hat,
        iters=sum(p.iters for p in parts),
        residual_history=[r for p in parts for r in p.residual_history],
        stop_reason=stop,
        objective_history=[o for p in parts for o in p.objective_history],
        lam=parts[0].lam,
        wall_s=wall_s,
        parts=tuple(parts),
    )


def cur_tnn(
    x: Tensor3,
    r: int,
    c: int,
    l: int,
    cfg: AdmmConfig | None = None,
    seed: int = 0,
    problem: Problem = Problem.RPCA,
    mask: ObservationMask | None = None,
    lateral: str = "auto",
) -> tuple[CurResult, AdmmReport]:
    """
    Solve robust PCA or completion from c lateral and l horizontal slices.

    Args:
        x: Data tensor (zero-filled off the mask for completion).
        r: Target tubal rank, used for the sampling scores.
        c: Number of distinct lateral slices.
        l: Number of distinct horizontal slices.
        cfg: ADMM parameters; with lam=None each sub-solve uses the default
            lambda for its own dims.
        seed: Base seed.
        problem: Problem.RPCA or Problem.COMPLETE.
        mask: Observation mask (completion only).
        lateral: "auto" (sketched leverage for RPCA, squared slice norms of
            the observed data for completion) or "uniform".

    Returns:
        (CurResult with C̃, Ũ, R̃ and L̃ = C̃ * Ũ * R̃, merged AdmmReport whose
        ``parts`` are the lateral and horizontal sub-reports)
    """
    cfg = cfg or AdmmConfig()
    if lateral not in ("auto", "uniform"):
        raise ValueError(f"lateral must be 'auto' or 'uniform', got {lateral!r}")
    if not (1 <= r <= min(x.n1, x.n2)):
        raise RankTooLarge(f"rank {r} outside [1, {min(x.n1, x.n2)}]")
    if problem is Problem.COMPLETE:
        if mask is None:
            raise ValueError("completion needs a mask")
        if mask.dims != x.dims:
            raise DimMismatch("mask and tensor dims differ", mask.dims, x.dims)
    start = time.perf_counter()

    # Lateral slices
    scores = _lateral_scores(x, r, problem, mask, lateral, derive_seed(seed, "lateral-scores"))
    lplan = select(scores, c, derive_seed(seed, "lateral"), distinct=True)
    c_sub = gather_lateral(x, lplan.indices)
    c_mask = mask.lateral(lplan.indices) if mask is not None else None
    c_report = _sub_solve(c_sub, cfg, problem, c_mask)
    c_tilde = c_report.l_hat

    # Horizontal slices, scored from the top-r left factor of C̃
    width = min(r, c_tilde.n1, c_tilde.n2)
    row_scores = horizontal_leverage(t_svd(c_tilde).U, width)
    hplan = select(row_scores, l, derive_seed(seed, "horizontal"), distinct=True)
    r_sub = gather_horizontal(x, hplan.indices)
    r_mask = mask.horizontal(hplan.indices) if mask is not None else None
    r_report = _sub_solve(r_sub, cfg, problem, r_mask)
    r_tilde = r_report.l_hat

    # Join through the intersection
    w_tilde = gather_horizontal(c_tilde, hplan.indices)
    if tubal_rank(w_tilde, INTERSECTION_PINV_TOL) < min(w_tilde.n1, w_tilde.n2):
        warnings.warn(
            f"intersection tensor {w_tilde.dims} is tubal rank deficient",
            IntersectionRankDeficient,
            stacklevel=2,
        )
    u_tilde = t_pinv(w_tilde, INTERSECTION_PINV_TOL)
    l_tilde = t_product_chain(c_tilde, u_tilde, r_tilde)

    cur = CurResult(
        c_tensor=c_tilde,
        u_tensor=u_tilde,
        r_tensor=r_tilde,
        lateral_plan=lplan,
        horizontal_plan=hplan,
        approx=l_tilde,
        rse=rse_frob(x, l_tilde) if x.frob_norm() > 0 else 0.0,
    )
    if problem is Problem.COMPLETE:
        e_tilde = Tensor3(np.where(mask.observed, 0.0, x.array - l_tilde.array))
    else:
        e_tilde = x - l_tilde
    return cur, _merge_reports([c_report, r_report], l_tilde, e_tilde, time.perf_counter() - start)


def master_bound_terms(l_star: Tensor3, cur: CurResult) -> tuple[float, float]:
    """
    Both sides of the CUR t-NN error bound.

    Returns:
        (||L* - L̃||_F, sqrt(||C* - C̃||_F^2 + ||R* - R̃||_F^2)), where C* and
        R* are the sampled slices of the full solution L*. The bound states
        the first is at most (2 + eps) times the second.
    """
    c_star = gather_lateral(l_star, cur.lateral_plan.indices)
    r_star = gather_horizontal(l_star, cur.horizontal_plan.indices)
    lhs = (l_star - cur.approx).frob_norm()
    rhs = math.hypot((c_star - cur.c_tensor).frob_norm(), (r_star - cur.r_tensor).frob_norm())
    return lhs, rhs
