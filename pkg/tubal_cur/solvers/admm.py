"""
ADMM solvers for tubal robust PCA and tensor completion.

Robust PCA:   min tnn(L) + lam ||E||_1          s.t. L + E = X
Completion:   min tnn(L)                        s.t. P_Ω(L) = P_Ω(X)

Completion reuses the robust PCA loop with E free off the mask and pinned to
zero on it.
"""

import math
import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..algebra import Tensor3, fourier
from ..config import get_solver_config
from ..errors import DegenerateInput, DimMismatch, NumericalDivergence
from ..utils import console
from .masks import ObservationMask
from .prox import shrink, svt_stack


class StopReason(Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max_iters"
    TIME_LIMIT = "time_limit"


def default_lambda(n1: int, n2: int, n3: int) -> float:
    """1 / sqrt(max(n1, n2) n3)."""
    return 1.0 / math.sqrt(max(n1, n2) * n3)


@dataclass(frozen=True)
class AdmmConfig:
    """
    Solver parameters. ``lam=None`` picks default_lambda for the input dims.
    """

    lam: float | None = None
    rho: float = 1.1
    mu0: float = 1e-3
    mu_max: float = 1e10
    eps_abs: float = 1e-8
    max_iters: int = 1000
    time_limit_s: float | None = None
    verbose: bool = False

    def __post_init__(self):
        if self.lam is not None and not self.lam > 0:
            raise ValueError(f"lam must be > 0, got {self.lam}")
        if not self.rho > 1:
            raise ValueError(f"rho must be > 1, got {self.rho}")
        if not (0 < self.mu0 <= self.mu_max):
            raise ValueError(f"need 0 < mu0 <= mu_max, got {self.mu0}, {self.mu_max}")
        if not self.eps_abs > 0 or self.max_iters < 1:
            raise ValueError("eps_abs must be > 0 and max_iters >= 1")
        if self.time_limit_s is not None and not self.time_limit_s > 0:
            raise ValueError(f"time_limit_s must be > 0, got {self.time_limit_s}")

    @classmethod
    def from_defaults(cls, **overrides) -> "AdmmConfig":
        """Build from SOLVER_CONFIG, with keyword overrides."""
        base = get_solver_config()
        fields = {k: base[k] for k in ("rho", "mu0", "mu_max", "eps_abs", "max_iters", "time_limit_s")}
        fields.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**fields)

    def lambda_for(self, dims: tuple[int, int, int]) -> float:
        return self.lam if self.lam is not None else default_lambda(*dims)


@dataclass(frozen=True, eq=False)
class AdmmReport:
    """
    Outcome of one solve.

    ``residual_history`` holds (||ΔL||_inf, ||ΔE||_inf, ||L + E - X||_inf) per
    iteration; ``objective_history`` the objective of each iterate.
    """

    l_hat: Tensor3
    e_hat: Tensor3
    iters: int
    residual_history: list[tuple[float, float, float]]
    stop_reason: StopReason
    objective_history: list[float] = field(default_factory=list)
    lam: float = 0.0
    wall_s: float = 0.0
    parts: tuple["AdmmReport", ...] = ()

    @property
    def final_residuals(self) -> tuple[float, float, float]:
        return self.residual_history[-1] if self.residual_history else (0.0, 0.0, 0.0)

    @property
    def converged(self) -> bool:
        return self.stop_reason is StopReason.CONVERGED

    def feasibility_tail_nonincreasing(self, fraction: float = 0.5, rel_slack: float = 1e-6) -> bool:
        """Whether ||L + E - X||_inf never grows over the last ``fraction`` of iterations."""
        feas = [r[2] for r in self.residual_history]
        tail = feas[int(len(feas) * (1.0 - fraction)):]
        return all(b <= a * (1.0 + rel_slack) + 1e-15 for a, b in zip(tail, tail[1:]))


def _solve(x: np.ndarray, cfg: AdmmConfig, lam: float, observed: np.ndarray | None) -> AdmmReport:
    n3 = x.shape[2]
    L = np.zeros_like(x)
    E = np.zeros_like(x)
    Y = np.zeros_like(x)
    mu = cfg.mu0
    history: list[tuple[float, float, float]] = []
    objective: list[float] = []
    stop = StopReason.MAX_ITERS
    log_every = get_solver_config()["log_every"]
    start = time.perf_counter()

    it = 0
    for it in range(1, cfg.max_iters + 1):
        stack, nuclear = svt_stack(fourier.forward(x - E - Y / mu), n3, 1.0 / mu)
        L_new = fourier.inverse(stack, n3)
        if observed is None:
            E_new = shrink(x - L_new - Y / mu, lam / mu)
            obj = nuclear + lam * float(np.abs(E_new).sum())
        else:
            E_new = np.where(observed, 0.0, x - L_new - Y / mu)
            obj = nuclear
        R = L_new + E_new - x
        Y = Y + mu * R

        if not (np.isfinite(L_new).all() and np.isfinite(E_new).all() and np.isfinite(Y).all()):
            raise NumericalDivergence(it)

        d_l = float(np.abs(L_new - L).max())
        d_e = float(np.abs(E_new - E).max())
        feas = float(np.abs(R).max())
        history.append((d_l, d_e, feas))
        objective.append(obj)
        L, E = L_new, E_new

        if cfg.verbose and it % log_every == 0:
            console.print(
                f"[dim]admm it={it} mu={mu:.2e} dL={d_l:.2e} dE={d_e:.2e} feas={feas:.2e} obj={obj:.6g}[/dim]"
            )
        if max(d_l, d_e, feas) <= cfg.eps_abs:
            stop = StopReason.CONVERGED
            break
        mu = min(cfg.rho * mu, cfg.mu_max)
        if cfg.time_limit_s is not None and time.perf_counter() - start > cfg.time_limit_s:
            stop = StopReason.TIME_LIMIT
            break

    return AdmmReport(
        l_hat=Tensor3(L),
        e_hat=Tensor3(E),
        iters=it,
        residual_history=history,
        stop_reason=stop,
        objective_history=objective,
        lam=lam,
        wall_s=time.perf_counter() - start,
    )


def admm_rpca(x: Tensor3, cfg: AdmmConfig | None = None) -> AdmmReport:
    """
    Split X into low tubal rank L and sparse E.

    Raises:
        NumericalDivergence: If an iterate becomes non-finite.
    """
    cfg = cfg or AdmmConfig()
    return _solve(x.array, cfg, cfg.lambda_for(x.dims), None)


def admm_complete(x_observed: Tensor3, mask: ObservationMask, cfg: AdmmConfig | None = None) -> AdmmReport:
    """
    Fill in the unobserved entries of a low tubal rank tensor.

    Args:
        x_observed: Data, zero-filled off the mask.
        mask: Observed entries.
        cfg: Solver parameters (lam is unused).

    Raises:
        DegenerateInput: If nothing is observed.
    """
    cfg = cfg or AdmmConfig()
    if mask.dims != x_observed.dims:
        raise DimMismatch("mask and tensor dims differ", mask.dims, x_observed.dims)
    if mask.count == 0:
        raise DegenerateInput("mask observes no entries")
    return _solve(np.where(mask.observed, x_observed.array, 0.0), cfg, 0.0, mask.observed)
