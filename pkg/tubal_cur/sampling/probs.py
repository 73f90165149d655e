"""
Slice sampling probabilities.

All constructors return the canonical (beta = 1) distribution; beta only
enters the sample-size formulas in ``sizes``.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..algebra import Tensor3, fourier, t_svd, t_transpose
from ..config import TOLERANCES
from ..errors import DegenerateInput, DimMismatch, NotOrthonormal, RankTooLarge, SketchRankDeficient
from ..rng import make_rng


class ProbKind(Enum):
    UNIFORM = "uniform"
    NORM_PRODUCT = "norm-product"
    NORM_A = "norm-a"
    LATERAL_LEVERAGE = "lateral-leverage"
    HORIZONTAL_LEVERAGE = "horizontal-leverage"
    APPROX_LEVERAGE = "approx-leverage"

    @property
    def is_leverage(self) -> bool:
        return self in (ProbKind.LATERAL_LEVERAGE, ProbKind.HORIZONTAL_LEVERAGE, ProbKind.APPROX_LEVERAGE)


@dataclass(frozen=True)
class ProbSpec:
    """How to build a sampling distribution."""

    kind: ProbKind
    beta: float = 1.0
    rank: int | None = None
    sketch_cols: int | None = None

    def __post_init__(self):
        if not (0.0 < self.beta <= 1.0):
            raise ValueError(f"beta must lie in (0, 1], got {self.beta}")
        if self.kind.is_leverage != (self.rank is not None):
            raise ValueError(f"rank must be given iff kind is a leverage kind ({self.kind.value})")
        if self.rank is not None and self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")

    @classmethod
    def uniform(cls) -> "ProbSpec":
        return cls(ProbKind.UNIFORM)

    @classmethod
    def leverage(cls, rank: int, approx: bool = False, sketch_cols: int | None = None) -> "ProbSpec":
        kind = ProbKind.APPROX_LEVERAGE if approx else ProbKind.LATERAL_LEVERAGE
        return cls(kind, rank=rank, sketch_cols=sketch_cols)


def check_probs(probs) -> np.ndarray:
    """Validate a probability vector and return it as float64."""
    p = np.asarray(probs, dtype=np.float64).reshape(-1)
    if p.size == 0 or not np.isfinite(p).all() or (p < 0).any():
        raise ValueError("probabilities must be finite, nonnegative and nonempty")
    tol = max(1e-12, 4 * p.size * np.finfo(np.float64).eps)
    if abs(p.sum() - 1.0) > tol:
        raise ValueError(f"probabilities sum to {p.sum():.15g}, not 1")
    return p


def _normalize(weights: np.ndarray, what: str) -> np.ndarray:
    total = weights.sum()
    if not total > 0.0:
        raise DegenerateInput(f"{what}: all weights are zero")
    return weights / total


def uniform_probs(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


def lateral_norms(a: Tensor3) -> np.ndarray:
    """Frobenius norm of every lateral slice A[:, i, :]."""
    return np.sqrt(np.einsum("ijk,ijk->j", a.array, a.array))


def horizontal_norms(b: Tensor3) -> np.ndarray:
    """Frobenius norm of every horizontal slice B[i, :, :]."""
    return np.sqrt(np.einsum("ijk,ijk->i", b.array, b.array))


def probs_norm_product(a: Tensor3, b: Tensor3, beta: float = 1.0) -> np.ndarray:
    """p_i proportional to ||A_{:i:}||_F * ||B_{i::}||_F."""
    if a.n2 != b.n1:
        raise DimMismatch("probs_norm_product needs a.n2 == b.n1", a.dims, b.dims)
    return _normalize(lateral_norms(a) * horizontal_norms(b), "probs_norm_product")


def probs_norm_a(a: Tensor3, beta: float = 1.0) -> np.ndarray:
    """p_i proportional to ||A_{:i:}||_F^2."""
    return _normalize(lateral_norms(a) ** 2, "probs_norm_a")


def _check_orthonormal(f: Tensor3, tol: float) -> None:
    stack = fourier.forward(f.array)
    gram = np.matmul(np.conj(np.swapaxes(stack, 1, 2)), stack)
    dev = float(np.abs(gram - np.eye(f.n2)).max())
    if dev > tol:
        raise NotOrthonormal(f"factor deviates from orthonormal by {dev:.3e} (tol {tol:.1e})")


def _row_leverage(f: Tensor3, width: int | None, tol: float) -> np.ndarray:
    if width is not None:
        if not (1 <= width <= f.n2):
            raise RankTooLarge(f"width {width} outside [1, {f.n2}]")
        f = Tensor3(f.array[:, :width, :])
    _check_orthonormal(f, tol)
    # Parseval: sum_k ||F̂_{i,:,k}||^2 = n3 ||F_{i::}||_F^2
    rows = np.einsum("ijk,ijk->i", f.array, f.array)
    return rows / f.n2


def lateral_leverage(v: Tensor3, r: int | None = None, beta: float = 1.0,
                     tol: float = TOLERANCES["orthonormal"]) -> np.ndarray:
    """
    Leverage probabilities over lateral slices from a right factor V.

    Args:
        v: n2 x r' x n3 factor with orthonormal lateral slices.
        r: Use only the first r lateral slices of v (default: all).
        beta: Accepted for symmetry with the sample-size formulas.
        tol: Orthonormality tolerance.

    Returns:
        Length-n2 vector p_i = ||V̂_{i::}||_F^2 / (r n3).
    """
    return _row_leverage(v, r, tol)


def horizontal_leverage(u: Tensor3, c: int | None = None, beta: float = 1.0,
                        tol: float = TOLERANCES["orthonormal"]) -> np.ndarray:
    """Leverage probabilities over horizontal slices from a left factor U (width c)."""
    return _row_leverage(u, c, tol)


def approx_leverage(x: Tensor3, r: int, sketch_cols: int | None = None, seed: int = 0,
                    side: str = "lateral") -> np.ndarray:
    """
    Sketched leverage scores of the rank-r singular subspace, per Fourier slice.

    ``side="lateral"`` estimates the scores over lateral slices (the right
    factor V); ``side="horizontal"`` over horizontal slices (the left factor U).

    Args:
        x: Source tensor.
        r: Target tubal rank.
        sketch_cols: Gaussian sketch width (default 4r, capped at the row count).
        seed: Seed for the sketch matrices.
        side: "lateral" or "horizontal".

    Returns:
        Probability vector over the chosen slice family.

    Raises:
        SketchRankDeficient: If every sketched slice has rank below r.
    """
    if side not in ("lateral", "horizontal"):
        raise ValueError(f"side must be 'lateral' or 'horizontal', got {side!r}")
    if not (1 <= r <= min(x.n1, x.n2)):
        raise RankTooLarge(f"rank {r} outside [1, {min(x.n1, x.n2)}]")
    sketch_cols = 4 * r if sketch_cols is None else sketch_cols
    if sketch_cols < r:
        raise ValueError(f"sketch_cols ({sketch_cols}) must be >= r ({r})")

    # rows of m_k index the slices being scored
    src = t_transpose(x) if side == "lateral" else x
    stack = fourier.forward(src.array)
    rows, cols = stack.shape[1:]
    s = min(sketch_cols, rows)
    rng = make_rng(seed)
    omegas = [rng.standard_normal((cols, s)) for _ in range(stack.shape[0])]

    def one_slice(k):
        y = stack[k] @ omegas[k]
        q, _ = np.linalg.qr(y)
        b = np.conj(q).T @ stack[k]
        w, sv, _ = np.linalg.svd(b, full_matrices=False)
        basis = q @ w[:, :r]
        return np.sum(np.abs(basis) ** 2, axis=1), sv

    parts = fourier.map_slices(one_slice, stack.shape[0])
    sv_max = max(float(p[1][0]) if p[1].size else 0.0 for p in parts)
    ranks = [int((p[1] > TOLERANCES["rank"] * sv_max).sum()) if sv_max > 0 else 0 for p in parts]
    if max(ranks) < r:
        raise SketchRankDeficient(f"sketched basis rank {max(ranks)} < r = {r}")

    weights = fourier.slice_weights(x.n3)
    scores = sum(w * p[0] for w, p in zip(weights, parts))
    return scores / (r * x.n3)


def probs_for(spec: ProbSpec, x: Tensor3, side: str = "lateral", seed: int = 0) -> np.ndarray:
    """
    Build the distribution ``spec`` describes for a single source tensor.

    NORM_PRODUCT needs two operands and is not accepted here.
    """
    n = x.n2 if side == "lateral" else x.n1
    if spec.kind is ProbKind.UNIFORM:
        return uniform_probs(n)
    if spec.kind is ProbKind.NORM_A:
        return probs_norm_a(x if side == "lateral" else t_transpose(x), spec.beta)
    if spec.kind is ProbKind.APPROX_LEVERAGE:
        return approx_leverage(x, spec.rank, spec.sketch_cols, seed, side=side)
    if spec.kind in (ProbKind.LATERAL_LEVERAGE, ProbKind.HORIZONTAL_LEVERAGE):
        if not (1 <= spec.rank <= min(x.n1, x.n2)):
            raise RankTooLarge(f"rank {spec.rank} outside [1, {min(x.n1, x.n2)}]")
        svd = t_svd(x)
        if side == "lateral":
            return lateral_leverage(svd.V, spec.rank, spec.beta)
        return horizontal_leverage(svd.U, spec.rank, spec.beta)
    raise ValueError(f"{spec.kind.value} probabilities need two operands")
