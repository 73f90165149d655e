"""
Synthetic tensor generators.
"""

import numpy as np

from .algebra import Tensor3, t_product
from .errors import RankTooLarge
from .rng import make_rng


def gen_sparse_replicated(n1: int, n2: int, n3: int, density: float, seed: int) -> Tensor3:
    """
    Sparse Gaussian tensor whose frontal slices share one sparsity pattern.

    Slice 0 gets standard-normal values on a seeded random support of about
    density * n1 * n2 entries; slices 1..n3-1 reuse that support with fresh
    values.
    """
    if not (0.0 < density <= 1.0):
        raise ValueError(f"density must lie in (0, 1], got {density}")
    rng = make_rng(seed)
    support = rng.random((n1, n2)) < density
    count = int(support.sum())
    arr = np.zeros((n1, n2, n3))
    for k in range(n3):
        arr[:, :, k][support] = rng.standard_normal(count)
    return Tensor3(arr)


def gen_lowrank(n1: int, n2: int, n3: int, r: int, noise_frob_ratio: float, seed: int,
                unit_entries: bool = False) -> tuple[Tensor3, Tensor3]:
    """
    Tubal rank-r tensor plus scaled Gaussian noise.

    Args:
        n1, n2, n3: Dims.
        r: Tubal rank of the clean part.
        noise_frob_ratio: ||N||_F / ||clean||_F.
        seed: Seed.
        unit_entries: Scale the clean part by 1/sqrt(r n3) so entries are O(1).

    Returns:
        (noisy, clean)
    """
    if not (1 <= r <= min(n1, n2)):
        raise RankTooLarge(f"rank {r} outside [1, {min(n1, n2)}]")
    if noise_frob_ratio < 0:
        raise ValueError(f"noise_frob_ratio must be >= 0, got {noise_frob_ratio}")
    rng = make_rng(seed)
    left = Tensor3(rng.standard_normal((n1, r, n3)))
    right = Tensor3(rng.standard_normal((r, n2, n3)))
    clean = t_product(left, right)
    if unit_entries:
        clean = clean * (1.0 / np.sqrt(r * n3))
    if noise_frob_ratio == 0:
        return clean, clean
    noise = rng.standard_normal((n1, n2, n3))
    noise *= noise_frob_ratio * clean.frob_norm() / np.linalg.norm(noise.ravel())
    return Tensor3(clean.array + noise), clean


def gen_image_stack(height: int, width: int, frames: int, rank: int, seed: int) -> Tensor3:
    """
    Smooth grayscale frames in [0, 1] built from ``rank`` separable patterns.

    Frame k is sum_q c_{qk} u_q v_q^T with slowly drifting weights, so the
    stack (height x width x frames) has tubal rank about rank + 1.
    """
    rng = make_rng(seed)
    ys = np.linspace(0.0, 1.0, height)
    xs = np.linspace(0.0, 1.0, width)
    arr = np.zeros((height, width, frames))
    for _ in range(rank):
        fy, fx = rng.uniform(0.5, 3.0, size=2)
        py, px = rng.uniform(0.0, 2 * np.pi, size=2)
        u = np.sin(2 * np.pi * fy * ys + py)
        v = np.cos(2 * np.pi * fx * xs + px)
        weights = np.cumsum(rng.normal(0.0, 0.3, size=frames)) + rng.normal()
        arr += np.outer(u, v)[:, :, np.newaxis] * weights[np.newaxis, np.newaxis, :]
    lo, hi = arr.min(), arr.max()
    if hi > lo:
        arr = (arr - lo) / (hi - lo)
    return Tensor3(arr)
