"""
Half-spectrum helpers along the tube axis.

For a real tensor only Fourier slices 0..n3//2 are independent; the rest are
complex conjugates. Every Fourier-domain routine works on that half stack,
shaped (h, n1, n2) with h = n3//2 + 1, and mirrors implicitly on the way back.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, TypeVar

import numpy as np

from ..config import get_worker_count

T = TypeVar("T")


def half_len(n3: int) -> int:
    return n3 // 2 + 1


def is_self_conjugate(k: int, n3: int) -> bool:
    """Slice k equals its own mirror (k = 0, or k = n3/2 for even n3)."""
    return k == 0 or 2 * k == n3


def slice_weights(n3: int) -> np.ndarray:
    """Multiplicity of each half-spectrum slice in the full spectrum."""
    h = half_len(n3)
    w = np.full(h, 2.0)
    w[0] = 1.0
    if n3 % 2 == 0 and h > 1:
        w[-1] = 1.0
    return w


def forward(arr: np.ndarray) -> np.ndarray:
    """Real (n1, n2, n3) array -> complex half stack (h, n1, n2)."""
    return np.moveaxis(np.fft.rfft(arr, axis=2), 2, 0)


def inverse(stack: np.ndarray, n3: int) -> np.ndarray:
    """Complex half stack (h, n1, n2) -> real (n1, n2, n3) array."""
    return np.fft.irfft(np.moveaxis(stack, 0, 2), n=n3, axis=2)


def full_spectrum(stack: np.ndarray, n3: int) -> np.ndarray:
    """Expand a half stack to all n3 slices, shaped (n1, n2, n3)."""
    idx = np.arange(n3)
    mirrored = idx > n3 // 2
    src = np.where(mirrored, n3 - idx, idx)
    full = stack[src]
    full[mirrored] = np.conj(full[mirrored])
    return np.moveaxis(full, 0, 2)


def map_slices(fn: Callable[[int], T], count: int, workers: int | None = None) -> list[T]:
    """
    Evaluate ``fn(k)`` for k in range(count), optionally on a thread pool.

    Results come back in slice order regardless of the worker count, so the
    output never depends on the degree of parallelism.

    Args:
        fn: Per-slice function; must not draw random numbers.
        count: Number of slices.
        workers: Thread count (defaults to the configured worker count).

    Returns:
        List of per-slice results, index k holding fn(k).
    """
    workers = get_worker_count() if workers is None else workers
    if workers <= 1 or count <= 1:
        return [fn(k) for k in range(count)]
    with ThreadPoolExecutor(max_workers=min(workers, count)) as pool:
        return list(pool.map(fn, range(count)))
