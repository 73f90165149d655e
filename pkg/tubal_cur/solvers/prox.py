"""
Proximal operators for the tensor nuclear norm and the l1 norm.
"""

import numpy as np

from ..algebra import Tensor3, fourier


def svt_stack(stack: np.ndarray, n3: int, tau: float) -> tuple[np.ndarray, float]:
    """
    Shrink the singular values of every half-spectrum slice by tau.

    Args:
        stack: (h, n1, n2) complex half spectrum.
        n3: Tube length.
        tau: Threshold (>= 0).

    Returns:
        (shrunk stack, tensor nuclear norm of the result)
    """
    u, s, vh = np.linalg.svd(stack, full_matrices=False)
    s = np.maximum(s - tau, 0.0)
    out = np.matmul(u * s[:, np.newaxis, :], vh)
    nuclear = float(fourier.slice_weights(n3) @ s.sum(axis=1)) / n3
    return out, nuclear


def t_svt(m: Tensor3, tau: float) -> Tensor3:
    """Tensor singular value thresholding: the proximal map of tau * tnn."""
    if tau < 0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    if tau == 0:
        return m
    out, _ = svt_stack(fourier.forward(m.array), m.n3, tau)
    return Tensor3(fourier.inverse(out, m.n3))


def shrink(arr: np.ndarray, tau: float) -> np.ndarray:
    return np.sign(arr) * np.maximum(np.abs(arr) - tau, 0.0)


def soft_threshold(m: Tensor3, tau: float) -> Tensor3:
    """Entrywise sign(x) * max(|x| - tau, 0)."""
    if tau < 0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    return Tensor3(shrink(m.array, tau))
