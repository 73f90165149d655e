"""
Slow reference path: explicit block-circulant matrices.

Only tests and cross-checks use these; they cost O((n1 n3) (n2 n3)) memory.
"""

import numpy as np

from ..errors import DimMismatch
from .tensor import Tensor3


def circ_matrix(a: Tensor3) -> np.ndarray:
    """(n1 n3) x (n2 n3) block-circulant matrix with block (i, j) = A_{(i-j) mod n3}."""
    n1, n2, n3 = a.dims
    out = np.empty((n1 * n3, n2 * n3))
    for i in range(n3):
        for j in range(n3):
            out[i * n1:(i + 1) * n1, j * n2:(j + 1) * n2] = a.array[:, :, (i - j) % n3]
    return out


def unfold(x: Tensor3) -> np.ndarray:
    """Stack frontal slices vertically: (n1 n3) x n2."""
    return np.concatenate([x.array[:, :, k] for k in range(x.n3)], axis=0)


def fold(mat: np.ndarray, n1: int, n3: int) -> Tensor3:
    if mat.shape[0] != n1 * n3:
        raise DimMismatch("fold: row count is not n1 * n3", mat.shape, n1, n3)
    return Tensor3(np.stack([mat[k * n1:(k + 1) * n1] for k in range(n3)], axis=2))


def circ_oracle(a: Tensor3, b: Tensor3) -> Tensor3:
    """t-product computed as fold(circ(A) . unfold(B))."""
    if a.n2 != b.n1 or a.n3 != b.n3:
        raise DimMismatch("circ_oracle needs a.n2 == b.n1 and equal n3", a.dims, b.dims)
    return fold(circ_matrix(a) @ unfold(b), a.n1, a.n3)
