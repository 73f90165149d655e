"""
Core tubal operations: DFT along tubes, t-product, transpose, identity, slicing.
"""

from typing import Sequence

import numpy as np

from ..config import TOLERANCES
from ..errors import DimMismatch, IndexOutOfRange, SymmetryViolation
from . import fourier
from .tensor import SpectralTensor, Tensor3


def dft3(x: Tensor3) -> SpectralTensor:
    """Unnormalized forward DFT of every tube."""
    return SpectralTensor(np.fft.fft(x.array, axis=2))


def idft3(xhat: SpectralTensor, tol: float = TOLERANCES["symmetry"]) -> Tensor3:
    """
    Inverse DFT along tubes (with the 1/n3 factor).

    Raises:
        SymmetryViolation: If the slices are not conjugate symmetric, which
            means the spectrum cannot come from a real tensor.
    """
    defect = xhat.symmetry_defect()
    if defect > tol:
        raise SymmetryViolation(f"conjugate symmetry defect {defect:.3e} exceeds {tol:.1e}")
    out = np.fft.ifft(xhat.slices, axis=2)
    return Tensor3(out.real)


def t_product(a: Tensor3, b: Tensor3) -> Tensor3:
    """t-product A * B as per-slice matrix products in the Fourier domain."""
    if a.n2 != b.n1 or a.n3 != b.n3:
        raise DimMismatch("t_product needs a.n2 == b.n1 and equal n3", a.dims, b.dims)
    prod = np.matmul(fourier.forward(a.array), fourier.forward(b.array))
    return Tensor3(fourier.inverse(prod, a.n3))


def t_product_chain(*tensors: Tensor3) -> Tensor3:
    """Left-to-right t-product of several tensors, one FFT round trip."""
    if not tensors:
        raise ValueError("t_product_chain needs at least one tensor")
    n3 = tensors[0].n3
    acc = fourier.forward(tensors[0].array)
    for left, right in zip(tensors, tensors[1:]):
        if left.n2 != right.n1 or right.n3 != n3:
            raise DimMismatch("t_product_chain: non-conformable pair", left.dims, right.dims)
        acc = np.matmul(acc, fourier.forward(right.array))
    return Tensor3(fourier.inverse(acc, n3))


def t_transpose(x: Tensor3) -> Tensor3:
    """Transpose every frontal slice and reverse the order of slices 1..n3-1."""
    order = (-np.arange(x.n3)) % x.n3
    return Tensor3(x.array.transpose(1, 0, 2)[:, :, order])


def t_identity(n: int, n3: int) -> Tensor3:
    if n < 1 or n3 < 1:
        raise DimMismatch("t_identity dims must be positive", n, n3)
    arr = np.zeros((n, n, n3))
    arr[:, :, 0] = np.eye(n)
    return Tensor3(arr)


# =============================================================================
# Slicing
# =============================================================================

def _check_indices(indices: Sequence[int], limit: int, what: str) -> np.ndarray:
    idx = np.asarray(indices, dtype=np.int64).reshape(-1)
    if idx.size and (idx.min() < 0 or idx.max() >= limit):
        bad = idx[(idx < 0) | (idx >= limit)][0]
        raise IndexOutOfRange(f"{what} index {int(bad)} outside [0, {limit})")
    return idx


def slice_lateral(x: Tensor3, j: int) -> Tensor3:
    """Lateral slice X[:, j, :] as an n1 x 1 x n3 tensor."""
    _check_indices([j], x.n2, "lateral")
    return Tensor3(x.array[:, j:j + 1, :])


def slice_horizontal(x: Tensor3, i: int) -> Tensor3:
    """Horizontal slice X[i, :, :] as a 1 x n2 x n3 tensor."""
    _check_indices([i], x.n1, "horizontal")
    return Tensor3(x.array[i:i + 1, :, :])


def gather_lateral(x: Tensor3, indices: Sequence[int], scales=None) -> Tensor3:
    """Concatenate lateral slices in list order, optionally rescaling each."""
    idx = _check_indices(indices, x.n2, "lateral")
    if idx.size == 0:
        raise IndexOutOfRange("gather_lateral needs at least one index")
    out = x.array[:, idx, :]
    if scales is not None:
        out = out * np.asarray(scales, dtype=np.float64)[np.newaxis, :, np.newaxis]
    return Tensor3(out)


def gather_horizontal(x: Tensor3, indices: Sequence[int], scales=None) -> Tensor3:
    """Concatenate horizontal slices in list order, optionally rescaling each."""
    idx = _check_indices(indices, x.n1, "horizontal")
    if idx.size == 0:
        raise IndexOutOfRange("gather_horizontal needs at least one index")
    out = x.array[idx, :, :]
    if scales is not None:
        out = out * np.asarray(scales, dtype=np.float64)[:, np.newaxis, np.newaxis]
    return Tensor3(out)
