"""
Tubal SVD and the quantities derived from it.

Every routine here factors the independent Fourier slices (0..n3//2) one by
one and mirrors the rest by conjugate symmetry. Self-conjugate slices are
real, so they get a real SVD and the rebuilt factors stay real.
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ..config import TOLERANCES
from ..errors import ConvergenceFailure, DimMismatch
from . import fourier
from .tensor import Tensor3


@dataclass(frozen=True)
class SpectralSvd:
    """Per-slice thin SVD of the half spectrum: X̂_k = U_k diag(s_k) Vh_k."""

    u: np.ndarray   # (h, n1, m)
    s: np.ndarray   # (h, m), real, nonincreasing along axis 1
    vh: np.ndarray  # (h, m, n2)
    n3: int

    @property
    def sigma_max(self) -> float:
        return float(self.s.max()) if self.s.size else 0.0


@dataclass(frozen=True)
class TSvd:
    """
    X = U * S * V^T with orthonormal U, V and f-diagonal S.

    ``spectrum`` holds the singular values of the independent Fourier slices,
    shape (n3//2 + 1, r).
    """

    U: Tensor3
    S: Tensor3
    V: Tensor3
    r: int
    spectrum: np.ndarray

    def reconstruct(self) -> Tensor3:
        from .ops import t_product_chain
        return t_product_chain(self.U, self.S, self.V.T)

    def truncate(self, r: int) -> "TSvd":
        """Keep the leading r singular tubes."""
        return TSvd(
            U=Tensor3(self.U.array[:, :r, :]),
            S=Tensor3(self.S.array[:r, :r, :]),
            V=Tensor3(self.V.array[:, :r, :]),
            r=r,
            spectrum=self.spectrum[:, :r].copy(),
        )


def _svd_slice(mat: np.ndarray, k: int, real: bool):
    if real:
        mat = mat.real
    try:
        return linalg.svd(mat, full_matrices=False, lapack_driver="gesdd")
    except (linalg.LinAlgError, ValueError):
        pass
    try:
        return linalg.svd(mat, full_matrices=False, lapack_driver="gesvd")
    except (linalg.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(k, e) from e


def stack_svd(stack: np.ndarray, n3: int) -> SpectralSvd:
    """
    Thin SVD of every slice of a half-spectrum stack.

    Raises:
        ConvergenceFailure: With the index of the slice that failed.
    """
    h = stack.shape[0]
    parts = fourier.map_slices(
        lambda k: _svd_slice(stack[k], k, fourier.is_self_conjugate(k, n3)), h
    )
    u = np.stack([p[0] for p in parts]).astype(np.complex128, copy=False)
    s = np.stack([p[1] for p in parts])
    vh = np.stack([p[2] for p in parts]).astype(np.complex128, copy=False)
    return SpectralSvd(u=u, s=s, vh=vh, n3=n3)


def spectral_svd(x: Tensor3) -> SpectralSvd:
    return stack_svd(fourier.forward(x.array), x.n3)


def _rank_threshold(s: np.ndarray, tol: float) -> float:
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    return tol * (float(s.max()) if s.size else 0.0)


def t_svd(x: Tensor3) -> TSvd:
    """Full tubal SVD with r = min(n1, n2)."""
    ssvd = spectral_svd(x)
    m = ssvd.s.shape[1]
    s_stack = np.zeros((ssvd.s.shape[0], m, m), dtype=np.complex128)
    idx = np.arange(m)
    s_stack[:, idx, idx] = ssvd.s
    v_stack = np.conj(np.swapaxes(ssvd.vh, 1, 2))
    return TSvd(
        U=Tensor3(fourier.inverse(ssvd.u, x.n3)),
        S=Tensor3(fourier.inverse(s_stack, x.n3)),
        V=Tensor3(fourier.inverse(v_stack, x.n3)),
        r=m,
        spectrum=ssvd.s,
    )


def multi_rank(x: Tensor3, tol: float = TOLERANCES["rank"]) -> np.ndarray:
    """
    Rank of every Fourier slice, length n3.

    The cutoff is tol times the largest singular value over all slices, the
    same threshold tubal_rank uses.
    """
    s = spectral_svd(x).s
    cut = _rank_threshold(s, tol)
    half = (s > cut).sum(axis=1)
    n3 = x.n3
    k = np.arange(n3)
    return half[np.where(k > n3 // 2, n3 - k, k)].astype(np.int64)


def tubal_rank(x: Tensor3, tol: float = TOLERANCES["rank"]) -> int:
    """Number of singular tubes with a Fourier entry above tol * sigma_max."""
    s = spectral_svd(x).s
    cut = _rank_threshold(s, tol)
    return int((s.max(axis=0) > cut).sum()) if s.size else 0


def tnn(x: Tensor3) -> float:
    """Tensor nuclear norm: average nuclear norm of the Fourier slices."""
    s = spectral_svd(x).s
    return float(fourier.slice_weights(x.n3) @ s.sum(axis=1)) / x.n3


def spectral_norm(x: Tensor3) -> float:
    return spectral_svd(x).sigma_max


def _pinv_stack(stack: np.ndarray, n3: int, tol: float | None) -> np.ndarray:
    n1, n2 = stack.shape[1:]
    rel = max(n1, n2) * np.finfo(np.float64).eps if tol is None else tol
    ssvd = stack_svd(stack, n3)
    out = np.zeros((stack.shape[0], n2, n1), dtype=np.complex128)
    for k in range(stack.shape[0]):
        s = ssvd.s[k]
        if s.size == 0 or s[0] == 0.0:
            continue
        keep = s > rel * s[0]
        vk = np.conj(ssvd.vh[k][keep]).T
        uk = np.conj(ssvd.u[k][:, keep]).T
        out[k] = (vk / s[keep]) @ uk
    return out


def t_pinv(x: Tensor3, tol: float | None = None) -> Tensor3:
    """
    Moore-Penrose pseudoinverse, slice by slice in the Fourier domain.

    Args:
        x: Tensor to invert.
        tol: Relative singular-value cutoff per slice; defaults to
            max(n1, n2) * machine epsilon.

    Returns:
        An n2 x n1 x n3 tensor.
    """
    if tol is not None and tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    return Tensor3(fourier.inverse(_pinv_stack(fourier.forward(x.array), x.n3, tol), x.n3))


def range_basis(stack: np.ndarray, n3: int, tol: float | None = None) -> list[np.ndarray]:
    """Orthonormal basis of each slice's column space (per half-spectrum slice)."""
    n1, n2 = stack.shape[1:]
    rel = max(n1, n2) * np.finfo(np.float64).eps if tol is None else tol
    ssvd = stack_svd(stack, n3)
    bases = []
    for k in range(stack.shape[0]):
        s = ssvd.s[k]
        keep = s > rel * s[0] if s.size and s[0] > 0 else np.zeros(s.shape, dtype=bool)
        bases.append(ssvd.u[k][:, keep])
    return bases


def t_project(c: Tensor3, x: Tensor3) -> Tensor3:
    """Projection of x onto the range of c: C * C^† * X."""
    if c.n1 != x.n1 or c.n3 != x.n3:
        raise DimMismatch("t_project needs c.n1 == x.n1 and equal n3", c.dims, x.dims)
    xs = fourier.forward(x.array)
    out = np.empty_like(xs)
    for k, q in enumerate(range_basis(fourier.forward(c.array), c.n3)):
        out[k] = q @ (np.conj(q).T @ xs[k])
    return Tensor3(fourier.inverse(out, x.n3))
