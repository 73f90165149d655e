import numpy as np

from ..algebra import Tensor3, fourier, spectral_svd
from ..errors import RankTooLarge


def truncated_tsvd(a: Tensor3, r: int) -> Tensor3:
    """Best tubal rank-r approximation: keep the top r triplets of every Fourier slice."""
    if not (1 <= r <= min(a.n1, a.n2)):
        raise RankTooLarge(f"rank {r} outside [1, {min(a.n1, a.n2)}]")
    ssvd = spectral_svd(a)
    u = ssvd.u[:, :, :r]
    vh = ssvd.vh[:, :r, :]
    stack = np.matmul(u * ssvd.s[:, np.newaxis, :r], vh)
    return Tensor3(fourier.inverse(stack, a.n3))
