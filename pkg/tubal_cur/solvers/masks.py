"""
Observation masks and sparse corruption.
"""

from dataclasses import dataclass

import numpy as np

from ..algebra import Tensor3
from ..errors import DimMismatch
from ..rng import make_rng


@dataclass(frozen=True, eq=False)
class ObservationMask:
    """Boolean tensor marking observed (or corrupted) entries."""

    observed: np.ndarray

    def __post_init__(self):
        arr = np.array(self.observed, dtype=bool, copy=True)
        if arr.ndim != 3:
            raise DimMismatch("mask needs a 3-way array", arr.shape)
        arr.flags.writeable = False
        object.__setattr__(self, "observed", arr)

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.observed.shape

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.observed))

    @property
    def fraction_observed(self) -> float:
        return self.count / self.observed.size

    def apply(self, x: Tensor3) -> Tensor3:
        """Zero every entry outside the mask."""
        if x.dims != self.dims:
            raise DimMismatch("mask and tensor dims differ", self.dims, x.dims)
        return Tensor3(np.where(self.observed, x.array, 0.0))

    def lateral(self, indices) -> "ObservationMask":
        return ObservationMask(self.observed[:, np.asarray(indices), :])

    def horizontal(self, indices) -> "ObservationMask":
        return ObservationMask(self.observed[np.asarray(indices), :, :])

    @classmethod
    def full(cls, dims) -> "ObservationMask":
        return cls(np.ones(dims, dtype=bool))


def make_mask(dims, rate: float, seed: int) -> ObservationMask:
    """Independent Bernoulli(rate) observation per entry."""
    if not (0.0 < rate <= 1.0):
        raise ValueError(f"rate must lie in (0, 1], got {rate}")
    return ObservationMask(make_rng(seed).random(tuple(dims)) < rate)


def corrupt_salt_pepper(x: Tensor3, fraction: float, magnitude: float, seed: int) -> tuple[Tensor3, ObservationMask]:
    """
    Overwrite a random subset of entries with +magnitude or -magnitude.

    Each entry is hit independently with probability ``fraction``; the sign
    is a fair coin.

    Returns:
        (corrupted tensor, mask of corrupted entries)
    """
    if not (0.0 <= fraction <= 1.0):
        raise ValueError(f"fraction must lie in [0, 1], got {fraction}")
    rng = make_rng(seed)
    hit = rng.random(x.dims) < fraction
    signs = np.where(rng.random(x.dims) < 0.5, magnitude, -magnitude)
    return Tensor3(np.where(hit, signs, x.array)), ObservationMask(hit)
