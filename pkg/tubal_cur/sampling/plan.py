"""
Slice selection plans.

A plan stands in for the selection tensor S and the rescaling tensor D: it
records which slices were picked and the weight each one carries.
"""

from dataclasses import dataclass

import numpy as np

from ..algebra import Tensor3, gather_horizontal, gather_lateral
from ..errors import EmptyPlan, InsufficientSupport
from ..rng import make_rng
from .probs import check_probs

MAX_REDRAWS = 8


@dataclass(frozen=True, eq=False)
class SamplingPlan:
    source_len: int
    indices: np.ndarray
    scales: np.ndarray
    probs: np.ndarray
    seed: int

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64)
        scales = np.asarray(self.scales, dtype=np.float64)
        if idx.size != scales.size:
            raise ValueError("indices and scales differ in length")
        if idx.size and (idx[0] < 0 or idx[-1] >= self.source_len or (np.diff(idx) <= 0).any()):
            raise ValueError("plan indices must be strictly increasing within [0, source_len)")
        if (scales < 1.0).any():
            raise ValueError("plan scales must be >= 1")
        for arr in (idx, scales):
            arr.flags.writeable = False
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "scales", scales)

    @property
    def count(self) -> int:
        return int(self.indices.size)

    def gather_lateral(self, x: Tensor3, scaled: bool = True) -> Tensor3:
        return gather_lateral(x, self.indices, self.scales if scaled else None)

    def gather_horizontal(self, x: Tensor3, scaled: bool = True) -> Tensor3:
        return gather_horizontal(x, self.indices, self.scales if scaled else None)

    def to_dict(self) -> dict:
        return {
            "source_len": self.source_len,
            "indices": self.indices.tolist(),
            "scales": self.scales.tolist(),
            "seed": self.seed,
        }


def inclusion_probs(probs, c: float) -> np.ndarray:
    """Per-index selection probability min(1, c p_i)."""
    return np.minimum(1.0, c * check_probs(probs))


def draw_plan(probs, c: float, seed: int, max_redraws: int = MAX_REDRAWS) -> SamplingPlan:
    """
    Independent Bernoulli(min(1, c p_i)) selection with 1/min(1, sqrt(c p_i)) scales.

    One uniform draw is consumed per index in ascending order. If nothing is
    selected the draw is repeated with seed + 1, seed + 2, ... up to
    ``max_redraws`` times.

    Raises:
        EmptyPlan: If every attempt selected nothing.
    """
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    p = check_probs(probs)
    q = np.minimum(1.0, c * p)
    for attempt in range(max_redraws + 1):
        used = seed + attempt
        u = make_rng(used).random(p.size)
        picked = np.flatnonzero(u < q)
        if picked.size:
            return SamplingPlan(
                source_len=p.size,
                indices=picked,
                scales=1.0 / np.sqrt(q[picked]),
                probs=p,
                seed=used,
            )
    raise EmptyPlan(f"no slice selected in {max_redraws + 1} draws (c={c}, seed={seed})")


def draw_distinct_plan(probs, c: int, seed: int) -> SamplingPlan:
    """
    Exactly c distinct indices drawn without replacement, unit scales.

    With uniform probabilities this is uniform sampling without replacement.

    Raises:
        InsufficientSupport: If fewer than c indices have positive probability.
    """
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    p = check_probs(probs)
    support = int(np.count_nonzero(p > 0))
    if support < c:
        raise InsufficientSupport(f"requested {c} distinct slices but only {support} have p > 0")
    if c == support:
        picked = np.flatnonzero(p > 0)
    else:
        picked = np.sort(make_rng(seed).choice(p.size, size=c, replace=False, p=p))
    return SamplingPlan(source_len=p.size, indices=picked, scales=np.ones(picked.size), probs=p, seed=seed)


def full_plan(n: int) -> SamplingPlan:
    """Every index with unit scale."""
    return SamplingPlan(source_len=n, indices=np.arange(n), scales=np.ones(n), probs=np.full(n, 1.0 / n), seed=0)
