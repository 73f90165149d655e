"""
Seeded random streams.

PCG64 is the single generator algorithm used everywhere. Sub-streams are
derived from (seed, key...) through SeedSequence so that separate draws
inside one call never share state.
"""

import zlib

import numpy as np


def _key_to_int(key) -> int:
    if isinstance(key, str):
        return zlib.crc32(key.encode("utf-8"))
    return int(key)


def derive_seed(seed: int, *keys) -> int:
    """
    Derive a child seed from a base seed and a sequence of keys.

    Args:
        seed: Base seed (nonnegative).
        keys: Extra ints or strings naming the sub-stream.

    Returns:
        A 63-bit nonnegative integer seed.
    """
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF] + [_key_to_int(k) for k in keys]
    ss = np.random.SeedSequence(entropy)
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def make_rng(seed: int, *keys) -> np.random.Generator:
    """Return a PCG64 generator for ``seed`` (and optional sub-stream keys)."""
    if keys:
        seed = derive_seed(seed, *keys)
    return np.random.Generator(np.random.PCG64(int(seed) & 0xFFFFFFFFFFFFFFFF))
