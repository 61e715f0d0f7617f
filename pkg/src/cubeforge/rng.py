"""Counter-based SplitMix64 stream.

The value at position ``i`` for seed ``s`` is ``mix(s + (i + 1) * GAMMA)``,
i.e. the ``i``-th output of Vigna's SplitMix64 seeded with ``s``.  Every
position can be computed independently, so colorings of ``[n]`` are
prefixes of colorings of ``[n + 1]`` and trials can be split freely.
"""
from __future__ import annotations

import numpy as np

ALGORITHM = "splitmix64"
GAMMA = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1


def mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def splitmix64(seed: int, index: int) -> int:
    return mix64(seed + (index + 1) * GAMMA)


def stream(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """``count`` consecutive SplitMix64 outputs as uint64, starting at ``offset``."""
    idx = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & _MASK) + idx * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
    return z


def uniform_below(seed: int, count: int, r: int, offset: int = 0) -> np.ndarray:
    """Values in ``[0, r)`` from the top 32 bits by multiply-shift.

    The bias is at most ``r / 2**32``; for ``r`` a power of two it is zero.
    """
    hi = stream(seed, count, offset) >> np.uint64(32)
    return ((hi * np.uint64(r)) >> np.uint64(32)).astype(np.int64)


def derive_seed(seed: int, index: int) -> int:
    """Independent child seed for trial ``index``."""
    return splitmix64(seed ^ 0x5DEECE66D, index)
