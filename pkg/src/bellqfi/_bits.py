"""Bit-twiddling helpers for the 2^N computational basis (bit k = qubit k)."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def popcount(x: int) -> int:
    return int(x).bit_count()


@lru_cache(maxsize=32)
def popcount_table(n_bits: int) -> np.ndarray:
    """Popcounts of all integers in [0, 2**n_bits). Treat the result as read-only."""
    if n_bits < 0:
        raise ValueError("n_bits must be non-negative")
    idx = np.arange(1 << n_bits, dtype=np.int64)
    table = np.zeros(1 << n_bits, dtype=np.int64)
    for j in range(n_bits):
        table += (idx >> j) & 1
    return table


def mask_of(sites) -> int:
    m = 0
    for s in sites:
        m |= 1 << int(s)
    return m


def submasks(mask: int) -> np.ndarray:
    """All 2**popcount(mask) submasks of `mask`, including 0 and mask itself."""
    subs = np.zeros(1, dtype=np.int64)
    m = int(mask)
    while m:
        low = m & -m
        subs = np.concatenate([subs, subs | low])
        m ^= low
    return subs
