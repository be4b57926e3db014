"""Segmented sieve of Eratosthenes and a compact smallest-prime-factor table.

Both work on odd numbers only.  Segments are independent given the base
primes up to sqrt(x), which is what lets the census hand them to workers.
"""

from __future__ import annotations

from math import isqrt
from typing import Iterator

import numpy as np

DEFAULT_SEGMENT = 1 << 20


def small_primes(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (plain sieve, for n up to ~1e8)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(n // 2 + 1, dtype=bool)  # index i <-> 2i+1
    is_p[0] = False
    for i in range(1, (isqrt(n) - 1) // 2 + 1):
        if is_p[i]:
            p = 2 * i + 1
            is_p[p * p // 2 :: p] = False
    odd = 2 * np.flatnonzero(is_p).astype(np.int64) + 1
    odd = odd[odd <= n]
    return np.concatenate([np.array([2], dtype=np.int64), odd])


def odd_primes_in_range(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Odd primes in [lo, hi).  ``base`` must hold every prime <= sqrt(hi - 1)."""
    start = max(lo, 3) | 1
    if start >= hi:
        return np.zeros(0, dtype=np.int64)
    mask = np.ones((hi - start + 1) // 2, dtype=bool)
    for p in base.tolist():
        if p == 2:
            continue
        pp = p * p
        if pp >= hi:
            break
        first = max(pp, -(-start // p) * p)
        if first % 2 == 0:
            first += p
        if first < hi:
            mask[(first - start) // 2 :: p] = False
    return start + 2 * np.flatnonzero(mask).astype(np.int64)


def segment_bounds(x: int, segment_size: int = DEFAULT_SEGMENT) -> list[tuple[int, int]]:
    """Half-open ranges [lo, hi) tiling [2, x]."""
    return [(lo, min(lo + segment_size, x + 1)) for lo in range(2, x + 1, segment_size)]


def prime_segments(x: int, segment_size: int = DEFAULT_SEGMENT) -> Iterator[np.ndarray]:
    """Primes <= x, one int64 array per segment, in increasing order."""
    if x < 2:
        return
    base = small_primes(isqrt(x))
    for i, (lo, hi) in enumerate(segment_bounds(x, segment_size)):
        arr = odd_primes_in_range(lo, hi, base)
        if i == 0:
            arr = np.concatenate([np.array([2], dtype=np.int64), arr])
        yield arr


def sieve_primes(x: int, segment_size: int = DEFAULT_SEGMENT) -> Iterator[int]:
    """Stream the primes <= x in increasing order."""
    for seg in prime_segments(x, segment_size):
        yield from seg.tolist()


class SpfTable:
    """Smallest prime factor of every n <= limit, stored for odd n only.

    An entry is 0 for odd primes; composites below 2**32 always have a
    smallest factor below 2**16, so two bytes per odd number suffice.
    Supports ``spf[n]`` / ``len(spf)`` so it can be handed to
    :func:`artin_ap.arith.factorize`.
    """

    def __init__(self, limit: int):
        if limit >= 1 << 32:
            raise ValueError("SpfTable is limited to n < 2**32")
        self.limit = limit
        table = np.zeros(limit // 2 + 1, dtype=np.uint16)
        for p in small_primes(isqrt(limit)).tolist():
            if p == 2:
                continue
            view = table[p * p // 2 :: p]
            view[view == 0] = p
        self._odd = table

    def __len__(self) -> int:
        return self.limit + 1

    def __getitem__(self, n: int) -> int:
        if n % 2 == 0:
            return 2
        q = int(self._odd[n >> 1])
        return q if q else n

    def smallest_odd(self, n: np.ndarray) -> np.ndarray:
        """Vectorized lookup for an array of odd n > 1."""
        q = self._odd[n >> 1].astype(np.int64)
        return np.where(q == 0, n, q)
