"""Segmented sieve of Eratosthenes."""
from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError

SEGMENT = 1 << 18
_MAX_LIMIT = np.iinfo(np.int64).max


def _small_primes(n: int) -> np.ndarray:
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for q in range(2, math.isqrt(n) + 1):
        if flags[q]:
            flags[q * q :: q] = False
    return np.flatnonzero(flags).astype(np.int64)


def sieve_primes(limit: int, start: int = 2) -> np.ndarray:
    """All primes p with start <= p <= limit, ascending, as int64.

    Memory is O(sqrt(limit) + SEGMENT) apart from the output itself.
    """
    if isinstance(limit, bool) or int(limit) != limit:
        raise DomainError(f"limit must be an integer, got {limit!r}")
    limit = int(limit)
    if limit < 2:
        raise DomainError("limit must be at least 2")
    if limit > _MAX_LIMIT:
        raise DomainError(f"limit {limit} overflows a 64-bit word")
    start = max(2, int(start))
    base = _small_primes(math.isqrt(limit))
    chunks = []
    lo = start
    while lo <= limit:
        hi = min(lo + SEGMENT - 1, limit)
        seg = np.ones(hi - lo + 1, dtype=bool)
        for q in base:
            q = int(q)
            if q * q > hi:
                break
            first = max(q * q, ((lo + q - 1) // q) * q)
            seg[first - lo :: q] = False
        if lo <= 1:
            seg[: 2 - lo] = False
        chunks.append(np.flatnonzero(seg).astype(np.int64) + lo)
        lo = hi + 1
    return np.concatenate(chunks) if chunks else np.empty(0, dtype=np.int64)
