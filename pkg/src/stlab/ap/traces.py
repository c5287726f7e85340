"""Traces of Frobenius by character sums, and their conversion to angles."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import DataIntegrityError, DomainError
from .curves import CurveModel
from .kernel import traces_block
from .sequence import AngleSequence
from .sieve import sieve_primes

# fixed block size: the partition of the prime range never depends on the worker count
BLOCK = 2048
ALWAYS_EXCLUDED = frozenset({2, 3})
_MAX_PRIME = 2**31 - 1


@dataclass(frozen=True)
class TracePoint:
    p: int
    a_p: int

    def __post_init__(self):
        if self.a_p * self.a_p > 4 * self.p:
            raise DataIntegrityError(f"Hasse bound violated at p={self.p}: a_p={self.a_p}")

    @property
    def normalized(self) -> float:
        return self.a_p / (2.0 * math.sqrt(self.p))


def resolve_workers(workers) -> int:
    if workers in (None, "auto", 0):
        return os.cpu_count() or 1
    w = int(workers)
    if w < 1:
        raise DomainError("workers must be a positive integer or 'auto'")
    return w


def _reduce(curves, primes):
    A = np.empty((len(curves), primes.size), np.int64)
    B = np.empty_like(A)
    for i, c in enumerate(curves):
        c4, c6 = c.c4c6
        A[i] = np.mod(-27 * c4, primes)
        B[i] = np.mod(-54 * c6, primes)
    return A, B


def compute_traces(curves, primes, workers=1) -> np.ndarray:
    """a_p for each curve (rows) at each prime (columns).

    Primes are cut into fixed blocks of BLOCK primes, handed to a thread pool
    (the compiled kernel releases the GIL), and reassembled in block order.
    Values at primes of bad reduction are meaningless and must be masked by
    the caller.
    """
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    if primes.size and (primes.min() <= 3 or primes.max() > _MAX_PRIME):
        raise DomainError("primes must lie in (3, 2^31)")
    curves = list(curves)
    A, B = _reduce(curves, primes)
    starts = list(range(0, primes.size, BLOCK))

    def run(s):
        sl = slice(s, s + BLOCK)
        return traces_block(primes[sl], np.ascontiguousarray(A[:, sl]), np.ascontiguousarray(B[:, sl]))

    w = resolve_workers(workers)
    if w == 1 or len(starts) <= 1:
        parts = [run(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=w) as pool:
            parts = list(pool.map(run, starts))
    if not parts:
        return np.empty((len(curves), 0), np.int64)
    return np.concatenate(parts, axis=1)


def count_points(curve: CurveModel, p: int) -> TracePoint:
    """a_p = p + 1 - #E(F_p) at a single good prime p > 3."""
    p = int(p)
    if p <= 3:
        raise DomainError(f"p = {p}: primes 2 and 3 are not supported")
    if p in curve.bad_primes:
        raise DomainError(f"p = {p} divides the discriminant of {curve.label}")
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    a = int(compute_traces([curve], np.array([p]))[0, 0])
    return TracePoint(p, a)


def _is_prime(n: int) -> bool:
    import sympy

    return bool(sympy.isprime(n))


def angles_from_traces(traces, excluded=frozenset(), source: str = "", limit=None) -> AngleSequence:
    """theta_p = arccos(clamp(a_p / (2 sqrt p), -1, 1)), order preserved."""
    pts = list(traces)
    primes = np.array([t.p for t in pts], dtype=np.int64)
    a = np.array([t.a_p for t in pts], dtype=np.int64)
    return _angles(primes, a, excluded, source, limit)


def _angles(primes, a, excluded, source, limit) -> AngleSequence:
    over = a * a > 4 * primes
    if over.any():
        i = int(np.flatnonzero(over)[0])
        raise DataIntegrityError(f"Hasse bound violated at p={int(primes[i])}: a_p={int(a[i])}")
    x = np.clip(a / (2.0 * np.sqrt(primes.astype(np.float64))), -1.0, 1.0)
    return AngleSequence(primes, np.arccos(x), frozenset(excluded), source, limit)


def curve_source(curve: CurveModel) -> str:
    return f"curve {curve.label} [{','.join(map(str, curve.coeffs))}]"


def good_primes(curve: CurveModel, limit: int) -> np.ndarray:
    if limit < 5:
        return np.empty(0, np.int64)
    ps = sieve_primes(limit, start=5)
    if curve.bad_primes:
        ps = ps[~np.isin(ps, np.array(sorted(curve.bad_primes), dtype=np.int64))]
    return ps


def compute_angle_sequences(curves, limit: int, workers=1) -> list[AngleSequence]:
    """Angle sequences for several curves up to ``limit`` sharing one kernel pass."""
    curves = list(curves)
    if limit < 5:
        raise DomainError("limit must be at least 5")
    if limit > _MAX_PRIME:
        raise DomainError("limit exceeds the kernel's 31-bit prime range")
    ps = sieve_primes(limit, start=5)
    table = compute_traces(curves, ps, workers)
    out = []
    for c, row in zip(curves, table):
        keep = ~np.isin(ps, np.array(sorted(c.bad_primes), dtype=np.int64))
        excluded = (c.bad_primes | ALWAYS_EXCLUDED)
        out.append(_angles(ps[keep], row[keep], excluded, curve_source(c), limit))
    return out


def traces_for(curve: CurveModel, limit: int, workers=1) -> list[TracePoint]:
    ps = good_primes(curve, limit)
    row = compute_traces([curve], ps, workers)[0]
    return [TracePoint(int(p), int(a)) for p, a in zip(ps, row)]
