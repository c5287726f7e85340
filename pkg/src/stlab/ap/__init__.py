"""Angle-sequence sources: point counting, ingestion and caching."""
from __future__ import annotations

from ..errors import CacheCorruptionError
from .cache import cache_load, cache_store
from .curves import BUILTIN, CurveModel
from .ingest import ingest_eigenvalues
from .sequence import AngleSequence
from .sieve import sieve_primes
from .traces import (
    TracePoint,
    angles_from_traces,
    compute_angle_sequences,
    compute_traces,
    count_points,
)


def angle_sequences(curves, limit: int, workers=1, cache_dir=None, use_cache: bool = True):
    """Sequences for ``curves`` up to ``limit``, via the cache when possible.

    A corrupt cache entry is recomputed and overwritten.
    """
    curves = list(curves)
    found: dict[int, AngleSequence] = {}
    if use_cache:
        for i, c in enumerate(curves):
            try:
                seq = cache_load(c, limit, cache_dir)
            except CacheCorruptionError:
                seq = None
            if seq is not None:
                found[i] = seq
    missing = [i for i in range(len(curves)) if i not in found]
    if missing:
        fresh = compute_angle_sequences([curves[i] for i in missing], limit, workers)
        for i, seq in zip(missing, fresh):
            found[i] = seq
            if use_cache:
                cache_store(curves[i], seq, limit, cache_dir)
    return [found[i] for i in range(len(curves))]


__all__ = [
    "AngleSequence",
    "BUILTIN",
    "CurveModel",
    "TracePoint",
    "angle_sequences",
    "angles_from_traces",
    "cache_load",
    "cache_store",
    "compute_angle_sequences",
    "compute_traces",
    "count_points",
    "ingest_eigenvalues",
    "sieve_primes",
]
