"""Versioned binary cache of computed angle sequences.

Layout (little endian): magic ``STLB``, u32 format version, five i64 curve
coefficients, u64 count, ``count`` pairs of (u64 prime, f64 angle), then the
32-byte SHA-256 of everything before it.  The sequence's limit is part of the
file name, so the key is (coefficients, limit, version).
"""
from __future__ import annotations

import hashlib
import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from ..errors import CacheCorruptionError
from .curves import CurveModel
from .sequence import AngleSequence
from .traces import ALWAYS_EXCLUDED, curve_source

MAGIC = b"STLB"
VERSION = 1
ENV_VAR = "STLAB_CACHE_DIR"
_HEADER = struct.Struct("<4sI5qQ")
_DIGEST = 32
_PAIR = np.dtype([("p", "<u8"), ("theta", "<f8")])


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "stlab"


def cache_path(curve: CurveModel, limit: int, cache_dir=None) -> Path:
    root = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    key = "_".join(str(c) for c in curve.coeffs)
    return root / f"angles_{key}_{int(limit)}.stlb"


def encode(curve: CurveModel, seq: AngleSequence, version: int = VERSION) -> bytes:
    pairs = np.empty(len(seq), dtype=_PAIR)
    pairs["p"] = seq.primes
    pairs["theta"] = seq.angles
    body = _HEADER.pack(MAGIC, version, *curve.coeffs, len(seq)) + pairs.tobytes()
    return body + hashlib.sha256(body).digest()


def decode(data: bytes, curve: CurveModel, limit: int) -> AngleSequence | None:
    """Parse a cache blob; None means a stale format version (a miss)."""
    if len(data) < _HEADER.size + _DIGEST:
        raise CacheCorruptionError("cache file truncated before end of header")
    magic, version, *rest = _HEADER.unpack_from(data)
    coeffs, count = tuple(rest[:5]), rest[5]
    if magic != MAGIC:
        raise CacheCorruptionError(f"bad magic {magic!r}")
    if version != VERSION:
        return None
    expected = _HEADER.size + count * _PAIR.itemsize + _DIGEST
    if len(data) != expected:
        raise CacheCorruptionError(f"cache file has {len(data)} bytes, expected {expected}")
    body, digest = data[:-_DIGEST], data[-_DIGEST:]
    if hashlib.sha256(body).digest() != digest:
        raise CacheCorruptionError("cache digest mismatch")
    if coeffs != curve.coeffs:
        raise CacheCorruptionError(f"cache holds curve {coeffs}, wanted {curve.coeffs}")
    pairs = np.frombuffer(body, dtype=_PAIR, count=count, offset=_HEADER.size)
    return AngleSequence(
        pairs["p"].astype(np.int64),
        pairs["theta"].astype(np.float64),
        curve.bad_primes | ALWAYS_EXCLUDED,
        curve_source(curve),
        int(limit),
    )


def cache_store(curve: CurveModel, seq: AngleSequence, limit: int, cache_dir=None) -> Path:
    """Atomically write ``seq`` (single writer: temp file then rename)."""
    path = cache_path(curve, limit, cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(encode(curve, seq))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cache_load(curve: CurveModel, limit: int, cache_dir=None) -> AngleSequence | None:
    """The cached sequence, None on a miss or stale version; corruption raises."""
    path = cache_path(curve, limit, cache_dir)
    try:
        data = path.read_bytes()
    except FileNotFoundError:
        return None
    return decode(data, curve, limit)
