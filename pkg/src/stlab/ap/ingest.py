"""Reading externally computed normalized traces."""
from __future__ import annotations

import csv
import hashlib
import json
import math
from pathlib import Path

import numpy as np
import sympy

from ..errors import ParseError, ValidationError
from .sequence import AngleSequence

HEADER = ("prime", "normalized_trace")
TOLERANCE = 1e-9
META_FIELDS = {"label": str, "field_degree": int, "conductor_norm": int, "y_param": int}


def sidecar_path(path: Path) -> Path:
    return path.with_name(path.stem + ".meta.json")


def read_meta(path: Path) -> dict:
    side = sidecar_path(path)
    if not side.exists():
        return {}
    try:
        meta = json.loads(side.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{side.name}: invalid JSON ({exc.msg})", exc.lineno) from None
    if not isinstance(meta, dict):
        raise ValidationError(f"{side.name}: expected a JSON object")
    for key, typ in META_FIELDS.items():
        if key in meta and not isinstance(meta[key], typ):
            raise ValidationError(f"{side.name}: field {key!r} must be {typ.__name__}")
    if meta.get("y_param", 0) not in (0, 2):
        raise ValidationError(f"{side.name}: y_param must be 0 or 2")
    return meta


def ingest_eigenvalues(path) -> AngleSequence:
    """Parse a ``prime,normalized_trace`` CSV into an AngleSequence."""
    path = Path(path)
    raw = path.read_bytes()
    text = raw.decode("utf-8")
    primes, values = [], []
    header_seen = False
    for lineno, row in enumerate(csv.reader(text.splitlines()), start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if row[0].lstrip().startswith("#"):
            continue
        cells = [c.strip() for c in row]
        if not header_seen:
            if tuple(cells) != HEADER:
                raise ParseError(f"expected header {','.join(HEADER)!r}, got {','.join(cells)!r}", lineno)
            header_seen = True
            continue
        if len(cells) != 2:
            raise ParseError(f"expected 2 fields, got {len(cells)}", lineno)
        try:
            p = int(cells[0])
        except ValueError:
            raise ParseError(f"prime {cells[0]!r} is not an integer", lineno) from None
        try:
            v = float(cells[1])
        except ValueError:
            raise ParseError(f"value {cells[1]!r} is not a number", lineno) from None
        if not sympy.isprime(p):
            raise ParseError(f"{p} is not prime", lineno)
        if not math.isfinite(v) or abs(v) > 1.0 + TOLERANCE:
            raise ValidationError(f"line {lineno}: normalized trace {v} outside [-1, 1]")
        if primes and p <= primes[-1]:
            raise ValidationError(f"line {lineno}: prime {p} does not exceed previous prime {primes[-1]}")
        primes.append(p)
        values.append(min(1.0, max(-1.0, v)))
    if not header_seen:
        raise ParseError("missing header line", 1)
    meta = read_meta(path)
    digest = hashlib.sha256(raw).hexdigest()
    label = meta.get("label", path.name)
    return AngleSequence(
        np.array(primes, dtype=np.int64),
        np.arccos(np.array(values, dtype=np.float64)),
        frozenset(),
        f"file {label} sha256:{digest}",
        None,
        meta,
    )
