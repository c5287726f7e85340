from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ValidationError


@dataclass(frozen=True, eq=False)
class AngleSequence:
    """Satake angles theta_p in [0, pi] at good primes, ascending by prime.

    ``limit`` is the cutoff through which the sequence is complete: every
    prime up to ``limit`` outside ``excluded`` has an entry.  ``zetas``
    optionally carries the central-character value at each prime as a
    rotation k/n (None means trivial character throughout).
    """

    primes: np.ndarray
    angles: np.ndarray
    excluded: frozenset = frozenset()
    source: str = ""
    limit: int | None = None
    meta: dict = field(default_factory=dict)
    zetas: tuple | None = None

    def __post_init__(self):
        primes = np.ascontiguousarray(self.primes, dtype=np.int64)
        angles = np.ascontiguousarray(self.angles, dtype=np.float64)
        object.__setattr__(self, "primes", primes)
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "excluded", frozenset(int(q) for q in self.excluded))
        if primes.shape != angles.shape or primes.ndim != 1:
            raise ValidationError("primes and angles must be 1-d arrays of equal length")
        if primes.size and np.any(np.diff(primes) <= 0):
            i = int(np.flatnonzero(np.diff(primes) <= 0)[0])
            raise ValidationError(f"primes not strictly increasing at {primes[i]}, {primes[i + 1]}")
        if angles.size and (np.isnan(angles).any() or angles.min() < 0.0 or angles.max() > math.pi):
            raise ValidationError("angles must lie in [0, pi]")
        if self.excluded and primes.size:
            bad = np.isin(primes, np.fromiter(self.excluded, dtype=np.int64))
            if bad.any():
                raise ValidationError(f"prime {int(primes[bad][0])} is listed as excluded")
        if self.zetas is not None and len(self.zetas) != primes.size:
            raise ValidationError("zetas must have one entry per prime")
        if self.limit is None:
            object.__setattr__(self, "limit", int(primes[-1]) if primes.size else 0)

    def __len__(self) -> int:
        return int(self.primes.size)

    @property
    def entries(self) -> list[tuple[int, float]]:
        return list(zip(self.primes.tolist(), self.angles.tolist()))

    def up_to(self, x: float) -> "AngleSequence":
        k = int(np.searchsorted(self.primes, x, side="right"))
        zetas = None if self.zetas is None else self.zetas[:k]
        lim = min(int(x), self.limit) if self.limit is not None else int(x)
        return AngleSequence(self.primes[:k], self.angles[:k], self.excluded, self.source, lim, self.meta, zetas)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AngleSequence):
            return NotImplemented
        return (
            np.array_equal(self.primes, other.primes)
            and self.angles.tobytes() == other.angles.tobytes()
            and self.excluded == other.excluded
            and self.zetas == other.zetas
        )

    __hash__ = None
