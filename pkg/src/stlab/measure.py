"""Sato-Tate measure on [-1, 1] and its angular form on [0, pi]."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class Interval:
    """Closed angular interval [lo, hi] inside [0, pi]."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (0.0 <= lo <= hi <= math.pi):
            raise DomainError(f"need 0 <= lo <= hi <= pi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, theta) -> bool:
        return self.lo <= theta <= self.hi

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """Parse ``"lo:hi"``; the literal ``pi`` is accepted in either slot."""
        try:
            lo, hi = text.split(":")
            return cls(_num(lo), _num(hi))
        except ValueError as exc:
            raise DomainError(f"bad interval {text!r}: {exc}") from None

    def __str__(self):
        return f"{self.lo!r}:{self.hi!r}"


FULL = Interval(0.0, math.pi)


def _num(s: str) -> float:
    """A float, or a multiple of pi such as ``pi``, ``pi/2``, ``3pi/4``, ``0.5*pi``."""
    s = s.strip().lower()
    if "pi" not in s:
        return float(s)
    before, after = s.split("pi", 1)
    coef = float(before.rstrip("*") or 1.0)
    div = float(after.lstrip("/")) if after else 1.0
    if after and not after.startswith("/"):
        raise ValueError(f"cannot read {s!r}")
    return coef * math.pi / div


def _cdf(t: float) -> float:
    return (t * math.sqrt(max(0.0, 1.0 - t * t)) + math.asin(t)) / math.pi


def mu_st(lo: float, hi: float) -> float:
    """Semicircle mass of [lo, hi] in [-1, 1]."""
    if not (-1.0 <= lo <= hi <= 1.0):
        raise DomainError(f"need -1 <= lo <= hi <= 1, got [{lo}, {hi}]")
    return _cdf(hi) - _cdf(lo)


def mu_st_angle(lo: float | Interval, hi: float | None = None) -> float:
    """Mass of [lo, hi] in [0, pi] under (2/pi) sin^2(theta) d theta."""
    if isinstance(lo, Interval):
        lo, hi = lo.lo, lo.hi
    if not (0.0 <= lo <= hi <= math.pi):
        raise DomainError(f"need 0 <= lo <= hi <= pi, got [{lo}, {hi}]")
    return (hi - lo) / math.pi - (math.sin(2 * hi) - math.sin(2 * lo)) / (2 * math.pi)
