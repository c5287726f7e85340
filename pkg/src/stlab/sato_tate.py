"""Empirical Sato-Tate statistics and the effective rate formula."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .ap.sequence import AngleSequence
from .errors import DomainError, EmptySampleError, SandwichViolation, TruncationError
from .majorant import TrigPoly2D
from .measure import FULL, Interval, mu_st, mu_st_angle

__all__ = [
    "BoundProfile",
    "DiscrepancyReport",
    "EffectiveBound",
    "SandwichResult",
    "common_angles",
    "discrepancy",
    "effective_bound",
    "joint_discrepancy",
    "mu_st",
    "mu_st_angle",
    "sandwich_check",
]


@dataclass(frozen=True)
class BoundProfile:
    """Constants feeding the effective bounds.

    The theory only asserts these exist; every value here is a user choice
    (default 1) and is echoed next to any number computed from it.
    """

    c_main: float = 1.0
    c_cdt: float = 1.0
    field_degree: int = 1
    log_Q: float = 1.0
    y_max: int = 0
    c_st: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.c_main <= 1.0):
            raise DomainError(f"c_main must lie in (0, 1], got {self.c_main}")
        if self.c_cdt < 1.0:
            raise DomainError(f"c_cdt must be >= 1, got {self.c_cdt}")
        if int(self.field_degree) != self.field_degree or self.field_degree < 1:
            raise DomainError("field_degree must be a positive integer")
        if not (self.log_Q > 0.0 and math.isfinite(self.log_Q)):
            raise DomainError(f"log_Q must be a positive real, got {self.log_Q}")
        if self.y_max not in (0, 2):
            raise DomainError(f"y_max must be 0 or 2, got {self.y_max}")
        if self.c_st <= 0.0:
            raise DomainError("c_st must be positive")

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class EffectiveBound:
    value: float
    M: float
    log_x: float
    log_x_threshold: float

    @property
    def in_range(self) -> bool:
        return self.log_x >= self.log_x_threshold


def _log_x(x, log_x) -> float:
    if (x is None) == (log_x is None):
        raise DomainError("give exactly one of x and log_x")
    if log_x is None:
        if x < 2:
            raise DomainError(f"x must be at least 2, got {x}")
        return math.log(x)
    if log_x < math.log(2):
        raise DomainError(f"x must be at least 2, got exp({log_x})")
    return float(log_x)


def effective_bound(profile: BoundProfile, x: float | None = None, *, log_x: float | None = None) -> EffectiveBound:
    """c_ST sqrt(d) (log(Q log x) / sqrt(log x))^(2/(2+Y)), with M and the validity threshold.

    ``log_x`` lets callers work at cutoffs far beyond float range (the
    threshold itself is typically around exp(10^9)).
    """
    L = _log_x(x, log_x)
    d, Y = profile.field_degree, profile.y_max
    expo = 2.0 / (2.0 + Y)
    inner = profile.log_Q + math.log(L)
    value = profile.c_st * math.sqrt(d) * (inner / math.sqrt(L)) ** expo
    big = 16.0 * profile.c_cdt + 224.0
    M = (math.sqrt(profile.c_main * L) / (big * inner)) ** expo / math.sqrt(d)
    threshold = (big / profile.c_main) ** 4 * d ** (1 + Y / 2) * profile.log_Q**2
    return EffectiveBound(value, M, L, threshold)


@dataclass(frozen=True)
class DiscrepancyReport:
    x: float
    interval: Interval
    interval2: Interval | None
    empirical: float
    reference: float
    abs_error: float
    effective_bound: float | None
    prime_count: int
    hits: int

    def row(self) -> dict:
        i2 = self.interval2
        return {
            "x": self.x,
            "interval_lo": self.interval.lo,
            "interval_hi": self.interval.hi,
            "interval2_lo": i2.lo if i2 else "",
            "interval2_hi": i2.hi if i2 else "",
            "empirical": self.empirical,
            "reference": self.reference,
            "abs_error": self.abs_error,
            "effective_bound": "" if self.effective_bound is None else self.effective_bound,
            "primes": self.prime_count,
        }


def _check_cutoff(seq: AngleSequence, x: float):
    if seq.limit is not None and x > seq.limit:
        raise TruncationError(f"cutoff {x:g} exceeds data range {seq.limit} of {seq.source or 'sequence'}")


def common_angles(seq: AngleSequence, seq2: AngleSequence, x: float):
    """(primes, theta, theta') over primes <= x present in both sequences."""
    _check_cutoff(seq, x)
    _check_cutoff(seq2, x)
    a, b = seq.up_to(x), seq2.up_to(x)
    primes, i, j = np.intersect1d(a.primes, b.primes, assume_unique=True, return_indices=True)
    return primes, a.angles[i], b.angles[j]


def _inside(theta: np.ndarray, I: Interval) -> np.ndarray:
    return (theta >= I.lo) & (theta <= I.hi)


def _report(x, I, I2, hits, total, reference, profile):
    if total == 0:
        raise EmptySampleError(f"no good primes up to {x:g}")
    empirical = hits / total
    bound = None
    if profile is not None and x >= 2:
        bound = effective_bound(profile, x).value
    return DiscrepancyReport(x, I, I2, empirical, reference, abs(empirical - reference), bound, total, hits)


def discrepancy(seq: AngleSequence, I: Interval, x: float, profile: BoundProfile | None = None) -> DiscrepancyReport:
    """Single-sequence version: share of theta_p in I against mu_ST(I)."""
    _check_cutoff(seq, x)
    s = seq.up_to(x)
    hits = int(np.count_nonzero(_inside(s.angles, I)))
    return _report(x, I, None, hits, len(s), mu_st_angle(I), profile)


def joint_discrepancy(
    seq: AngleSequence,
    seq2: AngleSequence,
    I: Interval,
    I2: Interval,
    x: float,
    profile: BoundProfile | None = None,
) -> DiscrepancyReport:
    """Joint share of (theta_p, theta'_p) in I x I2 over common good primes <= x."""
    _, t1, t2 = common_angles(seq, seq2, x)
    hits = int(np.count_nonzero(_inside(t1, I) & _inside(t2, I2)))
    return _report(x, I, I2, hits, t1.size, mu_st_angle(I) * mu_st_angle(I2), profile)


@dataclass(frozen=True)
class SandwichResult:
    lower: float
    count: int
    upper: float
    sample_size: int
    tolerance: float

    @property
    def margin_lower(self) -> float:
        return self.count - self.lower

    @property
    def margin_upper(self) -> float:
        return self.upper - self.count

    @property
    def passed(self) -> bool:
        return self.margin_lower >= -self.tolerance and self.margin_upper >= -self.tolerance


def sandwich_check(
    seq: AngleSequence,
    seq2: AngleSequence,
    T_minus: TrigPoly2D,
    T_plus: TrigPoly2D,
    x: float,
    raise_on_fail: bool = True,
) -> SandwichResult:
    """sum T-(theta_p, theta'_p) <= #{p : box} <= sum T+(theta_p, theta'_p)."""
    I, I2 = T_plus.interval or FULL, T_plus.interval2 or FULL
    if T_minus.interval != T_plus.interval or T_minus.interval2 != T_plus.interval2:
        raise DomainError("T- and T+ were built for different boxes")
    _, t1, t2 = common_angles(seq, seq2, x)
    count = int(np.count_nonzero(_inside(t1, I) & _inside(t2, I2)))
    lower = math.fsum(T_minus.at_points(t1, t2).tolist())
    upper = math.fsum(T_plus.at_points(t1, t2).tolist())
    res = SandwichResult(lower, count, upper, int(t1.size), 1e-6 * max(1, t1.size))
    if raise_on_fail and not res.passed:
        side = "lower" if res.margin_lower < -res.tolerance else "upper"
        margin = res.margin_lower if side == "lower" else res.margin_upper
        raise SandwichViolation(f"{side} inequality fails at x={x:g}: margin {margin:.6g}")
    return res
