"""Partial sums of Rankin-Selberg coefficients over primes."""
from __future__ import annotations

import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .ap.sequence import AngleSequence
from .errors import DataIntegrityError, DomainError
from .sato_tate import BoundProfile, common_angles
from .satake import chebyshev_u_values
from .unitroot import ONE, UnitRoot

_SCALE = 1074  # every finite double is an integer multiple of 2^-1074


def exact_sum(values) -> int:
    """Exact sum of doubles as an integer in units of 2^-1074."""
    total = 0
    for v in np.asarray(values, dtype=np.float64).tolist():
        num, den = v.as_integer_ratio()
        total += num << (_SCALE - den.bit_length() + 1)
    return total


def to_float(scaled: int) -> float:
    """Correctly rounded value of an :func:`exact_sum` result."""
    return float(Fraction(scaled, 1 << _SCALE))


@dataclass(frozen=True)
class Checkpoint:
    x: float
    value: complex
    prime_count: int

    @property
    def normalized(self) -> float:
        return abs(self.value) / self.prime_count if self.prime_count else 0.0


@dataclass(frozen=True)
class PartialSumSeries:
    m: int
    n: int
    checkpoints: tuple[Checkpoint, ...]
    max_term: float = 0.0  # largest |summand| seen

    @property
    def term_bound(self) -> int:
        return (self.m + 1) * (self.n + 1)


def _twists(primes: np.ndarray, twist_values) -> np.ndarray:
    """Per-prime twist as complex values (1 when no twist is given)."""
    if twist_values is None:
        return np.ones(primes.size, dtype=complex)
    if isinstance(twist_values, Mapping):
        try:
            turns = [float(twist_values[int(p)].turn) for p in primes]
        except KeyError as exc:
            raise DataIntegrityError(f"no twist value for prime {exc.args[0]}") from None
    elif callable(twist_values):
        turns = [float(twist_values(int(p)).turn) for p in primes]
    else:
        raise DomainError("twist_values must be a mapping or a callable")
    return np.exp(2j * np.pi * np.asarray(turns))


def _zeta_powers(seq: AngleSequence, keep: np.ndarray, power: int) -> np.ndarray | None:
    if seq.zetas is None or power == 0:
        return None
    z = [seq.zetas[i] ** power for i in keep]
    return np.exp(2j * np.pi * np.array([float(u.turn) for u in z]))


def summands(seq, seq2, m: int, n: int, x: float, twist_values=None):
    """(primes, a_p) with a_p the coefficient of Sym^m x (Sym^n' (x) chi) at p <= x."""
    primes, t1, t2 = common_angles(seq, seq2, x)
    vals = chebyshev_u_values(m, t1) * chebyshev_u_values(n, t2) * _twists(primes, twist_values)
    if seq.zetas is not None or seq2.zetas is not None:
        i1 = np.searchsorted(seq.primes, primes)
        i2 = np.searchsorted(seq2.primes, primes)
        for z in (_zeta_powers(seq, i1, m), _zeta_powers(seq2, i2, n)):
            if z is not None:
                vals = vals * z
    return primes, vals


def coeff_partial_sum(
    seq: AngleSequence,
    seq2: AngleSequence,
    m: int,
    n: int,
    checkpoints,
    twist_values: Mapping[int, UnitRoot] | Callable[[int], UnitRoot] | None = None,
) -> PartialSumSeries:
    """Sum of a(p) over common good primes p <= x at each checkpoint x.

    Sums are exact (then rounded once), so they do not depend on evaluation
    order or on how the prime range was split.
    """
    if m < 0 or n < 0:
        raise DomainError("m and n must be non-negative")
    if (m, n) == (0, 0):
        raise DomainError("(m, n) = (0, 0) is the trivial sum; need (m, n) != (0, 0)")
    xs = sorted(float(x) for x in checkpoints)
    if not xs:
        return PartialSumSeries(m, n, ())
    primes, vals = summands(seq, seq2, m, n, xs[-1], twist_values)
    bound = (m + 1) * (n + 1)
    mags = np.abs(vals)
    max_term = float(mags.max()) if mags.size else 0.0
    if max_term > bound * (1 + 1e-12):
        raise AssertionError(f"summand of modulus {max_term} exceeds (m+1)(n+1) = {bound}")
    re = im = 0
    out = []
    start = 0
    for x in xs:
        stop = int(np.searchsorted(primes, x, side="right"))
        re += exact_sum(vals.real[start:stop])
        im += exact_sum(vals.imag[start:stop])
        start = stop
        out.append(Checkpoint(x, complex(to_float(re), to_float(im)), stop))
    return PartialSumSeries(m, n, tuple(out), max_term)


def bucket_by_characters(seq: AngleSequence, seq2: AngleSequence, central_orders=(1, 1), x: float | None = None):
    """Partition common good primes by the pair of central-character values.

    Returns a dict mapping (omega_p, omega'_p) as UnitRoots to prime arrays.
    Sequences without character data are treated as trivial only when the
    declared order is 1.
    """
    o1, o2 = (int(v) for v in central_orders)
    if o1 < 1 or o2 < 1:
        raise DomainError("central character orders must be positive")
    if x is None:
        x = min(seq.limit or 0, seq2.limit or 0)
    primes, _, _ = common_angles(seq, seq2, x)

    def values(s: AngleSequence, order: int):
        if s.zetas is None:
            if order != 1:
                raise DataIntegrityError(
                    f"{s.source or 'sequence'} has no central-character data but order {order} was declared"
                )
            return [ONE] * primes.size
        idx = np.searchsorted(s.primes, primes)
        out = []
        for i in idx:
            w = s.zetas[i] ** 2
            if order % w.order:
                raise DataIntegrityError(
                    f"central value {w} at p={int(s.primes[i])} has order {w.order}, not dividing {order}"
                )
            out.append(w)
        return out

    w1, w2 = values(seq, o1), values(seq2, o2)
    buckets: dict[tuple[UnitRoot, UnitRoot], list[int]] = {}
    for p, a, b in zip(primes.tolist(), w1, w2):
        buckets.setdefault((a, b), []).append(p)
    return {k: np.array(v, dtype=np.int64) for k, v in sorted(buckets.items())}


def bucketed_partial_sums(seq, seq2, m: int, n: int, x: float, central_orders=(1, 1), twist_values=None):
    """Exact (re, im) sums per bucket, in units of 2^-1074."""
    primes, vals = summands(seq, seq2, m, n, x, twist_values)
    out = {}
    for key, bp in bucket_by_characters(seq, seq2, central_orders, x).items():
        sel = np.isin(primes, bp)
        out[key] = (exact_sum(vals.real[sel]), exact_sum(vals.imag[sel]))
    return out


def log_pnt_bound(profile: BoundProfile, m: int, n: int, C_chi_log: float, log_x: float) -> float:
    """Natural log of the prime-number-theorem bound (safe for huge x)."""
    big_m = max(m, n)
    if big_m < 1:
        raise DomainError("need max(m, n) >= 1")
    if log_x < math.log(2):
        raise DomainError("x must be at least 2")
    Y, c, d = profile.y_max, profile.c_main, profile.field_degree
    lq = profile.log_Q + C_chi_log + math.log(big_m)
    mp = big_m ** (2 + Y)
    denom = mp * lq + big_m * math.sqrt(c * d * log_x)
    return log_x - (c / 8.0) * log_x / denom + 6.0 * math.log(mp * (lq + log_x))


def pnt_bound(profile: BoundProfile, m: int, n: int, C_chi_log: float, x: float) -> float:
    """x exp(-(c/8) log x / (M^(2+Y) log(Q C M) + M sqrt(c d log x))) (M^(2+Y) log(Q C M x))^6."""
    if x < 2:
        raise DomainError("x must be at least 2")
    return math.exp(log_pnt_bound(profile, m, n, C_chi_log, math.log(x)))
