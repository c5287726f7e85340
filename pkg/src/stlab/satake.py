"""Coefficient algebra at unramified places.

A place is described by its Satake pair ``{zeta*e^{i theta}, zeta*e^{-i theta}}``
with ``theta`` in [0, pi] and ``zeta`` a root of unity, so that the central
character value is ``zeta**2``.  Symmetric-power coefficients reduce to
Chebyshev polynomials of the second kind:

    sum_{j=0}^{m} (a1^j a2^(m-j))^l = zeta^(m l) * U_m(cos(l*theta)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .unitroot import ONE, UnitRoot

# below this |sin(theta)| the quotient form loses precision; use the recurrence
_SIN_CUTOFF = 1e-8


@dataclass(frozen=True)
class SatakeLocal:
    prime: int
    angle: float
    zeta: UnitRoot = ONE

    def __post_init__(self):
        if int(self.prime) != self.prime or self.prime < 2:
            raise DomainError(f"residue cardinality must be an integer >= 2, got {self.prime}")
        if not (0.0 <= self.angle <= math.pi):
            raise DomainError(f"angle {self.angle} outside [0, pi]")

    @property
    def central_value(self) -> UnitRoot:
        return self.zeta ** 2

    def satake_pair(self) -> tuple[complex, complex]:
        z = self.zeta.value
        e = complex(math.cos(self.angle), math.sin(self.angle))
        return z * e, z * e.conjugate()

    def conjugate(self) -> "SatakeLocal":
        """Local data of the contragredient: conjugate Satake pair."""
        return SatakeLocal(self.prime, self.angle, self.zeta.conjugate())


@dataclass(frozen=True)
class CoefficientValue:
    value: complex
    place: int
    power: int

    def __complex__(self) -> complex:
        return complex(self.value)

    def __abs__(self) -> float:
        return abs(self.value)


def _u_recurrence(m: int, x: float) -> float:
    if m == -2:
        return -1.0
    if m == -1:
        return 0.0
    prev, cur = 0.0, 1.0
    for _ in range(m):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def chebyshev_u(m: int, theta: float) -> float:
    """``U_m(cos theta) = sin((m+1) theta) / sin(theta)`` for m >= -2."""
    if m < -2:
        raise DomainError("chebyshev_u is defined here for m >= -2")
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"theta {theta} outside [0, pi]")
    # reflect into [0, pi/2] so that (m+1)*theta carries no extra rounding near pi
    sign = 1.0
    if theta > math.pi / 2:
        theta = math.pi - theta
        sign = -1.0 if m % 2 else 1.0
    s = math.sin(theta)
    if abs(s) > _SIN_CUTOFF:
        return sign * math.sin((m + 1) * theta) / s
    return sign * _u_recurrence(m, math.cos(theta))


def chebyshev_u_table(degree: int, thetas) -> np.ndarray:
    """Array ``out[i, m] = U_m(cos thetas[i])`` for 0 <= m <= degree."""
    th = np.asarray(thetas, dtype=float)
    if th.size and (th.min() < 0.0 or th.max() > math.pi):
        raise DomainError("angles must lie in [0, pi]")
    return np.stack([chebyshev_u_values(m, th) for m in range(degree + 1)], axis=-1)


def chebyshev_u_values(m: int, thetas) -> np.ndarray:
    """Vectorised ``U_m(cos theta)`` for a single m >= -2 and angles in [0, pi]."""
    if m < -2:
        raise DomainError("chebyshev_u is defined here for m >= -2")
    th = np.asarray(thetas, dtype=float)
    if m == -2:
        return np.full(th.shape, -1.0)
    if m == -1:
        return np.zeros(th.shape)
    high = th > np.pi / 2
    th = np.where(high, np.pi - th, th)
    s = np.sin(th)
    safe = np.abs(s) > _SIN_CUTOFF
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sin((m + 1) * th) / s
    if not safe.all():
        x = np.cos(th[~safe])
        prev, cur = np.zeros_like(x), np.ones_like(x)
        for _ in range(m):
            prev, cur = cur, 2.0 * x * cur - prev
        out[~safe] = cur
    if m % 2:
        out = np.where(high, -out, out)
    return out


def fold_angles(phis) -> np.ndarray:
    """Vectorised form of :func:`_fold_angle`."""
    phi = np.mod(np.asarray(phis, dtype=float), 2.0 * np.pi)
    phi = np.where(phi > np.pi, 2.0 * np.pi - phi, phi)
    return np.clip(phi, 0.0, np.pi)


def _fold_angle(phi: float) -> float:
    """Map any real angle to [0, pi] with the same cosine."""
    phi = math.fmod(phi, 2.0 * math.pi)
    if phi < 0:
        phi += 2.0 * math.pi
    if phi > math.pi:
        phi = 2.0 * math.pi - phi
    return min(max(phi, 0.0), math.pi)


def sym_power_value(local: SatakeLocal, m: int, ell: int = 1) -> complex:
    """Coefficient of Sym^m at ``v^ell`` as a bare complex number."""
    if m < 0:
        raise DomainError("symmetric power index must be non-negative")
    if ell < 1:
        raise DomainError("prime-power exponent must be positive")
    u = chebyshev_u(m, _fold_angle(ell * local.angle))
    return (local.zeta ** (m * ell)).value * u


def sym_power_coeff(local: SatakeLocal, m: int, ell: int = 1) -> CoefficientValue:
    return CoefficientValue(sym_power_value(local, m, ell), local.prime, ell)


def rs_coeff(
    local: SatakeLocal,
    local_prime: SatakeLocal,
    twist: UnitRoot,
    m: int,
    n: int,
    ell: int = 1,
) -> CoefficientValue:
    """Coefficient of Sym^m(pi) x (Sym^n(pi') (x) chi) at ``v^ell``.

    At unramified places the Rankin-Selberg coefficient is the product of the
    two standard coefficients; the twist contributes ``chi_v^ell``.
    """
    if local.prime != local_prime.prime:
        raise ValueError(f"places differ: {local.prime} vs {local_prime.prime}")
    value = (
        sym_power_value(local, m, ell)
        * sym_power_value(local_prime, n, ell)
        * (twist ** ell).value
    )
    return CoefficientValue(value, local.prime, ell)
