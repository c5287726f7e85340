"""Majorants and minorants of interval indicators by trigonometric polynomials.

One-dimensional pieces are Selberg's polynomials: for J = [a, b] in [0, 1]
and degree N (K = N + 1),

    S(x) = V(x - b) - V(x - a) + (b - a)  +/-  (F_K(x - a) + F_K(x - b)) / (2K)

where V is Vaaler's approximation to the sawtooth and F_K the Fejer kernel.
Two-dimensional pieces combine these as products, and the even
symmetrisation over (+-x1, +-x2) is rewritten in the basis
U_m(cos theta) U_n(cos theta').
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .measure import Interval, mu_st_angle
from .satake import chebyshev_u_table

PLUS, MINUS = "plus", "minus"


def _sign(sign: str) -> int:
    if sign in (PLUS, "+", 1):
        return 1
    if sign in (MINUS, "-", -1):
        return -1
    raise DomainError(f"sign must be 'plus' or 'minus', got {sign!r}")


def _e(x):
    return np.exp(2j * np.pi * x)


def vaaler_weight(t):
    """Vaaler's J(t) = pi t (1-t) cot(pi t) + t on (0, 1)."""
    t = np.asarray(t, dtype=float)
    return np.pi * t * (1 - t) / np.tan(np.pi * t) + t


def indicator_coeff(a: float, b: float, k: np.ndarray) -> np.ndarray:
    """Fourier coefficients of 1_[a,b] on R/Z at the integers k."""
    k = np.asarray(k)
    out = np.empty(k.shape, dtype=complex)
    nz = k != 0
    kk = k[nz]
    out[nz] = (_e(-kk * a) - _e(-kk * b)) / (2j * np.pi * kk)
    out[~nz] = b - a
    return out


@dataclass(frozen=True)
class TrigPoly1D:
    """Real trigonometric polynomial sum_{|k|<=N} c_k e(kx)."""

    degree: int
    coeffs: np.ndarray  # index k + degree
    interval: tuple[float, float] | None = None
    sign: int = 0

    def coeff(self, k: int) -> complex:
        if abs(k) > self.degree:
            return 0j
        return complex(self.coeffs[k + self.degree])

    @property
    def fourier_coeffs(self) -> dict[int, complex]:
        return {k: self.coeff(k) for k in range(-self.degree, self.degree + 1)}

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        k = np.arange(1, self.degree + 1)
        pos = self.coeffs[self.degree + 1:]
        val = np.real(_e(np.multiply.outer(x, k)) @ pos)
        return self.coeffs[self.degree].real + 2.0 * val

    def excess(self) -> float:
        """Integral of S - 1_J over one period (signed)."""
        a, b = self.interval
        return self.coeffs[self.degree].real - (b - a)


def selberg_1d(J, M: int, sign) -> TrigPoly1D:
    """Selberg majorant (sign plus) or minorant (sign minus) of 1_J, degree M."""
    a, b = (J.lo, J.hi) if isinstance(J, Interval) else (float(J[0]), float(J[1]))
    if not (0.0 <= a <= b <= 1.0):
        raise DomainError(f"J must satisfy 0 <= a <= b <= 1, got [{a}, {b}]")
    if M < 1:
        raise DomainError("degree must be at least 1")
    s = _sign(sign)
    K = M + 1
    k = np.arange(-M, M + 1)
    ak = np.abs(k)
    c = np.empty(2 * M + 1, dtype=complex)
    nz = k != 0
    c[nz] = vaaler_weight(ak[nz] / K) * indicator_coeff(a, b, k[nz])
    c[nz] += s * (1 - ak[nz] / K) * (_e(-k[nz] * a) + _e(-k[nz] * b)) / (2 * K)
    c[M] = (b - a) + s / K
    return TrigPoly1D(M, c, (a, b), s)


@dataclass(frozen=True)
class FourierPoly2D:
    """sum over |k1|,|k2| <= N of C[k1, k2] e(k1 x1 + k2 x2).

    Kept as a signed sum of separable products so that both the coefficient
    grid and grid evaluations stay cheap.
    """

    degree: int
    terms: tuple  # ((weight, TrigPoly1D, TrigPoly1D), ...)
    sign: int = 0

    @property
    def coeffs(self) -> np.ndarray:
        out = np.zeros((2 * self.degree + 1,) * 2, dtype=complex)
        for w, p, q in self.terms:
            out += w * np.outer(p.coeffs, q.coeffs)
        return out

    def coeff(self, k1: int, k2: int) -> complex:
        N = self.degree
        if abs(k1) > N or abs(k2) > N:
            return 0j
        return complex(self.coeffs[k1 + N, k2 + N])

    def grid(self, x1, x2) -> np.ndarray:
        out = 0.0
        for w, p, q in self.terms:
            out = out + w * np.outer(p(x1), q(x2))
        return out

    def __call__(self, x1: float, x2: float) -> float:
        return float(self.grid([x1], [x2])[0, 0])


def cochrane_2d(J1, J2, M: int, sign) -> FourierPoly2D:
    """Product majorant, or the minorant S1- S2+ + S1+ S2- - S1+ S2+.

    Constituents are built at degree M; a product of two one-variable
    polynomials of degree M still has degree at most M in each variable.
    """
    s = _sign(sign)
    p1, p2 = selberg_1d(J1, M, PLUS), selberg_1d(J2, M, PLUS)
    if s > 0:
        terms = ((1.0, p1, p2),)
    else:
        m1, m2 = selberg_1d(J1, M, MINUS), selberg_1d(J2, M, MINUS)
        terms = ((1.0, m1, p2), (1.0, p1, m2), (-1.0, p1, p2))
    return FourierPoly2D(M, terms, s)


def _cos_to_u(M: int) -> np.ndarray:
    """E with 2cos(m theta) = sum_j E[m, j] U_j(cos theta) (and E[0, 0] = 2)."""
    E = np.zeros((M + 1, M + 1))
    E[0, 0] = 2.0
    for m in range(1, M + 1):
        E[m, m] = 1.0
        if m >= 2:
            E[m, m - 2] = -1.0
    return E


@dataclass(frozen=True)
class TrigPoly2D:
    """sum alpha[m, n] U_m(cos theta) U_n(cos theta') for 0 <= m, n <= M."""

    degree: int
    alpha: np.ndarray
    interval: Interval | None = None
    interval2: Interval | None = None
    sign: int = 0

    @property
    def cheb_coeffs(self) -> dict[tuple[int, int], float]:
        M = self.degree
        return {(m, n): float(self.alpha[m, n]) for m in range(M + 1) for n in range(M + 1)}

    def grid(self, thetas, thetas2) -> np.ndarray:
        u1 = chebyshev_u_table(self.degree, thetas)
        u2 = chebyshev_u_table(self.degree, thetas2)
        return u1 @ self.alpha @ u2.T

    def at_points(self, thetas, thetas2) -> np.ndarray:
        """Values at paired points (theta_i, theta'_i)."""
        u1 = chebyshev_u_table(self.degree, thetas)
        u2 = chebyshev_u_table(self.degree, thetas2)
        return np.einsum("im,mn,in->i", u1, self.alpha, u2)

    def __call__(self, theta: float, theta2: float) -> float:
        return float(self.grid([theta], [theta2])[0, 0])


def to_chebyshev(S: FourierPoly2D, I: Interval | None = None, I2: Interval | None = None) -> TrigPoly2D:
    """Symmetrise S over sign flips of both arguments and change basis.

    sum_{t1, t2 = +-1} S(t1 theta / 2pi, t2 theta' / 2pi)
        = sum_{k1, k2} C[k1, k2] (2 cos k1 theta)(2 cos k2 theta')
    and 2 cos(m theta) = U_m - U_{m-2} with U_{-1} = 0, U_{-2} = -1.
    """
    N = S.degree
    C = S.coeffs
    D = np.zeros((N + 1, N + 1))
    for m1 in range(N + 1):
        s1 = {m1, -m1}
        for m2 in range(N + 1):
            total = 0j
            for k1 in s1:
                for k2 in {m2, -m2}:
                    total += C[k1 + N, k2 + N]
            D[m1, m2] = total.real
    E = _cos_to_u(N)
    return TrigPoly2D(N, E.T @ D @ E, I, I2, S.sign)


def scaled(I: Interval) -> tuple[float, float]:
    return I.lo / (2 * math.pi), I.hi / (2 * math.pi)


def majorant_pair(I: Interval, I2: Interval, M: int) -> tuple[TrigPoly2D, TrigPoly2D]:
    """(T-, T+) for the box I x I2 with coordinate degree M."""
    J1, J2 = scaled(I), scaled(I2)
    lo = to_chebyshev(cochrane_2d(J1, J2, M, MINUS), I, I2)
    hi = to_chebyshev(cochrane_2d(J1, J2, M, PLUS), I, I2)
    return lo, hi


def decay_weights(M: int) -> np.ndarray:
    """b(m, n): 1/m, 1/n or 1/(mn) off the origin; the origin entry is unused."""
    idx = np.arange(M + 1, dtype=float)
    inv = np.where(idx > 0, 1.0 / np.maximum(idx, 1.0), 1.0)
    return np.outer(inv, inv)


@dataclass(frozen=True)
class CoefficientConstants:
    K: float  # max |alpha(m, n)| / b(m, n) off the origin
    K_main: float  # M |alpha(0, 0) - mu(I) mu(I')|


def coefficient_constants(T: TrigPoly2D) -> CoefficientConstants:
    M = T.degree
    ratio = np.abs(T.alpha) / decay_weights(M)
    ratio[0, 0] = 0.0
    main = mu_st_angle(T.interval) * mu_st_angle(T.interval2)
    return CoefficientConstants(float(ratio.max()), float(M * abs(T.alpha[0, 0] - main)))


def indicator_grid(I: Interval, I2: Interval, thetas, thetas2) -> np.ndarray:
    a = (np.asarray(thetas) >= I.lo) & (np.asarray(thetas) <= I.hi)
    b = (np.asarray(thetas2) >= I2.lo) & (np.asarray(thetas2) <= I2.hi)
    return np.outer(a, b).astype(float)


def sandwich_violation(lo: TrigPoly2D, hi: TrigPoly2D, thetas, thetas2) -> float:
    """Largest amount by which T- exceeds, or T+ falls short of, the box indicator."""
    ind = indicator_grid(lo.interval, lo.interval2, thetas, thetas2)
    below = np.max(lo.grid(thetas, thetas2) - ind)
    above = np.max(ind - hi.grid(thetas, thetas2))
    return float(max(below, above, 0.0))
