"""Clebsch-Gordan identities and the auxiliary coefficient a_D.

Every quantity here depends on a place only through the two angles, the
two square roots of the central-character values, and the twist value.  The
functions accept either a single :class:`LocalContext` (returning a Python
complex) or a :class:`ContextBatch` of many places at once (returning a numpy
array), so that large randomized sweeps stay vectorised.

Symmetric powers of negative index need a convention.  ``"literal"`` gives
Sym^j for j < 0 the constant L-factor, i.e. coefficient 0.  ``"weyl"`` uses
the Weyl character formula continued to negative index, which keeps
Sym^-1 = 0 but makes Sym^-2 the virtual character ``-det^-1`` of dimension -1.
The two agree for every m >= 1; at m = 0 only ``"weyl"`` makes the
perfect-square factorization and the degree count close up.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeMismatch, DomainError, IdentityViolation
from .satake import SatakeLocal, chebyshev_u_values, fold_angles
from .unitroot import ONE, UnitRoot

CONVENTIONS = ("weyl", "literal")
IDENTITY_TOL = 1e-9


@dataclass(frozen=True)
class LocalContext:
    pi_local: SatakeLocal
    pi_prime_local: SatakeLocal
    chi_value: UnitRoot = ONE
    psi_value: UnitRoot | None = None

    def __post_init__(self):
        if self.pi_local.prime != self.pi_prime_local.prime:
            raise DomainError(
                f"places differ: {self.pi_local.prime} vs {self.pi_prime_local.prime}"
            )


@dataclass(frozen=True)
class ContextBatch:
    """Many local contexts as parallel arrays.

    Unit roots are carried as their rotation ``turn`` (a float in [0, 1)),
    so ``zeta = exp(2 pi i zturn)`` and the central value is ``2*zturn``.
    """

    theta: np.ndarray
    zturn: np.ndarray
    theta2: np.ndarray
    zturn2: np.ndarray
    chiturn: np.ndarray

    def __len__(self):
        return len(self.theta)

    @classmethod
    def from_contexts(cls, contexts) -> "ContextBatch":
        ctxs = list(contexts)
        return cls(
            np.array([c.pi_local.angle for c in ctxs], dtype=float),
            np.array([float(c.pi_local.zeta.turn) for c in ctxs]),
            np.array([c.pi_prime_local.angle for c in ctxs], dtype=float),
            np.array([float(c.pi_prime_local.zeta.turn) for c in ctxs]),
            np.array([float(c.chi_value.turn) for c in ctxs]),
        )

    @classmethod
    def random(cls, size: int, rng: np.random.Generator, max_order: int = 12) -> "ContextBatch":
        """Uniform angles and random unit roots of order at most ``max_order``."""

        def roots():
            n = rng.integers(1, max_order + 1, size=size)
            k = rng.integers(0, n)
            return k / n

        return cls(
            rng.uniform(0.0, math.pi, size),
            roots(),
            rng.uniform(0.0, math.pi, size),
            roots(),
            roots(),
        )

    def context(self, i: int, prime: int = 5) -> LocalContext:
        """Exact scalar context for row ``i`` (turns re-rationalised)."""
        from fractions import Fraction

        def ur(t):
            return UnitRoot(Fraction(float(t)).limit_denominator(10_000))

        return LocalContext(
            SatakeLocal(prime, float(self.theta[i]), ur(self.zturn[i])),
            SatakeLocal(prime, float(self.theta2[i]), ur(self.zturn2[i])),
            ur(self.chiturn[i]),
        )


def _e(turns) -> np.ndarray:
    """exp(2 pi i t), with the argument reduced mod 1 first."""
    t = np.mod(turns, 1.0)
    return np.exp(2j * np.pi * t)


def _batch(ctx) -> tuple[ContextBatch, bool]:
    if isinstance(ctx, ContextBatch):
        return ctx, False
    if isinstance(ctx, LocalContext):
        return ContextBatch.from_contexts([ctx]), True
    raise TypeError(f"expected LocalContext or ContextBatch, got {type(ctx).__name__}")


def _out(arr: np.ndarray, scalar: bool):
    return complex(arr[0]) if scalar else arr


def _check_args(ell: int, convention: str):
    if ell < 1:
        raise DomainError("prime-power exponent must be positive")
    if convention not in CONVENTIONS:
        raise DomainError(f"unknown convention {convention!r}; choose from {CONVENTIONS}")


def _sym(theta, zturn, j: int, ell: int, convention: str = "weyl") -> np.ndarray:
    """Coefficient of Sym^j at v^ell: zeta^(j ell) U_j(cos(ell theta))."""
    if j < 0 and (convention == "literal" or j < -2):
        return np.zeros(np.shape(theta), dtype=complex)
    u = chebyshev_u_values(j, fold_angles(ell * np.asarray(theta)))
    return _e(j * ell * np.asarray(zturn)) * u


class _Terms:
    """Cached building blocks for one batch at fixed ell."""

    def __init__(self, b: ContextBatch, ell: int, convention: str):
        self.b, self.ell, self.conv = b, ell, convention
        self._cache: dict = {}

    def sym(self, which: int, j: int, dual: bool = False) -> np.ndarray:
        key = (which, j, dual)
        if key not in self._cache:
            theta = self.b.theta if which == 1 else self.b.theta2
            z = self.b.zturn if which == 1 else self.b.zturn2
            self._cache[key] = _sym(theta, -z if dual else z, j, self.ell, self.conv)
        return self._cache[key]

    def tw(self, turns) -> np.ndarray:
        return _e(self.ell * np.asarray(turns))

    @property
    def omega(self):
        return 2.0 * self.b.zturn

    @property
    def omega2(self):
        return 2.0 * self.b.zturn2

    def rs(self, j: int, k: int, twist, dual: bool = False) -> np.ndarray:
        return self.sym(1, j, dual) * self.sym(2, k, dual) * self.tw(twist)

    def a_ad(self) -> np.ndarray:
        return self.sym(1, 2) * self.tw(-self.omega)

    def a_sym4(self) -> np.ndarray:
        return self.sym(1, 4) * self.tw(-2.0 * self.omega)

    def c(self, n: int) -> np.ndarray:
        return self.sym(2, n) * self.tw(self.b.chiturn)


# --- Clebsch-Gordan identities ------------------------------------------------


def cg_product_sides(ctx, j: int, k: int, ell: int = 1):
    """Both sides of the product rule on a single local pi.

    LHS is the Rankin-Selberg coefficient of Sym^j x (Sym^k (x) chi); RHS is
    the sum over r of Sym^(j+k-2r) twisted by chi*omega^r.
    """
    if j < 0 or k < 0:
        raise DomainError("symmetric power indices must be non-negative")
    _check_args(ell, "weyl")
    b, scalar = _batch(ctx)
    t = _Terms(b, ell, "weyl")
    lhs = t.sym(1, j) * t.sym(1, k) * t.tw(b.chiturn)
    rhs = np.zeros(len(b), dtype=complex)
    for r in range(min(j, k) + 1):
        rhs = rhs + t.sym(1, j + k - 2 * r) * t.tw(b.chiturn + r * t.omega)
    return _out(lhs, scalar), _out(rhs, scalar)


def cg_product_coeff(ctx, j: int, k: int, ell: int = 1, check: bool = True):
    lhs, rhs = cg_product_sides(ctx, j, k, ell)
    if check:
        _assert_close(lhs, rhs, f"product rule j={j} k={k} ell={ell}")
    return rhs


def cg_norm_sides(ctx, j: int, ell: int = 1):
    """Both sides of the norm rule: Sym^j x Sym^j(dual) = 1 + sum_r Sym^2r (x) omega^-r."""
    if j < 0:
        raise DomainError("symmetric power index must be non-negative")
    _check_args(ell, "weyl")
    b, scalar = _batch(ctx)
    t = _Terms(b, ell, "weyl")
    lhs = t.sym(1, j) * t.sym(1, j, dual=True)
    rhs = np.ones(len(b), dtype=complex)
    for r in range(1, j + 1):
        rhs = rhs + t.sym(1, 2 * r) * t.tw(-r * t.omega)
    return _out(lhs, scalar), _out(rhs, scalar)


def cg_norm_coeff(ctx, j: int, ell: int = 1, check: bool = True):
    lhs, rhs = cg_norm_sides(ctx, j, ell)
    if check:
        _assert_close(lhs, rhs, f"norm rule j={j} ell={ell}")
    return rhs


def _assert_close(a, b, what: str, tol: float = IDENTITY_TOL):
    err = float(np.max(np.abs(np.asarray(a) - np.asarray(b)), initial=0.0))
    if err > tol:
        raise IdentityViolation(f"{what}: residual {err:.3e} exceeds {tol:g}")


# --- the auxiliary coefficient ------------------------------------------------


def _check_mn(m: int, n: int):
    if m < 0 or n < 0:
        raise DomainError("m and n must be non-negative")
    if max(m, n) < 1:
        raise DomainError("need max(m, n) >= 1")


def _terms(ctx, m, n, ell, convention):
    _check_mn(m, n)
    _check_args(ell, convention)
    b, scalar = _batch(ctx)
    return b, _Terms(b, ell, convention), scalar


def a_D(ctx, m: int, n: int, ell: int = 1, convention: str = "weyl"):
    """The coefficient of -D'/D at v^ell, summed term by term."""
    b, t, scalar = _terms(ctx, m, n, ell, convention)
    chi, om, om2 = b.chiturn, t.omega, t.omega2
    norm_m = t.sym(1, m) * t.sym(1, m, dual=True)
    norm_n = t.sym(2, n) * t.sym(2, n, dual=True)
    total = (
        4 * norm_m
        + 2 * norm_n
        + 4 * t.rs(m, n, chi)
        + 4 * t.rs(m, n, -chi, dual=True)
        + 2 * t.rs(m - 2, n, chi + om)
        + 2 * t.rs(m - 2, n, -chi - om, dual=True)
        + 2 * t.rs(m + 2, n, chi - om)
        + 2 * t.rs(m + 2, n, -chi + om, dual=True)
        + t.a_sym4()
        + 3 * t.a_ad()
    )
    for k in range(1, n + 1):
        s2k = t.sym(2, 2 * k)
        total = total + 3 * t.a_ad() * s2k * t.tw(-k * om2)
        total = total + t.sym(1, 4) * s2k * t.tw(-2 * om - k * om2)
    return _out(total, scalar)


def a_D_square(ctx, m: int, n: int, ell: int = 1):
    """|2 conj(a_Sym^m) + a_Ad c + c|^2 with c the coefficient of Sym^n(pi') (x) chi."""
    b, t, scalar = _terms(ctx, m, n, ell, "weyl")
    c = t.c(n)
    base = 2 * np.conj(t.sym(1, m)) + t.a_ad() * c + c
    return _out((np.abs(base) ** 2).astype(complex), scalar)


def cg_nonneg_2(ctx, m: int, n: int, ell: int = 1, convention: str = "weyl"):
    """(lhs, rhs) of the grouping that collapses the pi'-only terms to (a_Ad+1)^2 |a_Sym^n(pi')|^2."""
    b, t, scalar = _terms(ctx, m, n, ell, convention)
    norm_n = t.sym(2, n) * t.sym(2, n, dual=True)
    lhs = 2 * norm_n + 3 * t.a_ad() + t.a_sym4()
    for k in range(1, n + 1):
        s2k = t.sym(2, 2 * k)
        lhs = lhs + 3 * t.a_ad() * s2k * t.tw(-k * t.omega2)
        lhs = lhs + t.sym(1, 4) * s2k * t.tw(-2 * t.omega - k * t.omega2)
    rhs = (t.a_ad() + 1) ** 2 * np.abs(t.sym(2, n)) ** 2
    return _out(lhs, scalar), _out(rhs, scalar)


def cg_nonneg_3(ctx, m: int, n: int, ell: int = 1, convention: str = "weyl"):
    """(lhs, rhs) of the grouping of the six mixed terms into 4 Re((a_Ad+1) a_m c)."""
    b, t, scalar = _terms(ctx, m, n, ell, convention)
    chi, om = b.chiturn, t.omega
    lhs = (
        2 * t.rs(m - 2, n, chi + om)
        + 2 * t.rs(m - 2, n, -chi - om, dual=True)
        + 4 * t.rs(m, n, chi)
        + 4 * t.rs(m, n, -chi, dual=True)
        + 2 * t.rs(m + 2, n, -chi + om, dual=True)
        + 2 * t.rs(m + 2, n, chi - om)
    )
    rhs = 4 * np.real((t.a_ad() + 1) * t.sym(1, m) * t.c(n))
    return _out(lhs, scalar), _out(rhs.astype(complex), scalar)


def verify_a_D(ctx, m: int, n: int, ell: int = 1, tol: float = IDENTITY_TOL) -> float:
    """Check reality, non-negativity and the square identity; return max residual."""
    total = np.atleast_1d(a_D(ctx, m, n, ell))
    sq = np.atleast_1d(a_D_square(ctx, m, n, ell))
    imag = float(np.max(np.abs(total.imag), initial=0.0))
    neg = float(-np.min(total.real, initial=0.0))
    resid = float(np.max(np.abs(total - sq), initial=0.0))
    if imag > tol:
        raise IdentityViolation(f"a_D not real for m={m} n={n}: |Im| up to {imag:.3e}")
    if neg > tol:
        raise IdentityViolation(f"a_D negative for m={m} n={n}: down to {-neg:.3e}")
    if resid > tol:
        raise IdentityViolation(f"a_D != square for m={m} n={n}: residual {resid:.3e}")
    return max(imag, resid)


# --- degree and conductor bookkeeping ----------------------------------------


def _dim(j: int, convention: str) -> int:
    if j >= 0:
        return j + 1
    if convention == "weyl" and j == -2:
        return -1
    return 0


@dataclass(frozen=True)
class DegreeFactor:
    label: str
    multiplicity: int
    degree: int

    @property
    def contribution(self) -> int:
        return self.multiplicity * self.degree


@dataclass(frozen=True)
class DegreeLedger:
    m: int
    n: int
    convention: str
    factors: tuple[DegreeFactor, ...] = field(default_factory=tuple)

    @property
    def factor_degrees(self) -> list[tuple[str, int]]:
        return [(f.label, f.contribution) for f in self.factors]

    @property
    def total(self) -> int:
        return sum(f.contribution for f in self.factors)

    @property
    def expected(self) -> int:
        return (2 * self.m + 4 * self.n + 6) ** 2

    @property
    def virtual(self) -> list[DegreeFactor]:
        """Factors of non-positive degree (only possible for m < 2)."""
        return [f for f in self.factors if f.degree <= 0]


def degree_of_D(m: int, n: int, convention: str = "weyl", strict: bool = True) -> DegreeLedger:
    _check_mn(m, n)
    _check_args(1, convention)
    d = lambda j: _dim(j, convention)  # noqa: E731
    factors = [
        DegreeFactor(f"Sym{m} x Sym{m}~", 4, d(m) ** 2),
        DegreeFactor(f"Sym{n}' x Sym{n}'~", 2, d(n) ** 2),
        DegreeFactor(f"Sym{m} x Sym{n}' chi", 4, d(m) * d(n)),
        DegreeFactor(f"dual Sym{m} x Sym{n}' chi", 4, d(m) * d(n)),
        DegreeFactor(f"Sym{m - 2} x Sym{n}' chi omega", 2, d(m - 2) * d(n)),
        DegreeFactor(f"dual Sym{m - 2} x Sym{n}' chi omega", 2, d(m - 2) * d(n)),
        DegreeFactor(f"Sym{m + 2} x Sym{n}' chi omega^-1", 2, d(m + 2) * d(n)),
        DegreeFactor(f"dual Sym{m + 2} x Sym{n}' chi omega^-1", 2, d(m + 2) * d(n)),
        DegreeFactor("Sym4 omega^-2", 1, 5),
        DegreeFactor("Ad", 3, 3),
    ]
    for k in range(1, n + 1):
        factors.append(DegreeFactor(f"Ad x Sym{2 * k}'", 3, 3 * (2 * k + 1)))
        factors.append(DegreeFactor(f"Sym4 x Sym{2 * k}'", 1, 5 * (2 * k + 1)))
    if convention == "literal":
        factors = [f for f in factors if f.degree != 0]
    ledger = DegreeLedger(m, n, convention, tuple(factors))
    if strict and ledger.total != ledger.expected:
        raise DegreeMismatch(
            f"degree of D for (m, n) = ({m}, {n}) under {convention!r}: "
            f"counted {ledger.total}, expected {ledger.expected}"
        )
    return ledger


def conductor_exponents(m: int, ord_p_N: int) -> list[int]:
    """Iterates e_0 = 0, e_1 = f, e_{j+2} = 2 e_{j+1} - e_j + (2j+5) f up to index m."""
    if m < 0 or ord_p_N < 0:
        raise DomainError("m and the conductor exponent must be non-negative")
    e = [0, ord_p_N]
    for j in range(m - 1):
        e.append(2 * e[j + 1] - e[j] + (2 * j + 5) * ord_p_N)
    return e[: m + 1]


def sym_conductor_exponent_bound(m: int, ord_p_N_pi: int) -> int:
    if m < 1:
        raise DomainError("m must be positive")
    value = conductor_exponents(m, ord_p_N_pi)[m]
    if value > m**3 * ord_p_N_pi:
        raise AssertionError(f"recurrence value {value} exceeds m^3 f = {m**3 * ord_p_N_pi}")
    return value
