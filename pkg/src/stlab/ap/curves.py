"""Weierstrass models over Q and the built-in table of reference curves."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from ..errors import DomainError


def b_invariants(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def c_invariants(a1, a2, a3, a4, a6):
    b2, b4, b6, _ = b_invariants(a1, a2, a3, a4, a6)
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    return c4, c6


def discriminant(a1, a2, a3, a4, a6):
    b2, b4, b6, b8 = b_invariants(a1, a2, a3, a4, a6)
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


@dataclass(frozen=True)
class CurveModel:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    label: str = ""
    conductor: int | None = None
    bad_primes: frozenset = field(default=frozenset(), compare=False)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v:
                raise DomainError(f"{name} must be an integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        disc = self.discriminant
        if disc == 0:
            raise DomainError(f"singular model {self.coeffs}")
        object.__setattr__(self, "bad_primes", frozenset(sympy.factorint(abs(disc))))
        if not self.label:
            object.__setattr__(self, "label", "[" + ",".join(map(str, self.coeffs)) + "]")

    @property
    def coeffs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def discriminant(self) -> int:
        return discriminant(*self.coeffs)

    @property
    def c4c6(self) -> tuple[int, int]:
        return c_invariants(*self.coeffs)

    @property
    def j_invariant(self) -> Fraction:
        c4, _ = self.c4c6
        return Fraction(c4**3, self.discriminant)

    @property
    def conductor_estimate(self) -> int:
        """The stored conductor, or the radical of the discriminant if unknown."""
        if self.conductor is not None:
            return self.conductor
        out = 1
        for p in self.bad_primes:
            out *= p
        return out

    def short_form(self, p: int) -> tuple[int, int]:
        """(A, B) mod p with y^2 = x^3 + A x + B isomorphic to the curve over F_p, p > 3."""
        c4, c6 = self.c4c6
        return (-27 * c4) % p, (-54 * c6) % p

    @classmethod
    def parse(cls, text: str) -> "CurveModel":
        """A built-in label, or five comma-separated integers (optionally bracketed)."""
        key = text.strip()
        if key in BUILTIN:
            return BUILTIN[key]
        body = key.strip("[]")
        parts = [s for s in body.split(",") if s.strip()]
        if len(parts) != 5:
            known = ", ".join(sorted(BUILTIN))
            raise DomainError(f"unknown curve {text!r}; use a label ({known}) or a1,a2,a3,a4,a6")
        try:
            return cls(*(int(s) for s in parts))
        except ValueError:
            raise DomainError(f"curve coefficients must be integers: {text!r}") from None


_TABLE = [
    ("11a1", (0, -1, 1, -10, -20), 11),
    ("14a1", (1, 0, 1, 4, -6), 14),
    ("15a1", (1, 1, 1, -10, -10), 15),
    ("37a1", (0, 0, 1, -1, 0), 37),
    ("43a1", (0, 1, 1, 0, 0), 43),
    ("53a1", (1, -1, 1, 0, 0), 53),
    ("389a1", (0, 1, 1, -2, 0), 389),
    ("5077a1", (0, 0, 1, -7, 6), 5077),
]

BUILTIN: dict[str, CurveModel] = {
    label: CurveModel(*coeffs, label=label, conductor=cond) for label, coeffs, cond in _TABLE
}
