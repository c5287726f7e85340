"""Roots of unity stored as exact rational rotations of the circle."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

MAX_ORDER = 10_000

_EXACT = {
    Fraction(0): complex(1.0, 0.0),
    Fraction(1, 4): complex(0.0, 1.0),
    Fraction(1, 2): complex(-1.0, 0.0),
    Fraction(3, 4): complex(0.0, -1.0),
}


@dataclass(frozen=True, order=True)
class UnitRoot:
    """The point ``exp(2*pi*i*turn)`` with ``turn`` a reduced fraction in [0, 1).

    Equality is exact, so unit roots can be used as dictionary keys when
    bucketing places by central-character value.
    """

    turn: Fraction

    def __post_init__(self):
        t = Fraction(self.turn) % 1
        if t.denominator > MAX_ORDER:
            raise ValueError(f"unit root order {t.denominator} exceeds cap {MAX_ORDER}")
        object.__setattr__(self, "turn", t)

    @classmethod
    def of(cls, k: int, n: int) -> "UnitRoot":
        """The root ``exp(2*pi*i*k/n)``."""
        if n <= 0:
            raise ValueError("denominator must be positive")
        return cls(Fraction(k, n))

    @property
    def order(self) -> int:
        return self.turn.denominator

    @property
    def value(self) -> complex:
        exact = _EXACT.get(self.turn)
        if exact is not None:
            return exact
        return cmath.exp(2j * math.pi * float(self.turn))

    def __complex__(self) -> complex:
        return self.value

    def __mul__(self, other: "UnitRoot") -> "UnitRoot":
        if not isinstance(other, UnitRoot):
            return NotImplemented
        return UnitRoot(self.turn + other.turn)

    def __pow__(self, k: int) -> "UnitRoot":
        return UnitRoot(self.turn * k)

    def conjugate(self) -> "UnitRoot":
        return UnitRoot(-self.turn)

    def sqrt(self) -> "UnitRoot":
        """Principal square root (half the rotation)."""
        return UnitRoot(self.turn / 2)

    def __str__(self) -> str:
        return f"{self.turn.numerator}/{self.turn.denominator}"

    @classmethod
    def parse(cls, text: str) -> "UnitRoot":
        """Parse ``"k/n"`` (a rotation by k/n of a full turn) or ``"1"``."""
        text = text.strip()
        if "/" in text:
            k, n = text.split("/", 1)
            return cls.of(int(k), int(n))
        return cls(Fraction(int(text)))


ONE = UnitRoot(Fraction(0))
