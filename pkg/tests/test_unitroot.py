from fractions import Fraction

import cmath
import math

import pytest
from hypothesis import given, strategies as st

from stlab.unitroot import ONE, UnitRoot


def test_exact_quarter_turns():
    assert UnitRoot.of(1, 4).value == 1j
    assert UnitRoot.of(1, 2).value == -1
    assert UnitRoot.of(3, 4).value == -1j
    assert ONE.value == 1


def test_reduction_and_equality():
    assert UnitRoot.of(5, 4) == UnitRoot.of(1, 4)
    assert UnitRoot.of(-1, 3) == UnitRoot.of(2, 3)
    assert hash(UnitRoot.of(2, 6)) == hash(UnitRoot.of(1, 3))


def test_order_cap():
    with pytest.raises(ValueError):
        UnitRoot(Fraction(1, 10_001))


def test_parse_roundtrip():
    u = UnitRoot.of(3, 7)
    assert UnitRoot.parse(str(u)) == u
    assert UnitRoot.parse("1") == ONE


@given(st.integers(-50, 50), st.integers(1, 60), st.integers(-50, 50), st.integers(1, 60))
def test_group_law_matches_complex(k1, n1, k2, n2):
    a, b = UnitRoot.of(k1, n1), UnitRoot.of(k2, n2)
    assert cmath.isclose((a * b).value, a.value * b.value, abs_tol=1e-12)
    assert abs(abs(a.value) - 1.0) < 1e-15
    assert (a * a.conjugate()) == ONE
    assert a.sqrt() ** 2 == a
    assert a.order == Fraction(k1, n1).__mod__(1).denominator


def test_modulus_one_and_finite_order():
    u = UnitRoot.of(5, 12)
    assert u ** u.order == ONE
    assert math.isclose(abs(u.value), 1.0)
