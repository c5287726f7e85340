import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stlab.errors import DomainError
from stlab.satake import (
    SatakeLocal,
    chebyshev_u,
    chebyshev_u_table,
    chebyshev_u_values,
    rs_coeff,
    sym_power_coeff,
)
from stlab.unitroot import ONE, UnitRoot

angles = st.floats(0.0, math.pi, allow_nan=False)
roots = st.builds(UnitRoot.of, st.integers(0, 11), st.integers(1, 12))


def brute_sym(theta, zeta: complex, m, ell):
    """Sum over the m+1 monomials of the Satake pair, raised to ell."""
    a1 = zeta * cmath.exp(1j * theta)
    a2 = zeta * cmath.exp(-1j * theta)
    return sum((a1**j * a2 ** (m - j)) ** ell for j in range(m + 1))


def test_chebyshev_examples():
    assert chebyshev_u(0, 1.234) == 1.0
    assert chebyshev_u(1, math.pi / 3) == pytest.approx(1.0, abs=1e-15)
    assert chebyshev_u(2, math.pi / 2) == pytest.approx(-1.0, abs=1e-15)
    assert chebyshev_u(5, 0.0) == 6.0
    assert chebyshev_u(5, math.pi) == -6.0
    assert chebyshev_u(4, math.pi) == 5.0
    assert chebyshev_u(-1, 0.3) == 0.0
    assert chebyshev_u(-2, 0.3) == -1.0


def test_chebyshev_domain():
    with pytest.raises(DomainError):
        chebyshev_u(2, -0.1)
    with pytest.raises(DomainError):
        chebyshev_u(2, math.pi + 1e-9)
    with pytest.raises(DomainError):
        chebyshev_u(-3, 1.0)


def test_near_endpoints_uses_limit():
    for m in range(12):
        assert chebyshev_u(m, 1e-10) == pytest.approx(m + 1, rel=1e-12)
        assert chebyshev_u(m, math.pi - 1e-10) == pytest.approx((m + 1) * (-1) ** m, rel=1e-12)


def test_grid_bound():
    th = np.linspace(0, math.pi, 10_000)
    tab = chebyshev_u_table(20, th)
    assert np.all(np.abs(tab) <= np.arange(1, 22) + 1e-9)


def test_vector_matches_scalar():
    th = np.concatenate([np.linspace(0, math.pi, 301), [1e-9, math.pi - 1e-9]])
    for m in range(-2, 15):
        vec = chebyshev_u_values(m, th)
        ref = np.array([chebyshev_u(m, t) for t in th])
        assert np.allclose(vec, ref, rtol=0, atol=1e-12)


@given(angles, st.integers(0, 30))
def test_recurrence_against_cosine(theta, m):
    lhs = chebyshev_u(m, theta) - chebyshev_u(m - 2, theta)
    assert lhs == pytest.approx(2 * math.cos(m * theta), abs=1e-9 * (m + 1) ** 2)


def test_sym_examples():
    assert abs(sym_power_coeff(SatakeLocal(5, math.pi / 2), 1).value) < 1e-15
    assert abs(sym_power_coeff(SatakeLocal(5, math.pi / 3), 2).value) < 1e-15


def test_sym_brute_force_spec_point():
    z = UnitRoot.of(1, 6)  # e^{i pi/3}
    got = sym_power_coeff(SatakeLocal(7, 0.7, z), 3, 2).value
    want = brute_sym(0.7, z.value, 3, 2)
    assert cmath.isclose(got, want, abs_tol=1e-12)


@settings(max_examples=300)
@given(angles, roots, st.integers(0, 12), st.integers(1, 5))
def test_sym_matches_monomial_enumeration(theta, z, m, ell):
    got = sym_power_coeff(SatakeLocal(11, theta, z), m, ell).value
    want = brute_sym(theta, z.value, m, ell)
    assert abs(got - want) <= 1e-9 * (m + 1)


@given(angles, st.integers(0, 20))
def test_sym_trivial_zeta_is_chebyshev(theta, m):
    assert abs(sym_power_coeff(SatakeLocal(5, theta), m).value - chebyshev_u(m, theta)) <= 1e-12


def test_satake_pair_invariants():
    loc = SatakeLocal(13, 1.1, UnitRoot.of(2, 5))
    a1, a2 = loc.satake_pair()
    assert cmath.isclose(a1 * a2, loc.central_value.value, abs_tol=1e-14)
    assert math.isclose(abs(a1), 1.0) and math.isclose(abs(a2), 1.0)
    with pytest.raises(DomainError):
        SatakeLocal(13, 3.2)
    with pytest.raises(DomainError):
        SatakeLocal(1, 1.0)


def test_rs_examples():
    loc, loc2 = SatakeLocal(5, 0.4), SatakeLocal(5, 2.0)
    assert rs_coeff(loc, loc2, ONE, 0, 0).value == 1
    half = SatakeLocal(5, math.pi / 2)
    assert abs(rs_coeff(half, half, ONE, 1, 1).value) < 1e-15
    got = rs_coeff(SatakeLocal(7, 0.3), SatakeLocal(7, 1.1), UnitRoot.of(1, 2), 2, 3).value
    want = -chebyshev_u(2, 0.3) * chebyshev_u(3, 1.1)
    assert cmath.isclose(got, want, abs_tol=1e-12)


def test_rs_rejects_different_places():
    with pytest.raises(ValueError):
        rs_coeff(SatakeLocal(5, 1.0), SatakeLocal(7, 1.0), ONE, 1, 1)


@given(angles, angles, roots, roots, roots, st.integers(0, 8), st.integers(0, 8), st.integers(1, 3))
def test_rs_conjugation_and_bound(t1, t2, z1, z2, chi, m, n, ell):
    a, b = SatakeLocal(17, t1, z1), SatakeLocal(17, t2, z2)
    val = rs_coeff(a, b, chi, m, n, ell).value
    dual = rs_coeff(a.conjugate(), b.conjugate(), chi.conjugate(), m, n, ell).value
    assert abs(dual - val.conjugate()) <= 1e-12 * (m + 1) * (n + 1)
    assert abs(val) <= (m + 1) * (n + 1) + 1e-12


@given(angles, roots, st.integers(0, 10), st.integers(1, 4))
def test_pair_order_does_not_matter(theta, z, m, ell):
    # swapping the two Satake parameters is theta -> -theta
    got = sym_power_coeff(SatakeLocal(11, theta, z), m, ell).value
    assert abs(brute_sym(-theta, z.value, m, ell) - got) <= 1e-9 * (m + 1)
