import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stlab.errors import DomainError
from stlab.majorant import (
    cochrane_2d,
    coefficient_constants,
    indicator_coeff,
    majorant_pair,
    sandwich_violation,
    selberg_1d,
    to_chebyshev,
)
from stlab.measure import FULL, Interval, mu_st_angle

GRID = np.linspace(0, math.pi, 201)


def test_selberg_1d_sandwich_and_mass():
    x = np.linspace(0, 1, 4001)
    for a, b in [(0.1, 0.3), (0.0, 0.5), (0.2, 0.2), (0.0, 1.0)]:
        ind = ((x >= a) & (x <= b)).astype(float)
        for M in (1, 4, 16):
            hi, lo = selberg_1d((a, b), M, "plus"), selberg_1d((a, b), M, "minus")
            assert np.all(hi(x) >= ind - 1e-12)
            assert np.all(lo(x) <= ind + 1e-12)
            assert hi.excess() == pytest.approx(1 / (M + 1))
            assert lo.excess() == pytest.approx(-1 / (M + 1))


def test_indicator_coefficients_against_quadrature():
    x = (np.arange(200000) + 0.5) / 200000
    ind = ((x >= 0.2) & (x <= 0.45)).astype(float)
    for k in range(-5, 6):
        ref = np.mean(ind * np.exp(-2j * np.pi * k * x))
        assert abs(indicator_coeff(0.2, 0.45, np.array([k]))[0] - ref) < 1e-5


def test_fourier_and_chebyshev_forms_agree():
    I, I2 = Interval(0.3, 1.2), Interval(1.0, 2.9)
    S = cochrane_2d((I.lo / (2 * math.pi), I.hi / (2 * math.pi)), (I2.lo / (2 * math.pi), I2.hi / (2 * math.pi)), 6, "plus")
    T = to_chebyshev(S, I, I2)
    x = GRID / (2 * math.pi)
    sym = S.grid(x, x) + S.grid(-x, x) + S.grid(x, -x) + S.grid(-x, -x)
    assert np.max(np.abs(sym - T.grid(GRID, GRID))) < 1e-12


@settings(max_examples=25, deadline=None)
@given(
    st.floats(0, math.pi), st.floats(0, math.pi), st.floats(0, math.pi), st.floats(0, math.pi),
    st.sampled_from([2, 4, 8, 16]),
)
def test_sandwich_on_grid(a, b, c, d, M):
    I, I2 = Interval(min(a, b), max(a, b)), Interval(min(c, d), max(c, d))
    lo, hi = majorant_pair(I, I2, M)
    assert sandwich_violation(lo, hi, GRID, GRID) < 1e-9
    # lower-left coefficient brackets the box mass
    main = mu_st_angle(I) * mu_st_angle(I2)
    assert lo.alpha[0, 0] <= main + 1e-12 <= hi.alpha[0, 0] + 2e-12


def test_full_box_constant_term():
    for M in range(2, 33):
        lo, hi = majorant_pair(FULL, FULL, M)
        assert lo.alpha[0, 0] >= 1 - 3 / M - 1e-12
        assert hi.alpha[0, 0] >= 1


def test_coefficient_constants_measured():
    lo, hi = majorant_pair(Interval(0.4, 1.7), Interval(0.2, 2.5), 16)
    for T in (lo, hi):
        c = coefficient_constants(T)
        assert c.K < 10 and c.K_main < 10


def test_bad_inputs():
    with pytest.raises(DomainError):
        selberg_1d((0.5, 0.1), 4, "plus")
    with pytest.raises(DomainError):
        selberg_1d((0.1, 0.5), 0, "plus")
    with pytest.raises(DomainError):
        selberg_1d((0.1, 0.5), 4, "up")
