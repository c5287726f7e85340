import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from stlab.ap.sequence import AngleSequence
from stlab.errors import DomainError, EmptySampleError, SandwichViolation, TruncationError
from stlab.majorant import majorant_pair
from stlab.measure import Interval, mu_st_angle
from stlab.sato_tate import (
    BoundProfile,
    common_angles,
    discrepancy,
    effective_bound,
    joint_discrepancy,
    sandwich_check,
)

HALF = Interval(0.0, math.pi / 2)


def seq(primes, angles, limit=None):
    return AngleSequence(np.array(primes), np.array(angles), limit=limit)


def test_joint_counts_by_hand():
    a = seq([5, 7, 11, 13], [0.1, 2.0, 0.5, 1.0], limit=13)
    b = seq([5, 7, 13], [0.2, 0.3, 3.0], limit=13)
    r = joint_discrepancy(a, b, HALF, HALF, 13)
    assert (r.hits, r.prime_count) == (1, 3)
    assert r.reference == pytest.approx(0.25)
    assert r.abs_error == pytest.approx(abs(1 / 3 - 0.25))
    assert r.effective_bound is None
    s = discrepancy(a, HALF, 11)
    assert (s.hits, s.prime_count) == (2, 3)


def test_truncation_and_empty():
    a = seq([5, 7], [0.1, 0.2], limit=10)
    with pytest.raises(TruncationError):
        common_angles(a, a, 100)
    b = seq([11], [0.2], limit=20)
    with pytest.raises(EmptySampleError):
        joint_discrepancy(seq([5], [0.1], limit=20), b, HALF, HALF, 20)


def test_profile_validation():
    for bad in (dict(c_main=0), dict(c_main=1.5), dict(c_cdt=0.5), dict(field_degree=0),
                dict(log_Q=-1), dict(y_max=1), dict(c_st=0)):
        with pytest.raises(DomainError):
            BoundProfile(**bad)


def test_effective_bound_values():
    p = BoundProfile(log_Q=2.0)
    b = effective_bound(p, log_x=100.0)
    assert b.value == pytest.approx((2 + math.log(100)) / 10)
    assert b.log_x_threshold == pytest.approx(240.0**4 * 4)
    assert not b.in_range
    assert effective_bound(p, log_x=1e12).in_range
    with pytest.raises(DomainError):
        effective_bound(p, 1.0)
    with pytest.raises(DomainError):
        effective_bound(p)


@given(st.floats(1e-3, 50), st.sampled_from([0, 2]), st.integers(1, 4))
def test_bound_decreases_beyond_threshold(log_q, y, d):
    p = BoundProfile(log_Q=log_q, y_max=y, field_degree=d)
    t = effective_bound(p, log_x=10.0).log_x_threshold
    L = np.geomspace(max(t, 10.0), max(t, 10.0) * 1e6, 40)
    vals = [effective_bound(p, log_x=v).value for v in L]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_sandwich_on_random_angles():
    rng = np.random.default_rng(3)
    ps = np.arange(5, 5 + 4000)
    a = seq(ps, rng.uniform(0, math.pi, ps.size))
    b = seq(ps, rng.uniform(0, math.pi, ps.size))
    I, I2 = Interval(0.3, 1.4), Interval(1.0, 2.2)
    lo, hi = majorant_pair(I, I2, 8)
    res = sandwich_check(a, b, lo, hi, ps[-1])
    assert res.passed and res.lower <= res.count <= res.upper
    assert res.sample_size == ps.size


def test_sandwich_failure_raises():
    ps = np.arange(5, 105)
    a = seq(ps, np.full(ps.size, 0.5))
    lo, hi = majorant_pair(Interval(0.0, 1.0), Interval(0.0, 1.0), 4)
    with pytest.raises(SandwichViolation):
        sandwich_check(a, a, _Shift(lo, 5.0), hi, 104)


class _Shift:
    """A minorant pushed upward to force a failure."""

    def __init__(self, T, by):
        self.T, self.by = T, by
        self.interval, self.interval2 = T.interval, T.interval2

    def at_points(self, t1, t2):
        return self.T.at_points(t1, t2) + self.by


def test_reference_matches_measure():
    I = Interval(0.2, 2.0)
    a = seq([5, 7], [0.3, 0.4])
    assert discrepancy(a, I, 7).reference == mu_st_angle(I)
