import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stlab.ap.sequence import AngleSequence
from stlab.errors import DataIntegrityError, DomainError
from stlab.pnt import (
    bucket_by_characters,
    bucketed_partial_sums,
    coeff_partial_sum,
    exact_sum,
    log_pnt_bound,
    pnt_bound,
    to_float,
)
from stlab.satake import SatakeLocal, rs_coeff
from stlab.sato_tate import BoundProfile
from stlab.unitroot import ONE, UnitRoot

doubles = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@given(st.lists(doubles, max_size=60))
def test_exact_sum_is_exact(values):
    want = sum((Fraction(v) for v in values), Fraction(0))
    assert Fraction(exact_sum(values), 1 << 1074) == want
    assert to_float(exact_sum(values)) == float(want)
    assert to_float(exact_sum(values)) == math.fsum(values)


@given(st.lists(doubles, min_size=1, max_size=60), st.randoms())
def test_exact_sum_order_independent(values, r):
    shuffled = list(values)
    r.shuffle(shuffled)
    assert exact_sum(values) == exact_sum(shuffled)


def _seqs(n=400, seed=0, zetas=False):
    rng = np.random.default_rng(seed)
    ps = np.array([p for p in range(5, 20000) if all(p % d for d in range(2, int(p**0.5) + 1))][:n])
    z1 = tuple(UnitRoot.of(int(k), 6) for k in rng.integers(0, 6, ps.size)) if zetas else None
    a = AngleSequence(ps, rng.uniform(0, math.pi, ps.size), zetas=z1)
    b = AngleSequence(ps, rng.uniform(0, math.pi, ps.size))
    return a, b


def test_partial_sums_against_scalar_oracle():
    a, b = _seqs(zetas=True)
    chi = {int(p): UnitRoot.of(int(p) % 5, 5) for p in a.primes}
    x = int(a.primes[250])
    got = coeff_partial_sum(a, b, 2, 3, [x], chi).checkpoints[0]
    want = 0j
    for i, p in enumerate(a.primes.tolist()):
        if p > x:
            break
        want += rs_coeff(SatakeLocal(p, a.angles[i], a.zetas[i]), SatakeLocal(p, b.angles[i]), chi[p], 2, 3).value
    assert cmath.isclose(got.value, want, abs_tol=1e-9)
    assert got.prime_count == 251


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4))
def test_termwise_bound_and_checkpoints(m, n):
    if (m, n) == (0, 0):
        return
    a, b = _seqs(seed=m * 7 + n)
    s = coeff_partial_sum(a, b, m, n, [100, 1000, a.limit])
    assert s.max_term <= (m + 1) * (n + 1)
    counts = [c.prime_count for c in s.checkpoints]
    assert counts == sorted(counts)


def test_partial_sum_rejects_trivial_pair():
    a, b = _seqs()
    with pytest.raises(DomainError):
        coeff_partial_sum(a, b, 0, 0, [100])
    with pytest.raises(DataIntegrityError):
        coeff_partial_sum(a, b, 1, 1, [100], {5: ONE})


def test_bucketing_recount():
    a, b = _seqs(zetas=True)
    buckets = bucket_by_characters(a, b, (3, 1))
    assert sum(v.size for v in buckets.values()) == len(a)
    for (w1, w2), ps in buckets.items():
        assert w2 == ONE
        idx = np.searchsorted(a.primes, ps)
        assert all(a.zetas[i] ** 2 == w1 for i in idx)
    # buckets sum back to the whole, exactly
    parts = bucketed_partial_sums(a, b, 1, 2, a.limit, (3, 1))
    total_re = sum(v[0] for v in parts.values())
    whole = coeff_partial_sum(a, b, 1, 2, [a.limit]).checkpoints[0].value
    assert to_float(total_re) == whole.real


def test_bucketing_checks_declared_orders():
    a, b = _seqs(zetas=True)
    with pytest.raises(DataIntegrityError):
        bucket_by_characters(a, b, (2, 1))
    with pytest.raises(DataIntegrityError):
        bucket_by_characters(b, a, (1, 1))
    plain = bucket_by_characters(b, b)
    assert list(plain) == [(ONE, ONE)]


def test_pnt_bound_log_space():
    p = BoundProfile()
    assert math.log(pnt_bound(p, 2, 1, 0.0, 1e6)) == pytest.approx(log_pnt_bound(p, 2, 1, 0.0, math.log(1e6)))
    assert math.isfinite(log_pnt_bound(p, 3, 3, 1.0, 1e9))
    with pytest.raises(DomainError):
        pnt_bound(p, 0, 0, 0.0, 100)
