"""Slow, obviously-correct reference implementations used by the tests."""
import numpy as np


def naive_primes(n):
    return [k for k in range(2, n + 1) if all(k % d for d in range(2, int(k**0.5) + 1))]


def brute_trace(curve, p: int) -> int:
    """p + 1 - #E(F_p) by enumerating every affine (x, y)."""
    a1, a2, a3, a4, a6 = curve.coeffs
    x = np.arange(p).reshape(-1, 1)
    y = np.arange(p).reshape(1, -1)
    lhs = (y * y + a1 * x * y + a3 * y) % p
    rhs = (x**3 + a2 * x * x + a4 * x + a6) % p
    affine = int(np.count_nonzero(lhs == rhs))
    return p + 1 - (affine + 1)
