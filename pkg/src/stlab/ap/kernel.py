"""Compiled point-counting kernel.

For each prime p the quadratic-character table chi[0:p] is filled once and
shared by every curve.  The cubic f(x) = x^3 + A x + B is then walked with
STREAMS interleaved finite-difference sequences (x = j, j + S, j + 2S, ...),
which keeps the inner loop free of multiplications and modular reductions
and lets the compiler vectorise the table gathers.
"""
from __future__ import annotations

import numpy as np
from numba import njit

STREAMS = 32


@njit(cache=True, nogil=True, boundscheck=False)
def _fill_chi(p, chi, f, e):
    S = STREAMS
    p32 = np.int32(p)
    chi[:p] = -1
    half = (p - 1) // 2 + 1
    for j in range(S):
        f[j] = (j * j) % p
        e[j] = (2 * j * S + S * S) % p
    d2 = np.int32((2 * S * S) % p)
    nb = half // S
    for _ in range(nb):
        for j in range(S):
            chi[f[j]] = 1
        for j in range(S):
            t = f[j] + e[j]
            f[j] = t - p32 if t >= p32 else t
            t = e[j] + d2
            e[j] = t - p32 if t >= p32 else t
    for x in range(nb * S, half):
        chi[x * x % p] = 1
    chi[0] = 0


@njit(cache=True, nogil=True, boundscheck=False)
def _cubic(x, a, b, p):
    return (x * x % p * x + a * x + b) % p


@njit(cache=True, nogil=True, boundscheck=False)
def _char_sum(p, a, b, chi, f, e, g):
    S = STREAMS
    p32 = np.int32(p)
    for j in range(S):
        f0 = _cubic(j, a, b, p)
        f1 = _cubic(j + S, a, b, p)
        f2 = _cubic(j + 2 * S, a, b, p)
        f[j] = f0
        e[j] = (f1 - f0) % p
        g[j] = (f2 - 2 * f1 + f0) % p
    d3 = np.int32((6 * S * S * S) % p)
    acc = 0
    nfull = p // S
    for _ in range(nfull):
        for j in range(S):
            acc += chi[f[j]]
        for j in range(S):
            t = f[j] + e[j]
            f[j] = t - p32 if t >= p32 else t
            t = e[j] + g[j]
            e[j] = t - p32 if t >= p32 else t
            t = g[j] + d3
            g[j] = t - p32 if t >= p32 else t
    for x in range(nfull * S, p):
        acc += chi[_cubic(x, a, b, p)]
    return acc


@njit(cache=True, nogil=True, boundscheck=False)
def traces_block(primes, A, B):
    """a_p = -sum_x chi(x^3 + A x + B) for every prime (column) and curve (row).

    ``A`` and ``B`` hold the short-Weierstrass coefficients already reduced
    mod each prime.  Primes must exceed 3 and be below 2^31.
    """
    n = primes.shape[0]
    k = A.shape[0]
    out = np.empty((k, n), np.int64)
    if n == 0:
        return out
    chi = np.empty(primes[n - 1] + 1, np.int8)
    f = np.empty(STREAMS, np.int32)
    e = np.empty(STREAMS, np.int32)
    g = np.empty(STREAMS, np.int32)
    for i in range(n):
        p = primes[i]
        _fill_chi(p, chi, f, e)
        for c in range(k):
            out[c, i] = -_char_sum(p, A[c, i], B[c, i], chi, f, e, g)
    return out
