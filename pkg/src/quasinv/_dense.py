"""Dense integer kernels on homogeneous slices.

A homogeneous polynomial of degree ``e`` is held as a numpy object array
``c`` of length ``e + 1`` with ``c[b]`` the (Python int) coefficient of
``z^(e-b) zb^b``. An element ``f / delta^k`` of the localisation is a pair
``(c, k)``. Every operator used by the package has integer coefficients, so
all heavy work stays in exact integers; rational scale factors are applied
once at the boundary.

The zero element is represented by ``None``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np


def zeros(n: int) -> np.ndarray:
    out = np.empty(n, dtype=object)
    out[:] = 0
    return out


@lru_cache(maxsize=None)
def _index(n: int) -> np.ndarray:
    out = np.empty(n, dtype=object)
    out[:] = range(n)
    return out


def is_zero(c) -> bool:
    return c is None or not any(c)


def from_poly(p, e: int):
    """Integer coefficient array of the degree-e slice of p, and its denominator."""
    vec = p.coeff_vector(e)
    den = 1
    for x in vec:
        den = lcm(den, x.denominator)
    out = np.empty(e + 1, dtype=object)
    out[:] = [x.numerator * (den // x.denominator) for x in vec]
    return out, den


def to_terms(c, scale=Fraction(1)) -> dict:
    """Sparse term dict {(a, b): Fraction} of c * scale."""
    e = len(c) - 1
    return {(e - b, b): Fraction(x) * scale for b, x in enumerate(c) if x}


def mul_delta(c: np.ndarray, N: int, times: int = 1) -> np.ndarray:
    for _ in range(times):
        out = zeros(len(c) + N)
        out[: len(c)] += c
        out[N:] -= c
        c = out
    return c


def div_delta(g: np.ndarray, N: int):
    """Exact quotient g / (z^N - zb^N), or None if delta does not divide g."""
    n = len(g)
    if n <= N:
        return None if any(g) else zeros(1)
    f = g[: n - N].copy()
    for r in range(N):
        f[r::N] = np.cumsum(f[r::N])
    # the top N coefficients of f * delta must reproduce the tail of g
    tail = zeros(N)
    lo = n - 2 * N
    if lo >= 0:
        tail[:] = -f[lo:]
    else:
        tail[-lo:] = -f
    if not np.array_equal(tail, g[n - N:]):
        return None
    return f


def reduced(c, k: int, N: int):
    if c is None or not any(c):
        return None, 0
    while k > 0:
        q = div_delta(c, N)
        if q is None:
            break
        c, k = q, k - 1
    return c, k


def multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)


def laplace_numerator(f: np.ndarray, k: int, N: int, m: int):
    """The pieces of L(f / delta^k) before reduction.

    Returns ``(N1, extra)`` with
    ``L(f/delta^k) = (delta*N1 - extra) / delta^(k+2)``, where
    ``N1 = 4 f_{z zb} delta + 4N(k+m) (zb^(N-1) f_z - z^(N-1) f_zb)`` and
    ``extra = 4 N^2 k (k+1+2m) (z zb)^(N-1) f``.
    """
    e = len(f) - 1
    idx = _index(e + 1)
    n1 = zeros(e + N - 1) if e + N - 1 > 0 else zeros(1)
    if e >= 2:
        fzzb = ((e - idx[1:e]) * idx[1:e]) * f[1:e]  # degree e-2, entry b-1
        n1[: e - 1] += 4 * fzzb
        n1[N : N + e - 1] -= 4 * fzzb
    if e >= 1 and (k + m):
        fz = (e - idx[:e]) * f[:e]  # degree e-1, entry b
        fzb = idx[1:] * f[1:]  # degree e-1, entry b-1
        w = 4 * N * (k + m)
        n1[N - 1 : N - 1 + e] += w * fz
        n1[:e] -= w * fzb
    extra = None
    if k:
        extra = zeros(e + 2 * N - 1)
        extra[N - 1 : N + e] = (4 * N * N * k * (k + 1 + 2 * m)) * f
    return n1, extra


def apply_L(f, k: int, N: int, m: int):
    """L(f / delta^k) as a reduced pair, assuming (f, k) is itself reduced.

    For k > 0 the result over delta^(k+2) is automatically reduced: modulo
    delta it equals a nonzero multiple of (z zb)^(N-1) f, and delta is
    coprime to z zb.
    """
    if f is None:
        return None, 0
    e = len(f) - 1
    n1, extra = laplace_numerator(f, k, N, m)
    if k == 0:
        if e == 0:
            return None, 0
        return reduced(n1, 1, N)
    full = mul_delta(n1, N)
    full -= extra
    if not any(full):
        return None, 0
    return full, k + 2


def apply_L_power(f, k: int, N: int, m: int, times: int):
    for _ in range(times):
        if f is None:
            break
        f, k = apply_L(f, k, N, m)
    return f, k


def add_elements(parts, N: int):
    """Sum of weighted elements [(weight, c, k)], returned reduced."""
    parts = [(w, c, k) for w, c, k in parts if c is not None and w]
    if not parts:
        return None, 0
    kmax = max(k for _, _, k in parts)
    total = None
    for w, c, k in parts:
        lifted = mul_delta(c, N, kmax - k) * w
        total = lifted if total is None else total + lifted
    return reduced(total, kmax, N)


def apply_integral(q: np.ndarray, f, k: int, N: int, m: int):
    """Unnormalised iterated-commutator action sum_i (-1)^i C(d,i) L^(d-i)(q L^i(f/delta^k)).

    ``q`` is the integer coefficient array of a homogeneous symbol of degree
    ``d = len(q) - 1``. The caller divides by ``2^d d!``.
    """
    d = len(q) - 1
    chain = [(f, k)]
    for _ in range(d):
        g, kg = apply_L(*chain[-1], N, m)
        if g is None:
            break
        chain.append((g, kg))
    parts = []
    binom = 1
    for i, (x, kx) in enumerate(chain):
        y, ky = reduced(multiply(q, x), kx, N)
        z, kz = apply_L_power(y, ky, N, m, d - i)
        parts.append(((-1) ** i * binom, z, kz))
        binom = binom * (d - i) // (i + 1)
    return add_elements(parts, N)
