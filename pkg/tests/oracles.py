"""Independent reference computations used to check the package.

Nothing here imports the package's kernels: linear algebra is naive
Gauss-Jordan over Fraction, the operator is evaluated numerically as the
original sum over mirror lines in real coordinates, quasiinvariance is
checked by numeric normal derivatives on the mirrors, and series are
expanded with sympy.
"""

from fractions import Fraction
from math import factorial

import mpmath
import sympy

mpmath.mp.dps = 40


# -- linear algebra -------------------------------------------------------------


def gauss_rank(rows):
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return 0
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return r


def gauss_det(rows):
    A = [[Fraction(x) for x in r] for r in rows]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return det


# -- polynomials as plain dicts {(a, b): Fraction} --------------------------------


def dict_mul(p, q):
    out = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            k = (a1 + a2, b1 + b2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def dict_eval(p, z, zb):
    return sum(mpmath.mpf(c.numerator) / c.denominator * z**a * zb**b for (a, b), c in p.items())


def classical_symbol_action(q, p):
    """q(2 d_zb, 2 d_z) applied to p: the integral attached to q when m = 0."""
    out = {}
    for (qa, qb), qc in q.items():
        for (a, b), c in p.items():
            # z in the symbol acts as 2 d_zb, zb as 2 d_z
            if qb > a or qa > b:
                continue
            k = (a - qb, b - qa)
            coef = Fraction(qc) * c * 2 ** (qa + qb)
            coef *= Fraction(factorial(a), factorial(a - qb)) * Fraction(factorial(b), factorial(b - qa))
            out[k] = out.get(k, 0) + coef
    return {k: v for k, v in out.items() if v}


# -- the operator as a sum over mirrors, in real coordinates -----------------------


def _as_function(p):
    def f(x, y):
        z = mpmath.mpc(x, y)
        zb = mpmath.mpc(x, -y)
        return dict_eval(p, z, zb)

    return f


def mirror_normals(N):
    """Unit normals of the N mirror lines through the origin at angles pi k / N."""
    return [(-mpmath.sin(mpmath.pi * k / N), mpmath.cos(mpmath.pi * k / N)) for k in range(N)]


def numeric_L(p, N, m, x, y):
    """(Laplacian - sum over mirrors of 2m/(alpha, x) d_alpha) p at the real point (x, y)."""
    f = _as_function(p)
    x, y = mpmath.mpf(x), mpmath.mpf(y)
    lap = mpmath.diff(f, (x, y), (2, 0)) + mpmath.diff(f, (x, y), (0, 2))
    fx = mpmath.diff(f, (x, y), (1, 0))
    fy = mpmath.diff(f, (x, y), (0, 1))
    total = lap
    for a1, a2 in mirror_normals(N):
        total -= 2 * m * (a1 * fx + a2 * fy) / (a1 * x + a2 * y)
    return total


def numeric_is_quasiinvariant(p, N, m, samples=(mpmath.mpf("0.7"), mpmath.mpf("-1.3")), tol=1e-15):
    """Odd normal derivatives of order < 2m vanish on every mirror line, checked numerically."""
    f = _as_function(p)
    scale = 1 + max(abs(mpmath.mpf(c.numerator) / c.denominator) for c in p.values()) if p else 1
    for k in range(N):
        phi = mpmath.pi * k / N
        ux, uy = mpmath.cos(phi), mpmath.sin(phi)
        nx, ny = -uy, ux
        for t in samples:
            px, py = t * ux, t * uy
            for s in range(1, m + 1):
                g = lambda u: f(px + u * nx, py + u * ny)  # noqa: E731
                val = mpmath.diff(g, 0, 2 * s - 1)
                if abs(val) > tol * scale * 10 ** (2 * s):
                    return False
    return True


# -- series -----------------------------------------------------------------------


def poincare_series_sympy(N, m, D):
    t = sympy.symbols("t")
    num = 1 + 2 * sum(t ** (m * N + j) for j in range(1, N)) + t ** ((2 * m + 1) * N)
    expr = num / ((1 - t**2) * (1 - t**N))
    ser = sympy.series(expr, t, 0, D + 1).removeO()
    return [int(ser.coeff(t, d)) for d in range(D + 1)]


def antiinvariant_series_sympy(N, m, D):
    t = sympy.symbols("t")
    expr = t ** ((2 * m + 1) * N) / ((1 - t**2) * (1 - t**N))
    ser = sympy.series(expr, t, 0, D + 1).removeO()
    return [int(ser.coeff(t, d)) for d in range(D + 1)]


def discriminant_constant_formula(N, m):
    """The closed form for L_w(w), evaluated straight from its product formula."""
    val = Fraction(N ** (2 * m + 1), 2 ** ((2 * m + 1) * (N - 1)))
    for j in range(1, 2 * m + 2):
        val *= 2 * j - 2 * m - 1
    for d in range(1, (2 * m + 1) * N + 1):
        if d % N:
            val *= d - m * N
    return val
