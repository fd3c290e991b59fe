"""Quasiinvariants of the dihedral group I2(N) with constant multiplicity m.

Mirrors are the lines through the origin at angles pi*k/N, k = 0..N-1.
In the coordinates z, zb a homogeneous polynomial of degree d,
``sum_b a_b z^(d-b) zb^b``, is m-quasiinvariant iff for every residue
``j`` mod N and every ``s = 1..m``

    sum over b = j (mod N) of (d - 2b)^(2s-1) a_b = 0,

the odd angular derivatives at the mirrors, split by residue class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotQuasiinvariantError, TheoremViolation
from .linalg import RatMatrix, determinant, nullspace, rank
from .ratpoly import ONE, BiPoly, conjugate_swap, delta


@dataclass(frozen=True, order=True)
class DihedralConfig:
    """The group I2(N) (N mirror lines) with multiplicity m on every mirror."""

    N: int
    m: int

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 2:
            raise ValueError(f"N must be an integer >= 2, got {self.N!r}")
        if not isinstance(self.m, int) or self.m < 0:
            raise ValueError(f"m must be an integer >= 0, got {self.m!r}")

    @property
    def top_degree(self) -> int:
        """Degree (2m+1)N of the m-discriminant."""
        return (2 * self.m + 1) * self.N

    @property
    def order(self) -> int:
        return 2 * self.N

    def __str__(self):
        return f"I2({self.N}), m={self.m}"


def invariant_generators(cfg: DihedralConfig) -> tuple[BiPoly, BiPoly]:
    N = cfg.N
    return BiPoly.monomial(1, 1), BiPoly({(N, 0): 1, (0, N): 1})


def m_discriminant(cfg: DihedralConfig) -> BiPoly:
    """(z^N - zb^N)^(2m+1), the basic antiinvariant quasiinvariant."""
    return _discriminant(cfg.N, cfg.m)


@lru_cache(maxsize=None)
def _discriminant(N, m):
    return delta(N) ** (2 * m + 1)


# -- quasiinvariance ----------------------------------------------------


def quasi_condition_matrix(cfg: DihedralConfig, d: int) -> RatMatrix:
    """Moment conditions on the degree-d slice; rows (j, s), columns b = 0..d."""
    rows = []
    for j in range(cfg.N):
        for s in range(1, cfg.m + 1):
            rows.append(
                [(d - 2 * b) ** (2 * s - 1) if b % cfg.N == j else 0 for b in range(d + 1)]
            )
    return RatMatrix.from_rows(rows, d + 1)


def quasi_violations(cfg: DihedralConfig, p: BiPoly) -> list[tuple[int, int, int]]:
    """Failing conditions as (degree, residue j, order s) triples."""
    bad = []
    for d, comp in p.homogeneous_components().items():
        vec = comp.coeff_vector(d)
        for j in range(cfg.N):
            for s in range(1, cfg.m + 1):
                total = sum(
                    ((d - 2 * b) ** (2 * s - 1) * vec[b] for b in range(j, d + 1, cfg.N)),
                    Fraction(0),
                )
                if total:
                    bad.append((d, j, s))
    return bad


@lru_cache(maxsize=4096)
def is_quasiinvariant(cfg: DihedralConfig, p: BiPoly) -> bool:
    return not quasi_violations(cfg, p)


def require_quasiinvariant(cfg: DihedralConfig, p: BiPoly, what: str = "polynomial"):
    bad = quasi_violations(cfg, p)
    if bad:
        d, j, s = bad[0]
        raise NotQuasiinvariantError(
            f"{what} is not {cfg.m}-quasiinvariant for {cfg}: moment condition of "
            f"order {2 * s - 1} fails on residue class {j} in degree {d}",
            bad,
        )


def is_invariant(cfg: DihedralConfig, p: BiPoly) -> bool:
    if conjugate_swap(p) != p:
        return False
    return all((a - b) % cfg.N == 0 for a, b in p.terms)


def is_antiinvariant(cfg: DihedralConfig, p: BiPoly) -> bool:
    if conjugate_swap(p) != -p:
        return False
    return all((a - b) % cfg.N == 0 for a, b in p.terms)


def quasi_dim(cfg: DihedralConfig, d: int) -> int:
    return d + 1 - rank(quasi_condition_matrix(cfg, d))


@lru_cache(maxsize=None)
def quasi_slice_basis(cfg: DihedralConfig, d: int) -> tuple[BiPoly, ...]:
    """Basis of the homogeneous degree-d quasiinvariants (nullspace basis)."""
    if cfg.m == 0:
        return tuple(BiPoly.monomial(d - b, b) for b in range(d + 1))
    return tuple(BiPoly.from_coeffs(d, v) for v in nullspace(quasi_condition_matrix(cfg, d)))


def antiinvariant_dim(cfg: DihedralConfig, d: int) -> int:
    """Dimension of antiinvariant quasiinvariants of degree d."""
    rows = quasi_condition_matrix(cfg, d).to_rows()
    for b in range(d + 1):
        r = [0] * (d + 1)
        r[b] += 1
        r[d - b] += 1
        rows.append(r)
        if (d - 2 * b) % cfg.N:
            rows.append([int(c == b) for c in range(d + 1)])
    return d + 1 - rank(RatMatrix.from_rows(rows, d + 1))


# -- generators -----------------------------------------------------------


def _moment_system(cfg: DihedralConfig, j: int) -> list[list[int]]:
    N, m = cfg.N, cfg.m
    nodes = [m * N + j - 2 * t * N for t in range(m + 1)]
    return [[x ** (2 * s - 1) for x in nodes] for s in range(1, m + 1)]


def _generator_monomials(cfg: DihedralConfig, j: int) -> list[tuple[int, int]]:
    N, m = cfg.N, cfg.m
    return [(m * N + j - t * N, t * N) for t in range(m + 1)]


def quasi_generator_det(cfg: DihedralConfig, j: int) -> BiPoly:
    """The determinant form: the moment rows with the monomials as last row."""
    rows = _moment_system(cfg, j)
    monos = _generator_monomials(cfg, j)
    m = cfg.m
    terms = {}
    for t, mono in enumerate(monos):
        minor = [r[:t] + r[t + 1 :] for r in rows]
        cof = determinant(RatMatrix.from_rows(minor, m)) if m else Fraction(1)
        terms[mono] = (-1) ** (m + t) * cof
    return BiPoly(terms)


@lru_cache(maxsize=None)
def quasi_generator(cfg: DihedralConfig, j: int) -> BiPoly:
    """q_j = z^(mN+j) + (z zb)(...), normalised to leading coefficient 1."""
    if not 1 <= j <= cfg.N - 1:
        raise ValueError(f"generator index must lie in 1..{cfg.N - 1}, got {j}")
    system = RatMatrix.from_rows(_moment_system(cfg, j), cfg.m + 1)
    null = nullspace(system)
    if len(null) != 1:
        raise TheoremViolation(
            f"moment system for q_{j} has a {len(null)}-dimensional solution space"
        )
    coeffs = null[0]
    if not coeffs[0]:
        raise TheoremViolation(f"q_{j} has vanishing leading coefficient")
    coeffs = [c / coeffs[0] for c in coeffs]
    q = BiPoly(dict(zip(_generator_monomials(cfg, j), coeffs)))
    det_form = quasi_generator_det(cfg, j)
    lead = det_form.coeff(cfg.m * cfg.N + j, 0)
    if not lead or det_form.scale(1 / lead) != q:
        raise TheoremViolation(f"determinant and nullspace forms of q_{j} disagree")
    return q


@dataclass(frozen=True)
class QuasiBasis:
    q0: BiPoly
    qj: tuple
    qbarj: tuple
    qN: BiPoly

    def labelled(self) -> list[tuple[str, BiPoly]]:
        """Generators in the order q0, q1..q_{N-1}, qbar1..qbar_{N-1}, qN."""
        out = [("q0", self.q0)]
        out += [(f"q{j}", q) for j, q in enumerate(self.qj, 1)]
        out += [(f"qbar{j}", q) for j, q in enumerate(self.qbarj, 1)]
        out.append(("qN", self.qN))
        return out

    def elements(self) -> list[BiPoly]:
        return [p for _, p in self.labelled()]


@lru_cache(maxsize=None)
def quasi_basis(cfg: DihedralConfig) -> QuasiBasis:
    qj = tuple(quasi_generator(cfg, j) for j in range(1, cfg.N))
    return QuasiBasis(ONE, qj, tuple(conjugate_swap(q) for q in qj), m_discriminant(cfg))


def residue(cfg: DihedralConfig, p: BiPoly):
    """Common value of (a - b) mod N over the terms, or None if mixed."""
    vals = {(a - b) % cfg.N for a, b in p.terms}
    return vals.pop() if len(vals) == 1 else None


# -- free module structure ------------------------------------------------


def generator_labels(cfg: DihedralConfig) -> list[str]:
    return [label for label, _ in quasi_basis(cfg).labelled()]


def invariant_to_poly(cfg: DihedralConfig, s: BiPoly) -> BiPoly:
    """Substitute sigma1, sigma2 into s, whose exponent pairs index sigma1^a sigma2^b."""
    out = BiPoly()
    for (a, b), c in s.terms.items():
        out = out + _sigma_power(cfg, a, b).scale(c)
    return out


@lru_cache(maxsize=None)
def _sigma2_power(cfg: DihedralConfig, b: int) -> BiPoly:
    return invariant_generators(cfg)[1] ** b


def _sigma_power(cfg, a, b):
    p = _sigma2_power(cfg, b)
    if not a:
        return p
    return BiPoly._raw({(x + a, y + a): c for (x, y), c in p.terms.items()})


@lru_cache(maxsize=None)
def _shifted_generator(cfg: DihedralConfig, label: str, j: int) -> BiPoly:
    """Generator times sigma2^j."""
    gens = dict(quasi_basis(cfg).labelled())
    return gens[label] * _sigma2_power(cfg, j)


def reconstruct(cfg: DihedralConfig, coeffs: dict) -> BiPoly:
    """sum of invariant coefficient times generator."""
    gens = dict(quasi_basis(cfg).labelled())
    out = BiPoly()
    for label, s in coeffs.items():
        out = out + invariant_to_poly(cfg, s) * gens[label]
    return out


def decompose_over_invariants(cfg: DihedralConfig, q: BiPoly) -> dict[str, BiPoly]:
    """Coefficients s_label (polynomials in sigma1, sigma2) with q = sum s_label * generator.

    Works on each homogeneous component: strip the pure powers z^d and zb^d
    with a multiple of sigma2^j times a generator, then divide by z zb and
    repeat on the quotient.
    """
    require_quasiinvariant(cfg, q, "decomposition input")
    N, m = cfg.N, cfg.m
    acc: dict[str, dict] = {label: {} for label in generator_labels(cfg)}

    def record(label, s1, s2, c):
        slot = acc[label]
        v = slot.get((s1, s2), 0) + c
        if v:
            slot[(s1, s2)] = v
        else:
            slot.pop((s1, s2), None)

    for d0, comp in q.homogeneous_components().items():
        h = comp
        level = 0
        while not h.is_zero():
            d = d0 - 2 * level
            if d == 0:
                record("q0", level, 0, h.coeff(0, 0))
                break
            A, B = h.coeff(d, 0), h.coeff(0, d)
            k = (d - m * N) % N
            j = (d - m * N - k) // N
            sub = BiPoly()
            if A or B:
                if k:
                    if j < 0:
                        raise TheoremViolation(
                            f"degree-{d} quasiinvariant below mN has a pure power term"
                        )
                    if A:
                        sub = sub + _shifted_generator(cfg, f"q{k}", j).scale(A)
                        record(f"q{k}", level, j, A)
                    if B:
                        sub = sub + _shifted_generator(cfg, f"qbar{k}", j).scale(B)
                        record(f"qbar{k}", level, j, B)
                elif j <= m:
                    if A != B:
                        raise TheoremViolation(
                            f"coefficients of z^{d} and zb^{d} differ ({A} vs {B})"
                        )
                    sub = _sigma2_power(cfg, m + j).scale(A)
                    record("q0", level, m + j, A)
                else:
                    half_diff, half_sum = (A - B) / 2, (A + B) / 2
                    sub = _shifted_generator(cfg, "qN", j - m - 1).scale(half_diff)
                    sub = sub + _sigma2_power(cfg, m + j).scale(half_sum)
                    record("qN", level, j - m - 1, half_diff)
                    record("q0", level, m + j, half_sum)
            r = h - sub
            if any(a == 0 or b == 0 for a, b in r.terms):
                raise TheoremViolation(f"remainder in degree {d} is not divisible by z*zb")
            h = BiPoly._raw({(a - 1, b - 1): c for (a, b), c in r.terms.items()})
            level += 1
    return {label: BiPoly(t) for label, t in acc.items()}


# -- Poincare series --------------------------------------------------------


def poincare_numerator(cfg: DihedralConfig) -> list[int]:
    N, m = cfg.N, cfg.m
    num = [0] * (cfg.top_degree + 1)
    num[0] += 1
    for j in range(1, N):
        num[m * N + j] += 2
    num[cfg.top_degree] += 1
    return num


def _divide_series(coeffs: list[int], step: int) -> list[int]:
    # multiply by 1/(1 - t^step)
    out = list(coeffs)
    for i in range(step, len(out)):
        out[i] += out[i - step]
    return out


def poincare_closed(cfg: DihedralConfig, D: int) -> list[int]:
    """Coefficients t^0..t^D of the closed-form Poincare series of Q_m."""
    if D < 0:
        raise ValueError("D must be >= 0")
    num = poincare_numerator(cfg)
    series = [num[i] if i < len(num) else 0 for i in range(D + 1)]
    return _divide_series(_divide_series(series, 2), cfg.N)


def antiinvariant_series(cfg: DihedralConfig, D: int) -> list[int]:
    """Coefficients of t^((2m+1)N) / ((1-t^2)(1-t^N))."""
    series = [int(i == cfg.top_degree) for i in range(D + 1)]
    return _divide_series(_divide_series(series, 2), cfg.N)


# -- lemma-level checks ---------------------------------------------------


def low_degree_invariance(cfg: DihedralConfig) -> list[BiPoly]:
    """Non-invariant quasiinvariants of degree <= mN (expected: none)."""
    bad = []
    for d in range(cfg.m * cfg.N + 1):
        bad += [p for p in quasi_slice_basis(cfg, d) if not is_invariant(cfg, p)]
    return bad


def pure_power_symmetry(cfg: DihedralConfig) -> list[tuple[int, BiPoly]]:
    """Quasiinvariants of degree mN + lN (1 <= l <= m) whose z^d, zb^d coefficients differ."""
    bad = []
    for l in range(1, cfg.m + 1):
        d = (cfg.m + l) * cfg.N
        for p in quasi_slice_basis(cfg, d):
            if p.coeff(d, 0) != p.coeff(0, d):
                bad.append((d, p))
    return bad
