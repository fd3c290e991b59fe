"""m-harmonic polynomials: the joint kernel of L and L2, degree by degree."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import _dense
from .dihedral import (
    DihedralConfig,
    invariant_generators,
    is_quasiinvariant,
    quasi_basis,
)
from .errors import TheoremViolation
from .linalg import RatMatrix, nullspace, solve, span_rank
from .ratpoly import BiPoly, conjugate_swap, render_poly


@dataclass(frozen=True)
class GradedBasis:
    cfg: DihedralConfig
    components: dict = field(default_factory=dict)  # degree -> tuple of BiPoly

    @property
    def total_dim(self) -> int:
        return sum(len(v) for v in self.components.values())

    def degrees(self) -> list[int]:
        return sorted(d for d, v in self.components.items() for _ in v)

    def elements(self) -> list[BiPoly]:
        return [p for d in sorted(self.components) for p in self.components[d]]

    def to_json(self) -> dict:
        return {
            "N": self.cfg.N,
            "m": self.cfg.m,
            "components": {
                str(d): [render_poly(p) for p in ps]
                for d, ps in sorted(self.components.items())
                if ps
            },
            "total_dim": self.total_dim,
        }


def _condition_matrix(results, N: int) -> RatMatrix:
    """Columns are the numerators of the given (array, k) elements over a common delta power."""
    nonzero = [(c, k) for c, k in results if c is not None]
    if not nonzero:
        return RatMatrix.zeros(0, len(results))
    kmax = max(k for _, k in nonzero)
    cols = []
    for c, k in results:
        cols.append(None if c is None else _dense.mul_delta(c, N, kmax - k))
    height = max(len(c) for c in cols if c is not None)
    rows = [[0] * len(cols) for _ in range(height)]
    for j, c in enumerate(cols):
        if c is not None:
            for i, x in enumerate(c):
                rows[i][j] = x
    return RatMatrix.from_rows(rows, len(cols))


def _combine(vectors, basis):
    return [sum((v * p for v, p in zip(vec, basis) if v), BiPoly()) for vec in vectors]


@lru_cache(maxsize=None)
def laplacian_kernel_component(cfg: DihedralConfig, d: int) -> tuple[BiPoly, ...]:
    """Basis of the homogeneous degree-d polynomials killed by L."""
    images = []
    for b in range(d + 1):
        unit = _dense.zeros(d + 1)
        unit[b] = 1
        images.append(_dense.apply_L(unit, 0, cfg.N, cfg.m))
    M = _condition_matrix(images, cfg.N)
    return tuple(BiPoly.from_coeffs(d, v) for v in nullspace(M))


@lru_cache(maxsize=None)
def harmonic_component(cfg: DihedralConfig, d: int) -> tuple[BiPoly, ...]:
    """Basis of the homogeneous degree-d polynomials killed by both L and L2.

    Computed as the kernel of L2 restricted to the kernel of L, which is the
    same space as the kernel of the stacked conditions.
    """
    kernel = laplacian_kernel_component(cfg, d)
    if not kernel:
        return ()
    sigma2 = invariant_generators(cfg)[1]
    qarr, _ = _dense.from_poly(sigma2, cfg.N)
    images = []
    scaled = []
    for p in kernel:
        arr, den = _dense.from_poly(p, d)
        scaled.append(p.scale(den))
        images.append(_dense.apply_integral(qarr, arr, 0, cfg.N, cfg.m))
    M = _condition_matrix(images, cfg.N)
    return tuple(_combine(nullspace(M), scaled))


def harmonic_poincare(cfg: DihedralConfig) -> list[int]:
    return [len(harmonic_component(cfg, d)) for d in range(cfg.top_degree + 1)]


def _same_span(a, b, d) -> bool:
    va = [p.coeff_vector(d) for p in a]
    vb = [p.coeff_vector(d) for p in b]
    r = span_rank(va)
    return r == span_rank(vb) == span_rank(va + vb)


@lru_cache(maxsize=None)
def harmonic_space(cfg: DihedralConfig) -> GradedBasis:
    """H_m for d = 0..(2m+1)N, with the structural assertions.

    Raises TheoremViolation if the total dimension is not 2N, if any
    harmonic appears in the N + 2 degrees above the top degree, or if the
    span differs from that of the explicit generators q0, q_j, qbar_j, qN.
    """
    top = cfg.top_degree
    comps = {d: harmonic_component(cfg, d) for d in range(top + 1)}
    basis = GradedBasis(cfg, {d: v for d, v in comps.items() if v})
    if basis.total_dim != cfg.order:
        raise TheoremViolation(f"dim H_m = {basis.total_dim}, expected {cfg.order}")
    for d in range(top + 1, top + cfg.N + 3):
        if harmonic_component(cfg, d):
            raise TheoremViolation(f"unexpected m-harmonic polynomial in degree {d}")
    gens: dict[int, list] = {}
    for q in quasi_basis(cfg).elements():
        gens.setdefault(int(q.degree()), []).append(q)
    for d in range(top + 1):
        if not _same_span(comps[d], gens.get(d, []), d):
            raise TheoremViolation(f"H_m differs from the generator span in degree {d}")
    return basis


def coordinates(cfg: DihedralConfig, p: BiPoly, d: int):
    """Coordinates of homogeneous p in the harmonic basis of degree d, or None."""
    comp = harmonic_component(cfg, d)
    vec = p.coeff_vector(d)
    if not comp:
        return [] if not any(vec) else None
    M = RatMatrix.from_columns([q.coeff_vector(d) for q in comp], d + 1)
    return solve(M, vec)


def in_harmonic_span(cfg: DihedralConfig, p: BiPoly) -> bool:
    if p.is_zero():
        return True
    return all(coordinates(cfg, c, d) is not None for d, c in p.homogeneous_components().items())


def residue_slice_dims(cfg: DihedralConfig) -> list[int]:
    """dim of the part of H_m spanned by monomials with a - b = r (mod N), per r."""
    dims = [0] * cfg.N
    for d, comp in harmonic_space(cfg).components.items():
        for r in range(cfg.N):
            proj = [
                [c if (d - 2 * b) % cfg.N == r else 0 for b, c in enumerate(p.coeff_vector(d))]
                for p in comp
            ]
            dims[r] += span_rank(proj)
    return dims


@dataclass(frozen=True)
class RepReport:
    residue_dims: tuple
    reflection_trace: Fraction
    reflection_stable: bool
    residue_pairing: bool

    @property
    def passed(self) -> bool:
        return (
            all(x == 2 for x in self.residue_dims)
            and self.reflection_trace == 0
            and self.reflection_stable
            and self.residue_pairing
        )

    def to_json(self) -> dict:
        return {
            "residue_dims": list(self.residue_dims),
            "reflection_trace": str(self.reflection_trace),
            "reflection_stable": self.reflection_stable,
            "residue_pairing": self.residue_pairing,
        }


def regular_rep_check(cfg: DihedralConfig) -> RepReport:
    """Certificate that I2(N) acts on H_m by its regular representation.

    Twice the regular representation of the rotation subgroup on each
    residue slice, plus a traceless reflection pairing slice r with -r, pins
    down the regular representation of the whole group.
    """
    H = harmonic_space(cfg)
    trace = Fraction(0)
    stable = True
    for d, comp in H.components.items():
        for i, p in enumerate(comp):
            coords = coordinates(cfg, conjugate_swap(p), d)
            if coords is None:
                stable = False
                continue
            trace += coords[i]
    N = cfg.N
    dims = residue_slice_dims(cfg)
    pairing = all(dims[r] == dims[-r % N] for r in range(N))
    for d, comp in H.components.items():
        for r in range(N):
            for p in comp:
                part = BiPoly({k: c for k, c in p.terms.items() if (k[0] - k[1]) % N == r})
                # the residue-r part of an element of H_m is again in H_m;
                # its mirror image must land in H_m with residue -r
                if part and coordinates(cfg, conjugate_swap(part), d) is None:
                    pairing = False
    return RepReport(tuple(dims), trace, stable, pairing)


def laplacian_kernel_is_quasiinvariant(cfg: DihedralConfig, D: int | None = None):
    """Members of ker L (degrees <= D) that fail quasiinvariance; expected empty."""
    D = cfg.top_degree if D is None else D
    return [
        p
        for d in range(D + 1)
        for p in laplacian_kernel_component(cfg, d)
        if not is_quasiinvariant(cfg, p)
    ]


def kernel_dims(cfg: DihedralConfig, D: int) -> list[int]:
    return [len(laplacian_kernel_component(cfg, d)) for d in range(D + 1)]
