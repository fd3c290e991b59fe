"""The gauged Calogero-Moser operator for I2(N) and its quantum integrals.

Summing the N mirror terms with the root-of-unity identity gives the closed
form over Q

    L = 4 d_z d_zb + 4mN / (z^N - zb^N) * (zb^(N-1) d_z - z^(N-1) d_zb),

normalised so that L(z zb) = 4(1 - mN). The integral attached to a
homogeneous quasiinvariant q of degree d is

    L_q = (ad_L)^d (q) / (2^d d!),

applied through the binomial expansion of the iterated commutator; operators
are never materialised, only their action on elements of Q[z, zb, 1/delta].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

from . import _dense
from .dihedral import (
    DihedralConfig,
    invariant_generators,
    m_discriminant,
    require_quasiinvariant,
)
from .errors import TheoremViolation
from .ratpoly import BiPoly, LocalElement


def _as_local(cfg: DihedralConfig, e) -> LocalElement:
    if isinstance(e, BiPoly):
        return LocalElement(e, 0, cfg.N)
    if e.N != cfg.N:
        raise ValueError(f"element lives over N={e.N}, configuration has N={cfg.N}")
    return e


def _slices(e: LocalElement):
    """Homogeneous pieces of e as reduced dense pairs with their denominators."""
    for d, comp in e.numerator.homogeneous_components().items():
        piece = LocalElement(comp, e.delta_power, e.N)
        arr, den = _dense.from_poly(piece.numerator, d)
        yield arr, piece.delta_power, den


def _assemble(cfg: DihedralConfig, pieces) -> LocalElement:
    """Sum of (array, k, rational scale) pieces as a reduced LocalElement."""
    total = LocalElement(BiPoly(), 0, cfg.N)
    for arr, k, scale in pieces:
        if arr is None:
            continue
        total = total + LocalElement(BiPoly._raw(_dense.to_terms(arr, scale)), k, cfg.N)
    return total


def apply_L(cfg: DihedralConfig, e) -> LocalElement:
    """L(e) for e a polynomial or an element of the localised ring."""
    e = _as_local(cfg, e)
    pieces = []
    for arr, k, den in _slices(e):
        out, kout = _dense.apply_L(arr, k, cfg.N, cfg.m)
        pieces.append((out, kout, Fraction(1, den)))
    return _assemble(cfg, pieces)


def integral_constant(d: int) -> Fraction:
    return Fraction(1, 2**d * factorial(d))


def apply_integral(cfg: DihedralConfig, q: BiPoly, p) -> LocalElement:
    """L_q(p) for a homogeneous quasiinvariant q."""
    p = _as_local(cfg, p)
    if q.is_zero():
        return LocalElement(BiPoly(), 0, cfg.N)
    if not q.is_homogeneous():
        raise ValueError("operator symbol must be homogeneous; split it by degree")
    require_quasiinvariant(cfg, q, "operator symbol")
    d = q.degree()
    qarr, qden = _dense.from_poly(q, d)
    c = integral_constant(d)
    pieces = []
    for arr, k, den in _slices(p):
        out, kout = _dense.apply_integral(qarr, arr, k, cfg.N, cfg.m)
        pieces.append((out, kout, c / (qden * den)))
    return _assemble(cfg, pieces)


def apply_L2(cfg: DihedralConfig, p) -> LocalElement:
    """The second basic integral, normalised to leading part d_z^N + d_zb^N.

    With L itself attached to sigma1 = z zb, the integral of sigma2 has
    leading part 2^N (d_z^N + d_zb^N); the factor 2^-N removes it. The
    kernel is unaffected.
    """
    return apply_integral(cfg, invariant_generators(cfg)[1], p) * Fraction(1, 2**cfg.N)


@dataclass(frozen=True)
class OperatorHandle:
    """The quantum integral attached to a quasiinvariant, represented by its action."""

    cfg: DihedralConfig
    symbol: BiPoly

    def __post_init__(self):
        require_quasiinvariant(self.cfg, self.symbol, "operator symbol")

    @property
    def degree(self) -> int:
        return int(self.symbol.degree()) if self.symbol else 0

    def __call__(self, p) -> LocalElement:
        total = LocalElement(BiPoly(), 0, self.cfg.N)
        for comp in self.symbol.homogeneous_components().values():
            total = total + apply_integral(self.cfg, comp, p)
        return total


# -- the constant L_w(w) -----------------------------------------------------


def lemma8_closed(cfg: DihedralConfig) -> Fraction:
    """Closed form of L_w(w) for the unit-normal m-discriminant w."""
    N, m = cfg.N, cfg.m
    top = cfg.top_degree
    odd = prod(2 * j - 2 * m - 1 for j in range(1, 2 * m + 2))
    rest = prod(d - m * N for d in range(1, top + 1) if d % N)
    return Fraction(N ** (2 * m + 1), 2 ** ((2 * m + 1) * (N - 1))) * odd * rest


def w_normalisation_square(cfg: DihedralConfig) -> int:
    """c^2 where (z^N - zb^N)^(2m+1) = c * w, w the product of unit-normal linear forms."""
    return -(4 ** cfg.top_degree)


def lemma8_direct(cfg: DihedralConfig) -> Fraction:
    """L_w(w) = L^M(w^2) / (2^M M!), computed by M applications of L."""
    M = cfg.top_degree
    qN = m_discriminant(cfg)
    f, k = _dense.from_poly(qN * qN, 2 * M)[0], 0
    for step in range(M):
        f, k = _dense.apply_L(f, k, cfg.N, cfg.m)
        if k:
            raise TheoremViolation(f"L^{step + 1}(w^2) is not a polynomial")
        if f is None:
            raise TheoremViolation(f"L^{step + 1}(w^2) vanishes")
    if len(f) != 1:
        raise TheoremViolation("L^M(w^2) is not a constant")
    value = Fraction(f[0])
    return value / (2**M * factorial(M) * w_normalisation_square(cfg))
