"""Exact verification toolkit for m-quasiinvariants and m-harmonic
polynomials of the dihedral groups I2(N)."""

from .calogero import OperatorHandle, apply_integral, apply_L, apply_L2
from .dihedral import DihedralConfig, is_quasiinvariant, quasi_basis, quasi_dim
from .errors import (
    DivisionError,
    EvalError,
    NotQuasiinvariantError,
    ParseError,
    QuasinvError,
    TheoremViolation,
)
from .harmonic import GradedBasis, harmonic_space
from .linalg import RatMatrix, determinant, nullspace, rank
from .ratpoly import BiPoly, LocalElement, parse_poly, render_poly
from .structure import VerifyReport, run_full_verification

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "DihedralConfig",
    "DivisionError",
    "EvalError",
    "GradedBasis",
    "LocalElement",
    "NotQuasiinvariantError",
    "OperatorHandle",
    "ParseError",
    "QuasinvError",
    "RatMatrix",
    "TheoremViolation",
    "VerifyReport",
    "apply_L",
    "apply_L2",
    "apply_integral",
    "determinant",
    "harmonic_space",
    "is_quasiinvariant",
    "nullspace",
    "parse_poly",
    "quasi_basis",
    "quasi_dim",
    "rank",
    "render_poly",
    "run_full_verification",
]
