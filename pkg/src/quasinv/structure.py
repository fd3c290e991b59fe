"""The map q -> L_q(w) from quasiinvariants to m-harmonics, the bilinear
form <p, q> = (L_p L_q w)(0), and the full verification driver.

Throughout, w is represented by (z^N - zb^N)^(2m+1). Every statement checked
here (kernels, ranks, nondegeneracy) is insensitive to rescaling w.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .calogero import apply_integral, lemma8_closed, lemma8_direct
from .dihedral import (
    DihedralConfig,
    antiinvariant_dim,
    antiinvariant_series,
    invariant_generators,
    is_quasiinvariant,
    low_degree_invariance,
    m_discriminant,
    poincare_closed,
    pure_power_symmetry,
    quasi_basis,
    quasi_dim,
    quasi_slice_basis,
    require_quasiinvariant,
)
from .errors import QuasinvError, TheoremViolation
from .harmonic import (
    coordinates,
    harmonic_poincare,
    harmonic_space,
    in_harmonic_span,
    laplacian_kernel_is_quasiinvariant,
    regular_rep_check,
)
from .linalg import RatMatrix, determinant, span_rank
from .ratpoly import BiPoly, LocalElement, eval_origin, render_poly


def pi_map(cfg: DihedralConfig, q: BiPoly) -> BiPoly:
    """L_q(w); raises TheoremViolation if the image is not an m-harmonic polynomial."""
    require_quasiinvariant(cfg, q, "argument of pi")
    w = m_discriminant(cfg)
    total = BiPoly()
    for comp in q.homogeneous_components().values():
        img = apply_integral(cfg, comp, w)
        if not img.is_polynomial():
            raise TheoremViolation(f"L_q(w) has a pole for q = {render_poly(comp)}")
        total = total + img.numerator
    if not in_harmonic_span(cfg, total):
        raise TheoremViolation(f"L_q(w) is not m-harmonic for q = {render_poly(q)}")
    return total


def pi_matrix_on_H(cfg: DihedralConfig) -> RatMatrix:
    """Matrix of pi restricted to H_m, in the computed harmonic basis (columns = images)."""
    H = harmonic_space(cfg)
    offsets = {}
    n = 0
    for d in sorted(H.components):
        offsets[d] = n
        n += len(H.components[d])
    cols = []
    for d in sorted(H.components):
        for h in H.components[d]:
            img = pi_map(cfg, h)
            target = cfg.top_degree - d
            coords = coordinates(cfg, img, target)
            if coords is None:
                raise TheoremViolation(f"pi({render_poly(h)}) is outside H_m")
            col = [Fraction(0)] * n
            for i, c in enumerate(coords):
                col[offsets[target] + i] = c
            cols.append(col)
    return RatMatrix.from_columns(cols, n)


def gram_matrix(cfg: DihedralConfig) -> RatMatrix:
    """<p, q> = (L_p L_q w)(0) over q0, q1.., qbar1.., qN (in that order)."""
    basis = quasi_basis(cfg).elements()
    w = m_discriminant(cfg)
    inner = [apply_integral(cfg, q, w) for q in basis]
    rows = []
    for p in basis:
        rows.append([eval_origin(apply_integral(cfg, p, x)) for x in inner])
    return RatMatrix.from_rows(rows, len(basis))


def ideal_dim(cfg: DihedralConfig, d: int) -> int:
    """dim of the degree-d part of the ideal of Q_m generated by sigma1, sigma2."""
    s1, s2 = invariant_generators(cfg)
    gens = []
    if d >= 2:
        gens += [s1 * b for b in quasi_slice_basis(cfg, d - 2)]
    if d >= cfg.N:
        gens += [s2 * b for b in quasi_slice_basis(cfg, d - cfg.N)]
    return span_rank([g.coeff_vector(d) for g in gens])


def pi_kernel_dim(cfg: DihedralConfig, d: int) -> int:
    basis = quasi_slice_basis(cfg, d)
    target = cfg.top_degree - d
    if target < 0:
        for q in basis:
            if not pi_map(cfg, q).is_zero():
                raise TheoremViolation(f"pi is nonzero in degree {d} > top degree")
        return len(basis)
    images = [pi_map(cfg, q).coeff_vector(target) for q in basis]
    return len(basis) - span_rank(images)


def duality_check(cfg: DihedralConfig) -> bool:
    h = harmonic_poincare(cfg)
    return h == h[::-1]


# -- reports -------------------------------------------------------------

CHECK_NAMES = (
    "quasi_basis",
    "low_degree_invariance",
    "pure_power_symmetry",
    "poincare_series",
    "harmonic_space",
    "regular_representation",
    "kernel_of_L_quasiinvariant",
    "integral_closure",
    "discriminant_constant",
    "kernel_of_pi",
    "pi_isomorphism",
    "gram_nondegenerate",
    "duality",
)


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" or "fail"
    witness: object = None
    ms: float = 0.0

    def __post_init__(self):
        if self.name not in CHECK_NAMES:
            raise ValueError(f"unknown check {self.name!r}")
        if self.status not in ("pass", "fail"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and self.witness is None:
            raise ValueError("a failed check must carry a witness")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "witness": self.witness, "ms": self.ms}


@dataclass
class VerifyReport:
    cfg: DihedralConfig
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {"N": self.cfg.N, "m": self.cfg.m, "checks": [c.to_json() for c in self.checks]}


def kernel_pi_check(cfg: DihedralConfig, D: int | None = None) -> CheckResult:
    top = cfg.top_degree
    D = top + cfg.N if D is None else D
    if D > top + cfg.N:
        raise ValueError(f"degree bound {D} exceeds (2m+1)N + N = {top + cfg.N}")
    start = time.perf_counter()
    mismatches = []
    for d in range(D + 1):
        k, i = pi_kernel_dim(cfg, d), ideal_dim(cfg, d)
        if k != i:
            mismatches.append({"degree": d, "kernel_dim": k, "ideal_dim": i})
    ms = round((time.perf_counter() - start) * 1000, 3)
    if mismatches:
        return CheckResult("kernel_of_pi", "fail", mismatches, ms)
    return CheckResult("kernel_of_pi", "pass", None, ms)


# Each check returns None on success or a JSON-able witness on failure.


def _check_quasi_basis(cfg):
    qb = quasi_basis(cfg)
    N, m = cfg.N, cfg.m
    bad = []
    for j, q in enumerate(qb.qj, 1):
        if q.degree() != m * N + j or q.coeff(m * N + j, 0) != 1:
            bad.append(f"q{j} has wrong degree or normalisation")
    for label, q in qb.labelled():
        if not is_quasiinvariant(cfg, q):
            bad.append(f"{label} = {render_poly(q)} is not quasiinvariant")
    if qb.qN.degree() != cfg.top_degree:
        bad.append("qN has wrong degree")
    return bad or None


def _check_low_degree(cfg):
    bad = low_degree_invariance(cfg)
    return [render_poly(p) for p in bad] or None


def _check_pure_power(cfg):
    bad = pure_power_symmetry(cfg)
    return [{"degree": d, "poly": render_poly(p)} for d, p in bad] or None


def _check_poincare(cfg):
    D = 2 * cfg.top_degree + 4
    closed = poincare_closed(cfg, D)
    computed = [quasi_dim(cfg, d) for d in range(D + 1)]
    anti = antiinvariant_series(cfg, D)
    anti_computed = [antiinvariant_dim(cfg, d) for d in range(D + 1)]
    if computed == closed and anti == anti_computed:
        return None
    return {
        "computed": computed,
        "closed_form": closed,
        "antiinvariant_computed": anti_computed,
        "antiinvariant_series": anti,
    }


def expected_harmonic_degrees(cfg: DihedralConfig) -> list[int]:
    N, m = cfg.N, cfg.m
    return sorted([0, cfg.top_degree] + [m * N + j for j in range(1, N) for _ in (0, 1)])


def _check_harmonic_space(cfg):
    H = harmonic_space(cfg)
    problems = []
    if H.degrees() != expected_harmonic_degrees(cfg):
        problems.append({"degrees": H.degrees(), "expected": expected_harmonic_degrees(cfg)})
    for p in H.elements():
        if not is_quasiinvariant(cfg, p):
            problems.append({"not_quasiinvariant": render_poly(p)})
    return problems or None


def _check_regular_rep(cfg):
    rep = regular_rep_check(cfg)
    return None if rep.passed else rep.to_json()


def _check_kernel_of_L(cfg):
    bad = laplacian_kernel_is_quasiinvariant(cfg)
    return [render_poly(p) for p in bad] or None


def _check_closure(cfg):
    basis = quasi_basis(cfg).labelled()
    bad = []
    for lq, q in basis:
        for lp, p in basis:
            img = apply_integral(cfg, q, p)
            if not img.is_polynomial():
                bad.append({"q": lq, "p": lp, "image": str(img)})
            elif not is_quasiinvariant(cfg, img.numerator):
                bad.append({"q": lq, "p": lp, "image": render_poly(img.numerator)})
    return bad or None


def _check_constant(cfg):
    closed, direct = lemma8_closed(cfg), lemma8_direct(cfg)
    ok = closed == direct and closed != 0
    if cfg.m == 0:
        ok = ok and closed == Fraction(factorial(cfg.N), 2 ** (cfg.N - 1))
    return None if ok else {"closed": str(closed), "direct": str(direct)}


def _check_pi_iso(cfg):
    P = pi_matrix_on_H(cfg)
    det = determinant(P)
    return None if det != 0 else {"matrix": P.to_json()}


def gram_structure(cfg: DihedralConfig, G: RatMatrix | None = None) -> list[str]:
    """Deviations of the Gram matrix from its predicted structure (empty if none)."""
    G = gram_matrix(cfg) if G is None else G
    N = cfg.N
    labels = [label for label, _ in quasi_basis(cfg).labelled()]
    idx = {label: i for i, label in enumerate(labels)}
    degs = [int(q.degree()) for q in quasi_basis(cfg).elements()]
    problems = []
    if not G.is_symmetric():
        problems.append("not symmetric")
    if determinant(G) == 0:
        problems.append("degenerate")
    for i in range(G.rows):
        for j in range(G.cols):
            if degs[i] + degs[j] != cfg.top_degree and G[i, j]:
                problems.append(f"<{labels[i]},{labels[j]}> nonzero off the top degree")
    lqw = eval_origin(apply_integral(cfg, m_discriminant(cfg), LocalElement(m_discriminant(cfg), 0, N)))
    if lqw == 0:
        problems.append("L_qN(w) vanishes")
    for j1 in range(1, N):
        for j2 in range(1, N):
            if G[idx[f"q{j1}"], idx[f"qbar{j2}"]]:
                problems.append(f"<q{j1},qbar{j2}> != 0")
            val = G[idx[f"q{j1}"], idx[f"q{j2}"]]
            if j1 + j2 != N and val:
                problems.append(f"<q{j1},q{j2}> != 0")
            if j1 + j2 == N and val != lqw / 2:
                problems.append(f"<q{j1},q{j2}> = {val}, expected {lqw / 2}")
    return problems


def _check_gram(cfg):
    return gram_structure(cfg) or None


def _check_duality(cfg):
    return None if duality_check(cfg) else {"poincare": harmonic_poincare(cfg)}


_CHECKS = {
    "quasi_basis": _check_quasi_basis,
    "low_degree_invariance": _check_low_degree,
    "pure_power_symmetry": _check_pure_power,
    "poincare_series": _check_poincare,
    "harmonic_space": _check_harmonic_space,
    "regular_representation": _check_regular_rep,
    "kernel_of_L_quasiinvariant": _check_kernel_of_L,
    "integral_closure": _check_closure,
    "discriminant_constant": _check_constant,
    "kernel_of_pi": None,
    "pi_isomorphism": _check_pi_iso,
    "gram_nondegenerate": _check_gram,
    "duality": _check_duality,
}


def run_check(cfg: DihedralConfig, name: str) -> CheckResult:
    """Run one named check; mathematical failures become a failed result."""
    if name == "kernel_of_pi":
        try:
            return kernel_pi_check(cfg)
        except QuasinvError as exc:
            return CheckResult(name, "fail", f"{type(exc).__name__}: {exc}")
    start = time.perf_counter()
    try:
        witness = _CHECKS[name](cfg)
    except QuasinvError as exc:
        witness = f"{type(exc).__name__}: {exc}"
    ms = round((time.perf_counter() - start) * 1000, 3)
    return CheckResult(name, "pass" if witness is None else "fail", witness, ms)


def run_full_verification(cfg: DihedralConfig, names=CHECK_NAMES) -> VerifyReport:
    report = VerifyReport(cfg)
    for name in CHECK_NAMES:
        if name in names:
            report.checks.append(run_check(cfg, name))
    return report
