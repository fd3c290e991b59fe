import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SMALL, cfg_id
from quasinv import structure
from quasinv.calogero import apply_integral
from quasinv.dihedral import (
    DihedralConfig,
    invariant_generators,
    m_discriminant,
    quasi_basis,
    quasi_dim,
    quasi_slice_basis,
)
from quasinv.errors import NotQuasiinvariantError, TheoremViolation
from quasinv.harmonic import coordinates, harmonic_poincare, harmonic_space
from quasinv.linalg import determinant, rank
from quasinv.ratpoly import ONE, Z, BiPoly, eval_origin
from quasinv.structure import (
    CHECK_NAMES,
    CheckResult,
    duality_check,
    gram_matrix,
    gram_structure,
    ideal_dim,
    kernel_pi_check,
    pi_kernel_dim,
    pi_map,
    pi_matrix_on_H,
    run_full_verification,
)

C21 = DihedralConfig(2, 1)


def test_pi_examples(small_cfg):
    cfg = small_cfg
    s1, s2 = invariant_generators(cfg)
    assert pi_map(cfg, ONE) == m_discriminant(cfg)
    assert pi_map(cfg, s1).is_zero()
    assert pi_map(cfg, s2).is_zero()
    for q in quasi_basis(cfg).qj:
        assert pi_map(cfg, s1 * q).is_zero()
    with pytest.raises(NotQuasiinvariantError):
        pi_map(DihedralConfig(2, 1), Z)


def test_pi_degree_reversal(small_cfg):
    cfg = small_cfg
    for q in quasi_basis(cfg).elements():
        img = pi_map(cfg, q)
        assert not img.is_zero()
        assert img.is_homogeneous() and img.degree() == cfg.top_degree - q.degree()


@pytest.mark.parametrize("cfg", SMALL, ids=cfg_id)
def test_pi_linearity(cfg):
    rng = random.Random(cfg.N + 5 * cfg.m)
    for _ in range(5):
        d1, d2 = rng.randint(0, cfg.top_degree + 2), rng.randint(0, cfg.top_degree + 2)
        B1, B2 = quasi_slice_basis(cfg, d1), quasi_slice_basis(cfg, d2)
        if not B1 or not B2:
            continue
        p, q = rng.choice(B1), rng.choice(B2)
        a, b = Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-5, 5))
        assert pi_map(cfg, p.scale(a) + q.scale(b)) == pi_map(cfg, p).scale(a) + pi_map(cfg, q).scale(b)


@pytest.mark.parametrize("cfg", SMALL, ids=cfg_id)
def test_ideal_annihilated(cfg):
    for s in invariant_generators(cfg):
        for q in quasi_basis(cfg).elements():
            assert pi_map(cfg, s * q).is_zero()


def test_pi_matrix_structure(small_cfg):
    cfg = small_cfg
    P = pi_matrix_on_H(cfg)
    assert P.rows == P.cols == 2 * cfg.N
    assert determinant(P) != 0
    H = harmonic_space(cfg)
    degrees = H.degrees()
    # column of the constant: coordinates of w
    w_coords = coordinates(cfg, m_discriminant(cfg), cfg.top_degree)
    assert P.column(0)[-1:] == w_coords and all(x == 0 for x in P.column(0)[:-1])
    # anti-diagonal block pattern
    for i in range(P.rows):
        for j in range(P.cols):
            if P[i, j]:
                assert degrees[i] == cfg.top_degree - degrees[j]


def test_gram_matrix(small_cfg):
    cfg = small_cfg
    G = gram_matrix(cfg)
    assert G.is_symmetric()
    assert determinant(G) != 0
    assert gram_structure(cfg, G) == []
    labels = [label for label, _ in quasi_basis(cfg).labelled()]
    w = m_discriminant(cfg)
    half = eval_origin(apply_integral(cfg, w, w)) / 2
    assert half != 0
    for j in range(1, cfg.N):
        i1, i2 = labels.index(f"q{j}"), labels.index(f"q{cfg.N - j}")
        assert G[i1, i2] == half
        assert G[i1, labels.index(f"qbar{j}")] == 0


def test_gram_degree_selection(small_cfg):
    cfg = small_cfg
    G = gram_matrix(cfg)
    degs = [q.degree() for q in quasi_basis(cfg).elements()]
    for i in range(G.rows):
        for j in range(G.cols):
            if degs[i] + degs[j] != cfg.top_degree:
                assert G[i, j] == 0


def test_gram_structure_reports_deviations():
    G = gram_matrix(C21)
    broken = type(G).from_rows([[x + (1 if i == j == 0 else 0) for j, x in enumerate(r)] for i, r in enumerate(G.to_rows())])
    assert any("off the top degree" in s for s in gram_structure(C21, broken))


def test_ideal_dim_examples():
    for cfg in SMALL:
        assert ideal_dim(cfg, 0) == ideal_dim(cfg, 1) == 0
    assert ideal_dim(C21, 2) == 2


@pytest.mark.parametrize("cfg", SMALL, ids=cfg_id)
def test_quotient_dimension_is_harmonic_dimension(cfg):
    h = harmonic_poincare(cfg)
    for d in range(cfg.top_degree + 1):
        assert quasi_dim(cfg, d) - ideal_dim(cfg, d) == h[d]
    # beyond the top degree the ideal is everything
    for d in (cfg.top_degree + 1, cfg.top_degree + 2):
        assert ideal_dim(cfg, d) == quasi_dim(cfg, d)


def test_kernel_of_pi_examples():
    assert pi_kernel_dim(C21, 0) == 0
    assert pi_kernel_dim(C21, 2) == ideal_dim(C21, 2) == 2
    res = kernel_pi_check(C21)
    assert res.passed and res.name == "kernel_of_pi"
    with pytest.raises(ValueError):
        kernel_pi_check(C21, C21.top_degree + C21.N + 1)


def test_duality_examples():
    assert duality_check(C21)
    assert duality_check(DihedralConfig(3, 1))
    for N in range(2, 7):
        assert duality_check(DihedralConfig(N, 0))


@pytest.mark.parametrize("N, m", [(2, 1), (5, 0), (3, 2)])
def test_full_verification_passes(N, m):
    report = run_full_verification(DihedralConfig(N, m))
    assert [c.name for c in report.checks] == list(CHECK_NAMES)
    assert report.passed, [c.to_json() for c in report.checks if not c.passed]
    js = report.to_json()
    assert js["N"] == N and js["m"] == m
    assert set(js["checks"][0]) == {"name", "status", "witness", "ms"}
    json.dumps(js)


def test_failed_check_is_recorded_with_witness(monkeypatch):
    def broken(cfg):
        raise TheoremViolation("synthetic failure")

    monkeypatch.setitem(structure._CHECKS, "duality", broken)
    report = run_full_verification(C21)
    res = report.check("duality")
    assert res.status == "fail" and "synthetic failure" in res.witness
    assert not report.passed
    assert report.check("quasi_basis").passed


def test_failed_kernel_check_reports_degrees(monkeypatch):
    monkeypatch.setattr(structure, "ideal_dim", lambda cfg, d: 99)
    res = kernel_pi_check(C21)
    assert res.status == "fail"
    assert res.witness[0] == {"degree": 0, "kernel_dim": 0, "ideal_dim": 99}


def test_check_result_validation():
    with pytest.raises(ValueError):
        CheckResult("not_a_check", "pass")
    with pytest.raises(ValueError):
        CheckResult("duality", "fail")
    with pytest.raises(ValueError):
        CheckResult("duality", "maybe", "x")


@given(st.integers(0, 12), st.lists(st.integers(-4, 4), min_size=1, max_size=6))
def test_pi_linear_on_slices(d, coeffs):
    cfg = DihedralConfig(3, 1)
    basis = quasi_slice_basis(cfg, d)
    combo = sum((b.scale(c) for b, c in zip(basis, coeffs)), BiPoly())
    expected = sum((pi_map(cfg, b).scale(c) for b, c in zip(basis, coeffs)), BiPoly())
    assert pi_map(cfg, combo) == expected


def test_nondegeneracy_transfer(small_cfg):
    cfg = small_cfg
    G = gram_matrix(cfg)
    P = pi_matrix_on_H(cfg)
    assert determinant(G) != 0
    assert rank(P) == P.cols
