import pytest

from conftest import SMALL, cfg_id
from quasinv.calogero import apply_integral, apply_L, apply_L2
from quasinv.dihedral import DihedralConfig, is_quasiinvariant, m_discriminant, quasi_basis
from quasinv.harmonic import (
    coordinates,
    harmonic_component,
    harmonic_poincare,
    harmonic_space,
    in_harmonic_span,
    kernel_dims,
    laplacian_kernel_component,
    laplacian_kernel_is_quasiinvariant,
    regular_rep_check,
)
from quasinv.linalg import span_rank
from quasinv.ratpoly import ONE, parse_poly

P = parse_poly
C21 = DihedralConfig(2, 1)


def test_component_examples():
    for cfg in SMALL:
        assert harmonic_component(cfg, 0) == (ONE,)
    comp = harmonic_component(C21, 3)
    assert len(comp) == 2
    gens = [P("z^3 + 3*z*zb^2"), P("zb^3 + 3*zb*z^2")]
    vecs = [p.coeff_vector(3) for p in comp]
    assert span_rank(vecs) == span_rank(vecs + [g.coeff_vector(3) for g in gens]) == 2
    assert harmonic_component(C21, 1) == ()


@pytest.mark.parametrize(
    "N, m, degrees",
    [(3, 1, [0, 4, 4, 5, 5, 9]), (2, 0, [0, 1, 1, 2]), (2, 1, [0, 3, 3, 6]), (4, 2, [0, 9, 9, 10, 10, 11, 11, 20])],
)
def test_space_degrees(N, m, degrees):
    H = harmonic_space(DihedralConfig(N, m))
    assert H.degrees() == degrees
    assert H.total_dim == 2 * N


def test_poincare_examples():
    assert harmonic_poincare(C21) == [1, 0, 0, 2, 0, 0, 1]
    for cfg in SMALL:
        h = harmonic_poincare(cfg)
        assert sum(h) == 2 * cfg.N
        assert h == h[::-1]


def test_graded_basis_json():
    js = harmonic_space(C21).to_json()
    assert js["N"] == 2 and js["m"] == 1 and js["total_dim"] == 4
    assert sorted(js["components"]) == ["0", "3", "6"]
    assert js["components"]["0"] == ["1"]


@pytest.mark.parametrize("cfg", SMALL, ids=cfg_id)
def test_harmonics_are_killed_and_quasiinvariant(cfg):
    for p in harmonic_space(cfg).elements():
        assert apply_L(cfg, p).is_zero()
        assert apply_L2(cfg, p).is_zero()
        assert is_quasiinvariant(cfg, p)


@pytest.mark.parametrize("cfg", SMALL, ids=cfg_id)
def test_harmonics_inside_kernel_of_L(cfg):
    for d in range(cfg.top_degree + 1):
        H = [p.coeff_vector(d) for p in harmonic_component(cfg, d)]
        K = [p.coeff_vector(d) for p in laplacian_kernel_component(cfg, d)]
        assert span_rank(K) == span_rank(K + H)


@pytest.mark.parametrize("cfg", SMALL, ids=cfg_id)
def test_laplacian_kernel(cfg):
    assert laplacian_kernel_component(cfg, 0) == (ONE,)
    assert laplacian_kernel_is_quasiinvariant(cfg) == []
    top = cfg.top_degree
    K = [p.coeff_vector(top) for p in laplacian_kernel_component(cfg, top)]
    w = m_discriminant(cfg).coeff_vector(top)
    assert span_rank(K) == span_rank(K + [w])


def test_kernel_dims_for_laplacian():
    # m = 0: harmonic polynomials in the plane, two per positive degree
    assert kernel_dims(DihedralConfig(3, 0), 5) == [1, 2, 2, 2, 2, 2]


@pytest.mark.parametrize("cfg", SMALL, ids=cfg_id)
def test_harmonics_invariant_under_integrals(cfg):
    for q in quasi_basis(cfg).elements():
        for h in harmonic_space(cfg).elements():
            out = apply_integral(cfg, q, h)
            assert out.is_polynomial()
            assert in_harmonic_span(cfg, out.numerator)


def test_coordinates():
    w = m_discriminant(C21)
    coords = coordinates(C21, w, 6)
    assert coords is not None and len(coords) == 1
    assert coordinates(C21, P("z^6"), 6) is None
    assert coordinates(C21, P("z"), 1) is None
    assert coordinates(C21, P("0"), 1) == []


@pytest.mark.parametrize(
    "N, m, dims", [(2, 1, (2, 2)), (3, 1, (2, 2, 2)), (2, 0, (2, 2)), (5, 2, (2,) * 5)]
)
def test_regular_representation(N, m, dims):
    rep = regular_rep_check(DihedralConfig(N, m))
    assert rep.residue_dims == dims
    assert rep.reflection_trace == 0
    assert rep.reflection_stable and rep.residue_pairing
    assert rep.passed
    assert rep.to_json()["reflection_trace"] == "0"
