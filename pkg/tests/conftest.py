import pytest
from hypothesis import HealthCheck, settings

from quasinv.dihedral import DihedralConfig

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# every (N, m) with N in 2..6, m in 0..2 and top degree (2m+1)N <= 30
GRID = [DihedralConfig(N, m) for N in range(2, 7) for m in range(3) if (2 * m + 1) * N <= 30]
SMALL = [DihedralConfig(N, m) for N, m in [(2, 0), (2, 1), (3, 1), (4, 0), (3, 2), (5, 1)]]


def cfg_id(cfg):
    return f"N{cfg.N}m{cfg.m}"


@pytest.fixture(params=SMALL, ids=cfg_id)
def small_cfg(request):
    return request.param


@pytest.fixture(params=GRID, ids=cfg_id)
def grid_cfg(request):
    return request.param
