import pytest

from tests import FixtureRequest
from tlab_hardy import analytic_fn, quadrature


@pytest.fixture(params=["poly:0,1", "poly:1,1", "poly:1,2j,0,-0.5", "logfam:8"])
def spec(request: FixtureRequest[str]) -> str:
    return request.param


@pytest.fixture()
def f(spec: str) -> analytic_fn.TaylorPoly:
    return analytic_fn.from_spec(spec)


@pytest.fixture(params=[(3, 0), (8, 1), (16, 2)])
def random_f(request: FixtureRequest[tuple[int, int]]) -> analytic_fn.TaylorPoly:
    return analytic_fn.random_poly(*request.param)


@pytest.fixture(params=[0.0, 1.0, 2.5, 4.0])
def eta(request: FixtureRequest[float]) -> analytic_fn.UnitComplex:
    return analytic_fn.UnitComplex.from_angle(request.param)


@pytest.fixture()
def quad() -> quadrature.QuadConfig:
    return quadrature.DEFAULT_CONFIG
