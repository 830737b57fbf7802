import pytest
from hypothesis import HealthCheck, settings
from mpmath import mp

from genfreud import Params, PrecisionContext

settings.register_profile("default", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

GRID_T = ("-2", "0", "2")
GRID_LAMBDA = ("-0.3", "0.5", "1", "2.5")
GRID = [(t, lam) for t in GRID_T for lam in GRID_LAMBDA]


@pytest.fixture
def ctx():
    return PrecisionContext(50)


@pytest.fixture(autouse=True)
def working_precision(ctx):
    with ctx.workdps():
        yield
    assert mp.dps == 15 or mp.dps > 0


@pytest.fixture
def origin():
    return Params(0, 0)


@pytest.fixture(params=GRID, ids=[f"t={t},lam={lam}" for t, lam in GRID])
def grid_point(request):
    return Params(*request.param)
