import pytest
from hypothesis import HealthCheck
from hypothesis import settings as hypothesis_settings

from spherecurves.services.corpus import dfs_classes, enumerate_curves, load_projections
from spherecurves.services.gauss import EMPTY, parse

hypothesis_settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
hypothesis_settings.load_profile("default")


@pytest.fixture(scope="session")
def trefoil():
    return parse("1 -2 3 -1 2 -3")


@pytest.fixture(scope="session")
def figure_eight():
    return parse("1 -2 -3 4 2 -1 -4 3")


@pytest.fixture(scope="session")
def kink():
    return parse("1 -1")


@pytest.fixture(scope="session")
def circle():
    return EMPTY


@pytest.fixture(scope="session")
def corpus4():
    """Every realizable class with at most four double points."""
    return list(dfs_classes(4, n_jobs=1).values())


@pytest.fixture(scope="session")
def corpus5():
    return list(dfs_classes(5, n_jobs=1).values())


@pytest.fixture(scope="session")
def corpus6():
    return list(dfs_classes(6, n_jobs=1).values())


@pytest.fixture(scope="session")
def classes5():
    return enumerate_curves(5, n_jobs=1)


@pytest.fixture(scope="session")
def projections():
    return load_projections()
