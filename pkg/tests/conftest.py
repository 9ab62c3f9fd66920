import pytest

from affsymp.cache import DiffCache
from affsymp.lie_structures import build_g, build_I, build_sp
from affsymp.theorems import VerificationContext


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("diffcache")


@pytest.fixture(scope="session")
def ctx(cache_dir):
    """One verification context for the whole session, so the expensive
    tensor complexes are built and ranked exactly once."""
    return VerificationContext(cache=DiffCache(cache_dir))


@pytest.fixture(scope="session")
def sp1():
    return build_sp(1)


@pytest.fixture(scope="session")
def sp2():
    return build_sp(2)


@pytest.fixture(scope="session")
def i1():
    return build_I(1)


@pytest.fixture(scope="session")
def g1():
    return build_g(1)


@pytest.fixture(scope="session")
def g2():
    return build_g(2)
