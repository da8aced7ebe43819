import os

import pytest


@pytest.fixture(scope="session", autouse=True)
def _cache_dir(tmp_path_factory):
    """Hermetic lattice cache for the whole session."""
    path = tmp_path_factory.mktemp("lattice-cache")
    os.environ["WREATHCOVER_CACHE"] = str(path)
    yield str(path)


@pytest.fixture(scope="session")
def a5():
    from wreathcover import catalog

    return catalog.load("A5")


@pytest.fixture(scope="session")
def m11():
    from wreathcover import catalog

    return catalog.load("M11")


@pytest.fixture(scope="session")
def psl11():
    from wreathcover import catalog

    return catalog.load("PSL(2,11)")


@pytest.fixture(scope="session")
def psl7():
    from wreathcover import catalog

    return catalog.load("PSL(2,7)")


@pytest.fixture(scope="session")
def m11_lattice(m11, _cache_dir):
    from wreathcover.lattice import all_subgroup_classes

    return all_subgroup_classes(m11.table, cache_dir=_cache_dir)
