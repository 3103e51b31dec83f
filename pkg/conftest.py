import pytest

from trilat.framework.typeiii import build_tower
from trilat.surface.named import named_triangulation


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the corpus-sized tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: corpus-sized test, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def named():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = named_triangulation(name)
        return cache[name]

    return get


@pytest.fixture(scope="session")
def tower(named):
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_tower(named(name))
        return cache[name]

    return get
