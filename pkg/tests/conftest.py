import numpy as np
import pytest

from presekit import config


@pytest.fixture(scope="session")
def algebras():
    return {name: config.load(name) for name in config.FIXTURES}


@pytest.fixture(scope="session")
def string3(algebras):
    return algebras["string3"]


@pytest.fixture(scope="session")
def a2(algebras):
    return algebras["a2"]


@pytest.fixture(scope="session")
def kron3(algebras):
    return algebras["kron3"]


@pytest.fixture(scope="session")
def yinyang3(algebras):
    return algebras["yinyang3"]


@pytest.fixture(scope="session")
def cycpot3(algebras):
    return algebras["cycpot3"]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
