import numpy as np
import pytest

from pnorbit import build_case


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def gr12():
    return build_case("aiii", k=1, n=2)


@pytest.fixture(scope="session")
def gr24():
    return build_case("aiii", k=2, n=4)


@pytest.fixture(scope="session")
def sp2():
    return build_case("ci", n=2)


@pytest.fixture(scope="session")
def so6u3():
    return build_case("diii", n=3)


@pytest.fixture(scope="session")
def bdi5():
    return build_case("bdi", m=5)


@pytest.fixture(scope="session")
def bdi6():
    return build_case("bdi", m=6)


@pytest.fixture(scope="session")
def all_cases(gr12, gr24, sp2, so6u3, bdi5, bdi6):
    return [gr12, gr24, sp2, so6u3, bdi5, bdi6]
