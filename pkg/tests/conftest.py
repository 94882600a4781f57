import numpy as np
import pytest

from rdworkbench import make_group


@pytest.fixture(scope="session")
def z1():
    return make_group("zd:1")


@pytest.fixture(scope="session")
def z2():
    return make_group("zd:2")


@pytest.fixture(scope="session")
def f2():
    return make_group("free:2")


@pytest.fixture(scope="session")
def heis():
    return make_group("heisenberg")


@pytest.fixture(scope="session")
def lamp():
    return make_group("lamplighter")


@pytest.fixture(scope="session")
def raag_p3():
    return make_group("raag:path:3")


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def sample_elements(group, radius, count, rng):
    """Deterministic sample of elements with word length <= radius."""
    from rdworkbench import enumerate_ball

    ball = enumerate_ball(group, radius)
    picks = rng.integers(0, len(ball), size=count)
    return [ball.elements[int(i)] for i in picks]
