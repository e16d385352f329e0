import random

import pytest

from ghconnect import Parameters


def max_entry_dev(a, b) -> float:
    """Max-norm difference between two matrices given as nested sequences."""
    return max(
        abs(complex(x) - complex(y))
        for ra, rb in zip(a, b)
        for x, y in zip(ra, rb)
    )


@pytest.fixture
def gen1() -> Parameters:
    # hand-picked generic n=1 set, reused across modules
    return Parameters(1, (0.3, 0.7), (1.21,))


@pytest.fixture
def gen2() -> Parameters:
    return Parameters(2, (0.21, 0.43, 0.87), (1.13, 0.59))


@pytest.fixture
def gen2c() -> Parameters:
    # complex perturbation of gen2, still inside every genericity margin
    return Parameters(
        2,
        (0.21 + 0.05j, 0.43 - 0.02j, 0.87 + 0.04j),
        (1.13 - 0.03j, 0.59 + 0.08j),
    )


@pytest.fixture
def gen3() -> Parameters:
    return Parameters(3, (0.17, 0.39, 0.66, 0.91), (1.08, 0.52, 0.81))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
