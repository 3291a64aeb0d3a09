import random
from fractions import Fraction

import pytest

from sublat.exactlin import ExactMatrix, GaussianRational

DEFAULT_SEED = 20250815


def pytest_addoption(parser):
    parser.addoption(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help="seed for randomized property tests",
    )


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


@pytest.fixture
def random_scalar(rng):
    def make():
        return GaussianRational(
            Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
            Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
        )

    return make


@pytest.fixture
def random_matrix(rng, random_scalar):
    def make(rows, cols):
        return ExactMatrix(
            rows, cols, tuple(random_scalar() for _ in range(rows * cols))
        )

    return make
