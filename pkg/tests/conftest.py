import random

import pytest

from simflat.exact import identity, matrix
from simflat.families import cyclic_group


def random_unimodular(rng: random.Random, m: int, steps: int = 8):
    """Product of random elementary row operations."""
    U = identity(m)
    for _ in range(steps):
        i, j = rng.sample(range(m), 2)
        E = [[1 if a == b else 0 for b in range(m)] for a in range(m)]
        E[i][j] = rng.choice([-2, -1, 1, 2])
        U = U * matrix(E)
    return U


def random_gram(rng: random.Random, m: int, max_det: int):
    """B B^T for a random integer B with 0 < det(B B^T) <= max_det."""
    while True:
        B = matrix([[rng.randint(-2, 2) for _ in range(m)] for _ in range(m)])
        G = B * B.transpose()
        d = G.det()
        if 0 < d <= max_det:
            return G


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def c4():
    return cyclic_group(4)


@pytest.fixture
def c6():
    return cyclic_group(6)


@pytest.fixture
def J():
    return matrix([[0, 1], [-1, 0]])


@pytest.fixture
def A2():
    return matrix([[2, 1], [1, 2]])


@pytest.fixture
def D4():
    return matrix([[2, 1, 1, 1], [1, 2, 0, 0], [1, 0, 2, 0], [1, 0, 0, 2]])
