import random

import pytest

from toricorb.fileio import load_corpus
from toricorb.lattice import IntMatrix
from toricorb.weighted import WeightedPolytope

CORPUS = load_corpus()


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


def interval(r=1, s=1, length=1):
    return WeightedPolytope.from_data([(1,), (-1,)], [0, -length], [r, s])


def triangle(labels=(1, 1, 1)):
    return WeightedPolytope.from_data([(1, 0), (0, 1), (-1, -1)], [0, 0, -1], labels)


def square(labels=(1, 1, 1, 1)):
    return WeightedPolytope.from_data([(1, 0), (0, 1), (-1, 0), (0, -1)], [0, 0, -1, -1], labels)


def random_unimodular(n, rng: random.Random, steps=6, span=3):
    """Product of random elementary shears: det = +1."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 1:
        return IntMatrix.from_rows(M)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-span, span)
        M[i] = [a + k * b for a, b in zip(M[i], M[j])]
    return IntMatrix.from_rows(M)
