import random

import pytest

from gridlink import corpus
from gridlink.grid import GridDiagram


def random_grid(n: int, rng: random.Random) -> GridDiagram:
    """A uniformly random valid n x n grid."""
    while True:
        xs = list(range(n))
        os = list(range(n))
        rng.shuffle(xs)
        rng.shuffle(os)
        if all(a != b for a, b in zip(xs, os)):
            return GridDiagram(tuple(xs), tuple(os))


@pytest.fixture
def unknot():
    return corpus.get("unknot2")


@pytest.fixture
def trefoil():
    return corpus.get("trefoil")


@pytest.fixture
def hopf():
    return corpus.get("hopf")


@pytest.fixture(params=corpus.NAMES)
def corpus_grid(request):
    return request.param, corpus.get(request.param)
