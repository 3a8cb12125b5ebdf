import random

import pytest

from holodec import TransformationSemigroup, decompose

# the three desk instances used throughout: a swap plus a collapse on 3
# points, a 6-point semigroup with two interacting 3-cycles, and the full
# transformation monoid on 3 points
SWAP_COLLAPSE_ROWS = [[2, 1, 3], [1, 2, 2]]
SIX_POINT_ROWS = [
    [1, 2, 3, 1, 1, 1],
    [4, 4, 4, 5, 4, 6],
    [4, 4, 4, 5, 6, 4],
    [4, 4, 4, 4, 5, 5],
    [4, 4, 4, 1, 2, 3],
    [2, 3, 1, 4, 4, 4],
]
T3_ROWS = [[2, 1, 3], [2, 3, 1], [1, 2, 1]]

CORPUS_SEED = 20240801
CORPUS_SIZE = 20


def random_semigroup_rows(count=CORPUS_SIZE, seed=CORPUS_SEED):
    """Deterministic corpus: degree 2..6, at most 4 generators."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, 6)
        k = rng.randint(1, 4)
        out.append((n, [[rng.randint(1, n) for _ in range(n)] for _ in range(k)]))
    return out


@pytest.fixture(scope="session")
def swap_collapse():
    return decompose(TransformationSemigroup.from_one_based(SWAP_COLLAPSE_ROWS))


@pytest.fixture(scope="session")
def six_point():
    return decompose(TransformationSemigroup.from_one_based(SIX_POINT_ROWS))


@pytest.fixture(scope="session")
def full_t3():
    return decompose(TransformationSemigroup.from_one_based(T3_ROWS))


@pytest.fixture(scope="session")
def corpus_systems():
    systems = []
    for n, rows in random_semigroup_rows():
        systems.append(decompose(TransformationSemigroup.from_one_based(rows)))
    return systems
