import random

import pytest

from clfmetrics import ClassRegistry, ConfusionMatrix

# Canonical four-class example: diagonal (6, 9, 10, 12), row totals
# (9, 14, 13, 16), 52 units in total. The off-diagonal spread is one fixed
# completion; tests only assert values that depend on the diagonal and the
# marginals.
FOUR_CLASS_GRID = (
    (6, 1, 1, 1),
    (2, 9, 2, 1),
    (1, 1, 10, 1),
    (2, 1, 1, 12),
)

# Binary worked example: 20 true positives, 5 false negatives, 10 false
# positives, completed with 17 true negatives.
BINARY_GRID = ((20, 5), (10, 17))


@pytest.fixture
def four_class_matrix() -> ConfusionMatrix:
    return ConfusionMatrix.from_grid(("a", "b", "c", "d"), FOUR_CLASS_GRID)


@pytest.fixture
def binary_matrix() -> ConfusionMatrix:
    return ConfusionMatrix.from_grid(("pos", "neg"), BINARY_GRID)


@pytest.fixture
def zero_matrix() -> ConfusionMatrix:
    return ConfusionMatrix.zeros(ClassRegistry(("a", "b")))


def random_matrix(rng: random.Random, k: int, max_entry: int = 9) -> ConfusionMatrix:
    """A random K x K matrix with at least one unit."""
    labels = tuple(f"c{i}" for i in range(k))
    while True:
        grid = tuple(
            tuple(rng.randint(0, max_entry) for _ in range(k)) for _ in range(k)
        )
        if any(any(row) for row in grid):
            return ConfusionMatrix.from_grid(labels, grid)


def all_2x2_grids(max_entry: int = 6):
    """Every 2 x 2 matrix with entries in 0..max_entry, zero matrix included."""
    values = range(max_entry + 1)
    for a in values:
        for b in values:
            for c in values:
                for d in values:
                    yield ConfusionMatrix.from_grid(("x", "y"), ((a, b), (c, d)))
