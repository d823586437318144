"""Confusion-matrix data model: construction, marginals, one-vs-rest tiles, merging.

Orientation is fixed throughout the package: rows are the actual (true)
classes, columns are the predicted classes. Counts are plain Python ints,
so tallies and every marginal stay exact no matter how large they grow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class UnknownLabelError(ValueError):
    """A label does not belong to the class registry in use."""


class EmptyInputError(ValueError):
    """No pairs were supplied and no registry was given, so the class set cannot be inferred."""


class ClassOutOfRangeError(IndexError):
    """A class index is outside 0..K-1."""


class RegistryMismatchError(ValueError):
    """Two matrices do not share an identical class registry."""


@dataclass(frozen=True)
class ClassRegistry:
    """Ordered set of distinct class names. Index order is stable for the registry's lifetime."""

    labels: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"class labels must be unique, got {self.labels!r}")
        if len(self.labels) < 2:
            raise ValueError(f"at least 2 classes are required, got {len(self.labels)}")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    @property
    def k(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(f"label {label!r} is not in the registry {self.labels!r}") from None

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class OneVsRest:
    """TP/FP/FN/TN tiling of a matrix for one reference class.

    tp is the diagonal cell of the reference class, fp the rest of its
    column, fn the rest of its row, tn everything else; the four tiles
    always partition the full matrix.
    """

    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class ConfusionMatrix:
    """K x K cross-table of (actual, predicted) counts with its class registry.

    Immutable after construction and safe to share across threads. Marginal
    totals are precomputed once.
    """

    registry: ClassRegistry
    counts: tuple[tuple[int, ...], ...]
    row_totals: tuple[int, ...] = field(init=False, compare=False)
    col_totals: tuple[int, ...] = field(init=False, compare=False)
    grand_total: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        k = self.registry.k
        grid = tuple(tuple(row) for row in self.counts)
        if len(grid) != k or any(len(row) != k for row in grid):
            raise ValueError(f"counts must be a {k}x{k} grid to match the registry")
        for row in grid:
            for cell in row:
                if not isinstance(cell, int) or isinstance(cell, bool):
                    raise ValueError(f"counts must be integers, got {cell!r}")
                if cell < 0:
                    raise ValueError(f"counts must be non-negative, got {cell}")
        object.__setattr__(self, "counts", grid)
        object.__setattr__(self, "row_totals", tuple(sum(row) for row in grid))
        object.__setattr__(self, "col_totals", tuple(sum(col) for col in zip(*grid)))
        object.__setattr__(self, "grand_total", sum(self.row_totals))

    @classmethod
    def zeros(cls, registry: ClassRegistry) -> "ConfusionMatrix":
        k = registry.k
        return cls(registry, tuple((0,) * k for _ in range(k)))

    @classmethod
    def from_grid(cls, labels: Sequence[str], grid: Sequence[Sequence[int]]) -> "ConfusionMatrix":
        return cls(ClassRegistry(tuple(labels)), tuple(tuple(row) for row in grid))

    @property
    def k(self) -> int:
        return self.registry.k

    @property
    def trace(self) -> int:
        return sum(self.counts[i][i] for i in range(self.k))

    def row_total(self, i: int) -> int:
        self._check_index(i)
        return self.row_totals[i]

    def col_total(self, j: int) -> int:
        self._check_index(j)
        return self.col_totals[j]

    def one_vs_rest(self, k: int) -> OneVsRest:
        """Collapse the matrix to the four tiles seen from reference class k."""
        self._check_index(k)
        tp = self.counts[k][k]
        fp = self.col_totals[k] - tp
        fn = self.row_totals[k] - tp
        tn = self.grand_total - tp - fp - fn
        return OneVsRest(tp=tp, fp=fp, fn=fn, tn=tn)

    def permuted(self, order: Sequence[int]) -> "ConfusionMatrix":
        """Relabel classes: apply the same index permutation to rows and columns."""
        if sorted(order) != list(range(self.k)):
            raise ValueError(f"order must be a permutation of 0..{self.k - 1}")
        labels = tuple(self.registry.labels[i] for i in order)
        grid = tuple(tuple(self.counts[i][j] for j in order) for i in order)
        return ConfusionMatrix(ClassRegistry(labels), grid)

    def scaled(self, factor: int) -> "ConfusionMatrix":
        """Multiply every cell by a positive integer factor."""
        if not isinstance(factor, int) or factor < 1:
            raise ValueError(f"factor must be a positive integer, got {factor!r}")
        grid = tuple(tuple(cell * factor for cell in row) for row in self.counts)
        return ConfusionMatrix(self.registry, grid)

    def merge(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        return merge(self, other)

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        return merge(self, other)

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.k:
            raise ClassOutOfRangeError(f"class index {i} out of range for K={self.k}")


def from_pairs(
    pairs: Iterable[tuple[str, str]],
    registry: ClassRegistry | None = None,
) -> ConfusionMatrix:
    """Tally (actual, predicted) label pairs into a confusion matrix.

    The pairs may be any iterable, including a lazy stream: tallying is
    single-pass and keeps at most K*K counters in memory. When no registry
    is supplied, the class set is inferred as the lexicographically sorted
    union of all labels seen, which keeps output deterministic across runs.

    Raises UnknownLabelError if a pair holds a label outside a supplied
    registry, and EmptyInputError if there are no pairs and no registry.
    """
    tally: dict[tuple[str, str], int] = {}
    seen: set[str] = set()
    if registry is None:
        for actual, predicted in pairs:
            seen.add(actual)
            seen.add(predicted)
            key = (actual, predicted)
            tally[key] = tally.get(key, 0) + 1
        if not tally:
            raise EmptyInputError("empty input: no label pairs and no registry to infer classes from")
        registry = ClassRegistry(tuple(sorted(seen)))
    else:
        for actual, predicted in pairs:
            registry.index(actual)
            registry.index(predicted)
            key = (actual, predicted)
            tally[key] = tally.get(key, 0) + 1

    k = registry.k
    grid = [[0] * k for _ in range(k)]
    for (actual, predicted), n in tally.items():
        grid[registry.index(actual)][registry.index(predicted)] = n
    return ConfusionMatrix(registry, tuple(tuple(row) for row in grid))


def one_vs_rest(m: ConfusionMatrix, k: int) -> OneVsRest:
    """TP/FP/FN/TN tiles of matrix m for reference class index k."""
    return m.one_vs_rest(k)


def merge(a: ConfusionMatrix, b: ConfusionMatrix) -> ConfusionMatrix:
    """Elementwise sum of two matrices sharing an identical registry.

    Associative and commutative, with the zero matrix as identity; this is
    the combine step for parallel or chunked ingestion.
    """
    if a.registry != b.registry:
        raise RegistryMismatchError(
            f"registries differ: {a.registry.labels!r} vs {b.registry.labels!r}"
        )
    grid = tuple(
        tuple(x + y for x, y in zip(row_a, row_b))
        for row_a, row_b in zip(a.counts, b.counts)
    )
    return ConfusionMatrix(a.registry, grid)
