"""CSV readers for prediction data, in three file shapes.

Label files:       ``actual,predicted`` rows, optional header.
Probability files: header ``actual,<class1>,...,<classK>``, then one row per
                   unit with its actual label and K probabilities.
Matrix files:      header ``,<class1>,...,<classK>``, then row i as
                   ``<classi>,n_i1,...,n_iK`` with rows = actual classes.
                   Row names must repeat the header names in the same order,
                   which catches silently transposed matrices.

All readers are single-pass streams over UTF-8 text (LF or CRLF), and every
error carries the 1-based line number it was raised on.
"""

from __future__ import annotations

import csv
import math
from typing import Iterator

from .confusion import ClassRegistry, ConfusionMatrix
from .proba import PROB_SUM_TOLERANCE, ProbRecord


class IngestError(Exception):
    """Base class for file ingestion failures, tagged with a 1-based line number."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ParseError(IngestError):
    """A row or field could not be parsed."""


class EmptyLabelError(IngestError):
    """A label field is the empty string."""


class ProbSumOutOfToleranceError(IngestError):
    """A probability row does not sum to 1 within tolerance."""

    def __init__(self, message: str, line: int | None = None, total: float | None = None):
        super().__init__(message, line=line)
        self.total = total


class UnknownActualLabelError(IngestError):
    """An actual label is not among the header classes."""


class NonSquareError(IngestError):
    """A matrix file does not describe a K x K grid."""


class NegativeEntryError(IngestError):
    """A matrix file holds a negative count."""


class NameMismatchError(IngestError):
    """Matrix row names do not match the header class names in order."""


def _open_rows(path: str, delimiter: str) -> Iterator[tuple[int, list[str]]]:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle, delimiter=delimiter)
        for row in reader:
            if not row:
                continue
            yield reader.line_num, row


def stream_labels(
    path: str, *, delimiter: str = ",", has_header: bool = False
) -> Iterator[tuple[str, str]]:
    """Yield (actual, predicted) label pairs from a two-column file, lazily."""
    rows = _open_rows(path, delimiter)
    if has_header:
        next(rows, None)
    for line, row in rows:
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", line=line)
        actual, predicted = row
        if actual == "":
            raise EmptyLabelError("empty actual label", line=line, column=1)
        if predicted == "":
            raise EmptyLabelError("empty predicted label", line=line, column=2)
        yield actual, predicted


def read_labels(
    path: str, *, delimiter: str = ",", has_header: bool = False
) -> list[tuple[str, str]]:
    """Read a label file into a list of (actual, predicted) pairs, in file order."""
    return list(stream_labels(path, delimiter=delimiter, has_header=has_header))


def _read_prob_header(rows: Iterator[tuple[int, list[str]]]) -> ClassRegistry:
    try:
        line, header = next(rows)
    except StopIteration:
        raise ParseError("missing header row", line=1) from None
    if len(header) < 3:
        raise ParseError(
            f"header needs an actual column plus at least 2 class columns, got {len(header)} fields",
            line=line,
        )
    names = header[1:]
    for pos, name in enumerate(names, start=2):
        if name == "":
            raise ParseError("empty class name in header", line=line, column=pos)
    if len(set(names)) != len(names):
        raise ParseError("duplicate class columns in header", line=line)
    return ClassRegistry(tuple(names))


def stream_probs(
    path: str, *, delimiter: str = ","
) -> tuple[ClassRegistry, Iterator[ProbRecord]]:
    """Open a probability file: the header registry plus a lazy record stream.

    The stream holds one record at a time, so reductions that do not need the
    whole dataset (cross-entropy) run in constant memory.
    """
    rows = _open_rows(path, delimiter)
    registry = _read_prob_header(rows)

    def records() -> Iterator[ProbRecord]:
        k = registry.k
        for line, row in rows:
            if len(row) != k + 1:
                raise ParseError(f"expected {k + 1} fields, got {len(row)}", line=line)
            actual = row[0]
            if actual not in registry:
                raise UnknownActualLabelError(
                    f"actual label {actual!r} is not a header class", line=line
                )
            probs = []
            for pos, text in enumerate(row[1:], start=2):
                try:
                    value = float(text)
                except ValueError:
                    raise ParseError(f"bad probability {text!r}", line=line, column=pos) from None
                if math.isnan(value) or value < 0.0 or value > 1.0:
                    raise ParseError(
                        f"probability {value!r} outside [0, 1]", line=line, column=pos
                    )
                probs.append(value)
            total = math.fsum(probs)
            if abs(total - 1.0) > PROB_SUM_TOLERANCE:
                raise ProbSumOutOfToleranceError(
                    f"probabilities sum to {total!r}", line=line, total=total
                )
            yield ProbRecord(true_class=registry.index(actual), probs=tuple(probs))

    return registry, records()


def read_probs(path: str, *, delimiter: str = ",") -> tuple[ClassRegistry, list[ProbRecord]]:
    """Read a probability file eagerly: (registry, records)."""
    registry, records = stream_probs(path, delimiter=delimiter)
    return registry, list(records)


def read_matrix(path: str, *, delimiter: str = ",") -> ConfusionMatrix:
    """Read a pre-tallied confusion matrix file.

    The grid must be square, non-negative integers, with the leading column
    of row names matching the header class names in the same order.
    """
    rows = _open_rows(path, delimiter)
    try:
        header_line, header = next(rows)
    except StopIteration:
        raise ParseError("missing header row", line=1) from None
    names = header[1:]
    if len(names) < 2:
        raise NonSquareError(
            f"header needs at least 2 class columns, got {len(names)}", line=header_line
        )
    if len(set(names)) != len(names):
        raise ParseError("duplicate class columns in header", line=header_line)
    registry = ClassRegistry(tuple(names))

    grid: list[tuple[int, ...]] = []
    last_line = header_line
    for line, row in rows:
        last_line = line
        i = len(grid)
        if i >= registry.k:
            raise NonSquareError(
                f"expected {registry.k} data rows, found more", line=line
            )
        if len(row) != registry.k + 1:
            raise NonSquareError(
                f"expected {registry.k + 1} fields, got {len(row)}", line=line
            )
        if row[0] != names[i]:
            raise NameMismatchError(
                f"row name {row[0]!r} does not match header class {names[i]!r}", line=line
            )
        entries = []
        for pos, text in enumerate(row[1:], start=2):
            try:
                value = int(text)
            except ValueError:
                raise ParseError(f"bad count {text!r}", line=line, column=pos) from None
            if value < 0:
                raise NegativeEntryError(f"negative count {value}", line=line, column=pos)
            entries.append(value)
        grid.append(tuple(entries))
    if len(grid) != registry.k:
        raise NonSquareError(
            f"expected {registry.k} data rows, got {len(grid)}", line=last_line
        )
    return ConfusionMatrix(registry, tuple(grid))


def tally_labels(
    path: str, *, delimiter: str = ",", has_header: bool = False
) -> ConfusionMatrix:
    """Stream a label file straight into a confusion matrix.

    Memory stays bounded by the K x K tally regardless of file length.
    """
    from .confusion import from_pairs

    return from_pairs(stream_labels(path, delimiter=delimiter, has_header=has_header))


def read_weights(path: str, *, delimiter: str = ",") -> list[tuple[str, float]]:
    """Read class,weight rows, in file order. Duplicate classes are rejected."""
    out: list[tuple[str, float]] = []
    seen: set[str] = set()
    for line, row in _open_rows(path, delimiter):
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", line=line)
        label, text = row
        if label == "":
            raise EmptyLabelError("empty class name", line=line, column=1)
        if label in seen:
            raise ParseError(f"duplicate weight for class {label!r}", line=line)
        seen.add(label)
        try:
            value = float(text)
        except ValueError:
            raise ParseError(f"bad weight {text!r}", line=line, column=2) from None
        out.append((label, value))
    return out
