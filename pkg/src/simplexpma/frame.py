"""Delimited-file ingestion into an immutable variables-by-samples frame.

Data files: first row is a header (corner cell, then sample ids); each
following row is a variable id and one numeric field per sample.
Metadata files: first column is the sample id, remaining columns are
annotations named in the header. Metadata row order is free; annotations
are re-indexed to the data file's sample order, and samples missing from
the metadata get the empty-string sentinel.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DuplicateIdError,
    EmptyInputError,
    ParseError,
    UnknownSampleError,
)

MISSING = ""


@dataclass(frozen=True)
class DataFrame:
    """p variables (rows) by n samples (columns), plus per-sample annotations."""

    variable_ids: tuple[str, ...]
    sample_ids: tuple[str, ...]
    values: np.ndarray
    annotations: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise ValueError("values must be a 2-D matrix")
        p, n = values.shape
        if len(self.variable_ids) != p or len(self.sample_ids) != n:
            raise ValueError("id lists do not match matrix shape")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        if len(set(self.sample_ids)) != n:
            raise DuplicateIdError("duplicate sample ids")
        if len(set(self.variable_ids)) != p:
            raise DuplicateIdError("duplicate variable ids")
        for name, column in self.annotations.items():
            if len(column) != n:
                raise ValueError(f"annotation {name!r} has {len(column)} entries, expected {n}")
        values = values.copy()
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def p(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[1]

    def annotation(self, name: str) -> tuple[str, ...]:
        from .errors import UnknownAnnotationError

        try:
            return self.annotations[name]
        except KeyError:
            raise UnknownAnnotationError(f"unknown annotation {name!r}") from None

    def with_annotations(self, annotations: dict[str, tuple[str, ...]]) -> "DataFrame":
        return DataFrame(self.variable_ids, self.sample_ids, self.values, annotations)


def detect_delimiter(text: str) -> str:
    """Tab if the first line contains one, else comma."""
    first_line = text.split("\n", 1)[0]
    return "\t" if "\t" in first_line else ","


def _split_rows(text: str, delimiter: str) -> list[list[str]]:
    normalized = text.replace("\r\n", "\n").replace("\r", "\n")
    return [line.split(delimiter) for line in normalized.split("\n") if line != ""]


def _parse_number(cell: str, row: int, column: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(
            f"non-numeric cell {cell!r} at row {row}, column {column}", row=row, column=column
        ) from None
    if not np.isfinite(value):
        raise ParseError(
            f"non-finite value {cell!r} at row {row}, column {column}", row=row, column=column
        )
    return value


def parse_data(text: str, delimiter: str | None = None) -> DataFrame:
    """Parse a delimited data file into a DataFrame without annotations."""
    if delimiter is None:
        delimiter = detect_delimiter(text)
    rows = _split_rows(text, delimiter)
    if not rows:
        raise EmptyInputError("empty input")
    header = rows[0]
    n = len(header) - 1
    if n < 1 or len(rows) < 2:
        raise EmptyInputError("data matrix must have at least one sample and one variable")
    sample_ids = tuple(header[1:])
    variable_ids = []
    values = np.empty((len(rows) - 1, n))
    for i, row in enumerate(rows[1:], start=1):
        if len(row) != n + 1:
            raise ParseError(
                f"row {i} has {len(row) - 1} fields, expected {n}", row=i
            )
        variable_ids.append(row[0])
        for j, cell in enumerate(row[1:], start=1):
            values[i - 1, j - 1] = _parse_number(cell, i, j)
    return DataFrame(tuple(variable_ids), sample_ids, values)


def parse_annotations(text: str, frame: DataFrame, delimiter: str | None = None) -> DataFrame:
    """Parse a metadata file and attach its annotations to the frame.

    Metadata sample order is free; output is aligned to frame.sample_ids.
    """
    if delimiter is None:
        delimiter = detect_delimiter(text)
    rows = _split_rows(text, delimiter)
    if not rows:
        raise EmptyInputError("empty metadata")
    names = rows[0][1:]
    if len(set(names)) != len(names):
        raise DuplicateIdError("duplicate annotation name in metadata header")
    index = {sid: k for k, sid in enumerate(frame.sample_ids)}
    columns = {name: [MISSING] * frame.n for name in names}
    seen: set[str] = set()
    for i, row in enumerate(rows[1:], start=1):
        if len(row) != len(names) + 1:
            raise ParseError(
                f"metadata row {i} has {len(row) - 1} fields, expected {len(names)}", row=i
            )
        sid = row[0]
        if sid not in index:
            raise UnknownSampleError(f"metadata sample {sid!r} not present in data")
        if sid in seen:
            raise DuplicateIdError(f"duplicate metadata row for sample {sid!r}")
        seen.add(sid)
        for name, cell in zip(names, row[1:]):
            columns[name][index[sid]] = cell
    return frame.with_annotations({name: tuple(col) for name, col in columns.items()})


def serialize_data(frame: DataFrame, delimiter: str = "\t") -> str:
    """Inverse of parse_data: round-trips values via repr (shortest exact form)."""
    lines = ["id" + delimiter + delimiter.join(frame.sample_ids)]
    for i, vid in enumerate(frame.variable_ids):
        cells = (repr(float(v)) for v in frame.values[i])
        lines.append(vid + delimiter + delimiter.join(cells))
    return "\n".join(lines) + "\n"
