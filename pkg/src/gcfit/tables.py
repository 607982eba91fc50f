"""Exact discrete probability tables over named categorical variables.

Tables are stored densely, shaped by the schema's cardinalities, in
row-major (C) order of the schema.  All objects here are immutable after
construction; every operation returns a new object.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptyDataset,
    GcfitError,
    ParseError,
    SchemaMismatch,
    UnknownVariable,
    InvalidState,
    ZeroProbabilityEvidence,
)

NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class VariableSchema:
    """Ordered list of named categorical variables.

    Variable ``name`` with cardinality ``c`` takes states ``0..c-1``.
    The ordering is part of the schema: it fixes cell iteration order,
    array axis order and serialization order everywhere.
    """

    names: tuple[str, ...]
    cardinalities: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "cardinalities", tuple(int(c) for c in self.cardinalities))
        if len(self.names) != len(self.cardinalities):
            raise GcfitError("names and cardinalities must have equal length")
        if len(set(self.names)) != len(self.names):
            raise GcfitError("variable names must be unique")
        if any(c < 2 for c in self.cardinalities):
            raise GcfitError("every cardinality must be >= 2")

    @property
    def shape(self) -> tuple[int, ...]:
        return self.cardinalities

    @property
    def n_cells(self) -> int:
        return int(np.prod(self.cardinalities))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def cardinality(self, name: str) -> int:
        return self.cardinalities[self.index(name)]

    def subset(self, keep) -> "VariableSchema":
        """Schema restricted to ``keep``, preserving this schema's order."""
        keep = set(keep)
        for name in keep:
            self.index(name)
        names = tuple(n for n in self.names if n in keep)
        cards = tuple(c for n, c in zip(self.names, self.cardinalities) if n in keep)
        return VariableSchema(names, cards)

    def cells(self):
        """Iterate all joint states in row-major order."""
        return itertools.product(*(range(c) for c in self.cardinalities))


@dataclass(frozen=True)
class ProbTable:
    """Normalized joint distribution over a schema's variables."""

    schema: VariableSchema
    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.probs, dtype=float).reshape(self.schema.shape).copy()
        if np.any(arr < 0):
            raise GcfitError("probabilities must be nonnegative")
        if abs(arr.sum() - 1.0) > NORMALIZATION_TOL:
            raise GcfitError(f"probabilities sum to {arr.sum()!r}, not 1")
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    @classmethod
    def from_weights(cls, schema: VariableSchema, weights) -> "ProbTable":
        arr = np.asarray(weights, dtype=float).reshape(schema.shape)
        total = arr.sum()
        if total <= 0:
            raise GcfitError("weights must have positive total")
        return cls(schema, arr / total)

    def cell(self, assignment) -> float:
        return float(self.probs[tuple(assignment)])

    def flat(self) -> np.ndarray:
        """Row-major flattened view of the table."""
        return self.probs.reshape(-1)

    def marginalize(self, keep) -> "ProbTable":
        """Sum out every variable not in ``keep``."""
        keep = set(keep)
        if not keep:
            raise GcfitError("keep set must be nonempty")
        sub = self.schema.subset(keep)
        drop_axes = tuple(i for i, n in enumerate(self.schema.names) if n not in keep)
        arr = self.probs.sum(axis=drop_axes) if drop_axes else self.probs
        return ProbTable(sub, arr)

    def condition(self, variable: str, value: int) -> "ProbTable":
        """Distribution of the remaining variables given ``variable=value``."""
        axis = self.schema.index(variable)
        card = self.schema.cardinalities[axis]
        if not 0 <= value < card:
            raise InvalidState(f"state {value} out of range for {variable!r}")
        if len(self.schema.names) < 2:
            raise GcfitError("cannot condition away the only variable")
        slice_ = np.take(self.probs, value, axis=axis)
        total = slice_.sum()
        if total <= 0:
            raise ZeroProbabilityEvidence(variable, value)
        rest = self.schema.subset(set(self.schema.names) - {variable})
        return ProbTable(rest, slice_ / total)


@dataclass(frozen=True)
class Dataset:
    """Complete-case dataset: one integer state per variable per row."""

    schema: VariableSchema
    rows: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.rows, dtype=np.int64).reshape(-1, len(self.schema.names)).copy()
        for j, (name, card) in enumerate(zip(self.schema.names, self.schema.cardinalities)):
            col = arr[:, j]
            if arr.shape[0] and (col.min() < 0 or col.max() >= card):
                raise InvalidState(f"column {name!r} has values outside 0..{card - 1}")
        arr.setflags(write=False)
        object.__setattr__(self, "rows", arr)

    def __len__(self) -> int:
        return self.rows.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.schema.index(name)]

    def select(self, keep) -> "Dataset":
        """Dataset restricted to the ``keep`` columns, preserving order."""
        sub = self.schema.subset(keep)
        idx = [self.schema.index(n) for n in sub.names]
        return Dataset(sub, self.rows[:, idx])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.schema.names)
        for row in self.rows:
            writer.writerow([int(v) for v in row])
        return buf.getvalue()

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())

    @classmethod
    def from_csv(cls, text: str, schema: VariableSchema, path=None) -> "Dataset":
        """Strict CSV parse: header must equal the schema names, cells must be
        in-range integers.  Errors report line and column numbers (1-based)."""
        reader = csv.reader(io.StringIO(text))
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file", path=path, line=1) from None
        if tuple(header) != schema.names:
            raise ParseError(
                f"header {header!r} does not match schema {list(schema.names)!r}",
                path=path,
                line=1,
            )
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(schema.names):
                raise ParseError(
                    f"expected {len(schema.names)} fields, got {len(row)}",
                    path=path,
                    line=line_no,
                )
            parsed = []
            for col_no, (cell, card) in enumerate(zip(row, schema.cardinalities), start=1):
                try:
                    value = int(cell)
                except ValueError:
                    raise ParseError(
                        f"non-integer cell {cell!r}", path=path, line=line_no, column=col_no
                    ) from None
                if not 0 <= value < card:
                    raise ParseError(
                        f"state {value} out of range 0..{card - 1}",
                        path=path,
                        line=line_no,
                        column=col_no,
                    )
                parsed.append(value)
            rows.append(parsed)
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), len(schema.names))
        return cls(schema, arr)

    @classmethod
    def read_csv(cls, path, schema: VariableSchema) -> "Dataset":
        with open(path, "r", newline="") as fh:
            return cls.from_csv(fh.read(), schema, path=path)


def empirical_from_dataset(data: Dataset, smoothing: float = 0.0) -> ProbTable:
    """Plug-in (optionally Laplace-smoothed) joint distribution of a dataset.

    cell(x) = (count(x) + smoothing) / (N + smoothing * n_cells)
    """
    if smoothing < 0:
        raise GcfitError("smoothing must be nonnegative")
    if len(data) == 0 and smoothing == 0:
        raise EmptyDataset("cannot estimate from an empty dataset without smoothing")
    schema = data.schema
    flat_idx = np.ravel_multi_index(data.rows.T, schema.shape) if len(data) else np.empty(0, int)
    counts = np.bincount(flat_idx, minlength=schema.n_cells).astype(float)
    counts += smoothing
    return ProbTable(schema, (counts / counts.sum()).reshape(schema.shape))
