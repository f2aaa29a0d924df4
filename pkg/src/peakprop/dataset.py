"""Dataset loading, validation, min-max normalization, and pairwise distances."""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field

import numpy as np

# A distance matrix is a plain symmetric float array with a zero diagonal.
DistanceMatrix = np.ndarray


class DatasetError(ValueError):
    """Raised for malformed dataset files or invalid dataset contents."""


@dataclass(frozen=True)
class Dataset:
    """A point matrix with optional gold labels.

    points has shape (n, d) with finite float features; gold_labels, when
    present, is an int array of length n with labels interned to 0..c-1.
    """

    points: np.ndarray
    gold_labels: np.ndarray | None = None
    name: str = "dataset"
    normalize_default: bool = field(default=False, compare=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise DatasetError(f"points must be 2-D, got shape {pts.shape}")
        if pts.shape[0] < 2:
            raise DatasetError(f"need at least 2 points, got {pts.shape[0]}")
        if not np.all(np.isfinite(pts)):
            raise DatasetError("points contain non-finite values")
        object.__setattr__(self, "points", pts)
        if self.gold_labels is not None:
            labels = np.asarray(self.gold_labels, dtype=np.int64)
            if labels.shape != (pts.shape[0],):
                raise DatasetError(
                    f"gold_labels length {labels.shape} does not match n={pts.shape[0]}"
                )
            object.__setattr__(self, "gold_labels", labels)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


def intern_labels(raw: list[str]) -> np.ndarray:
    """Map raw label tokens to dense integers 0..c-1 in first-appearance order."""
    mapping: dict[str, int] = {}
    out = np.empty(len(raw), dtype=np.int64)
    for i, tok in enumerate(raw):
        if tok not in mapping:
            mapping[tok] = len(mapping)
        out[i] = mapping[tok]
    return out


def load_csv(
    path,
    has_header: bool = False,
    label_column: int | str | None = None,
    name: str | None = None,
    normalize_default: bool = True,
) -> Dataset:
    """Load a comma-separated dataset, optionally stripping a label column.

    label_column is a 0-based column index or, when has_header is set, a
    header name. Data rows are numbered from 1 in error messages (the header
    line is not counted).
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if has_header:
        if not rows:
            raise DatasetError(f"{path}: empty file")
        header, rows = rows[0], rows[1:]
        if isinstance(label_column, str):
            try:
                label_column = [h.strip() for h in header].index(label_column)
            except ValueError:
                raise DatasetError(
                    f"{path}: label column {label_column!r} not in header"
                ) from None
    elif isinstance(label_column, str):
        raise DatasetError("label column by name requires has_header")

    if len(rows) < 2:
        raise DatasetError(f"{path}: fewer than 2 data rows")

    width = len(rows[0])
    points: list[list[float]] = []
    raw_labels: list[str] = []
    for rownum, row in enumerate(rows, start=1):
        if len(row) != width:
            raise DatasetError(
                f"{path}: malformed row {rownum}: expected {width} cells, got {len(row)}"
            )
        vec = []
        for col, cell in enumerate(row):
            if label_column is not None and col == label_column:
                raw_labels.append(cell.strip())
                continue
            try:
                vec.append(float(cell))
            except ValueError:
                raise DatasetError(
                    f"{path}: non-numeric cell at row {rownum}, column {col}: {cell!r}"
                ) from None
        points.append(vec)

    if label_column is not None and not (0 <= label_column < width):
        raise DatasetError(f"{path}: label column {label_column} out of range")

    labels = intern_labels(raw_labels) if raw_labels else None
    if name is None:
        name = str(path)
    return Dataset(
        points=np.asarray(points, dtype=np.float64),
        gold_labels=labels,
        name=name,
        normalize_default=normalize_default,
    )


def save_csv(ds: Dataset, path) -> None:
    """Write points (and gold labels, if any) back out; inverse of load_csv."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for i in range(ds.n):
            row = [repr(v) for v in ds.points[i]]
            if ds.gold_labels is not None:
                row.append(str(int(ds.gold_labels[i])))
            writer.writerow(row)


def min_max_normalize(ds: Dataset) -> Dataset:
    """Rescale every feature column to [0, 1].

    Constant columns map to all-zeros; a warning is emitted for each rather
    than failing, since real-world tables may carry them.
    """
    lo = ds.points.min(axis=0)
    hi = ds.points.max(axis=0)
    span = hi - lo
    constant = span == 0.0
    for j in np.nonzero(constant)[0]:
        warnings.warn(
            f"{ds.name}: feature column {j} is constant; normalized to zeros",
            stacklevel=2,
        )
    safe_span = np.where(constant, 1.0, span)
    scaled = (ds.points - lo) / safe_span
    scaled[:, constant] = 0.0
    return Dataset(
        points=scaled,
        gold_labels=ds.gold_labels,
        name=ds.name,
        normalize_default=ds.normalize_default,
    )


def pairwise_distances(ds: Dataset) -> DistanceMatrix:
    """Dense symmetric matrix of Euclidean distances with a zero diagonal.

    Computed from coordinate differences (block-wise to bound memory), which
    is exact under IEEE arithmetic: the result matches a naive per-pair
    sqrt-of-squared-differences loop bit for bit and is exactly symmetric.
    """
    pts = ds.points
    n = ds.n
    dm = np.empty((n, n), dtype=np.float64)
    block = max(1, int(8_000_000 / (8 * max(1, n * ds.d))))
    for start in range(0, n, block):
        stop = min(start + block, n)
        diff = pts[start:stop, None, :] - pts[None, :, :]
        dm[start:stop] = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    np.fill_diagonal(dm, 0.0)
    return dm
