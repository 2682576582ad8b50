"""Dataset ingestion and synthetic instance generation."""

from __future__ import annotations

import csv
import logging
import math
from pathlib import Path

import numpy as np
from pydantic import StrictFloat, StrictInt, TypeAdapter, ValidationError

from hckm.config import GeneratorSpec
from hckm.errors import DatasetError
from hckm.types import DatasetFormat, FloatArray

logger = logging.getLogger(__name__)

# numbers only: quoted coordinates and booleans are rejected
_JSON_POINTS = TypeAdapter(list[list[StrictFloat | StrictInt]])


def _check_row(values: list[float], width: int | None, line: int) -> int:
    if not values:
        raise DatasetError("empty row", line)
    if width is not None and len(values) != width:
        raise DatasetError("ragged row", line)
    if not all(math.isfinite(v) for v in values):
        raise DatasetError("non-finite coordinate", line)
    return len(values)


def _parse_csv(text: str) -> FloatArray:
    rows: list[list[float]] = []
    width: int | None = None
    for line, record in enumerate(csv.reader(text.splitlines()), start=1):
        if not record or all(not field.strip() for field in record):
            continue
        try:
            values = [float(field) for field in record]
        except ValueError:
            raise DatasetError("unparseable number", line) from None
        width = _check_row(values, width, line)
        rows.append(values)
    if not rows:
        raise DatasetError("empty dataset")
    return np.asarray(rows, dtype=np.float64)


def _parse_json(text: str) -> FloatArray:
    try:
        rows = _JSON_POINTS.validate_json(text)
    except ValidationError as exc:
        raise DatasetError(f"malformed JSON points: {exc.errors()[0]['msg']}") from None
    if not rows:
        raise DatasetError("empty dataset")
    width: int | None = None
    for line, values in enumerate(rows, start=1):
        # JSON rows are numbered by position in the array
        width = _check_row(values, width, line)
    return np.asarray(rows, dtype=np.float64)


def parse_points(text: str, fmt: DatasetFormat = DatasetFormat.CSV) -> FloatArray:
    return _parse_json(text) if fmt is DatasetFormat.JSON else _parse_csv(text)


def load_dataset(path: str | Path, fmt: DatasetFormat | None = None) -> FloatArray:
    """Read an (n, d) point set from CSV (one point per line) or JSON (array of arrays)."""
    file = Path(path)
    if fmt is None:
        fmt = DatasetFormat.JSON if file.suffix.lower() == ".json" else DatasetFormat.CSV
    try:
        text = file.read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"cannot read {file}: {exc.strerror}") from None
    points = parse_points(text, fmt)
    logger.info("loaded %d points in R^%d from %s", points.shape[0], points.shape[1], file)
    return points


def _grid_offsets(count: int, dim: int) -> FloatArray:
    """Row-major square grid positions in the first two axes."""
    side = max(1, math.ceil(math.sqrt(count)))
    offsets = np.zeros((count, dim), dtype=np.float64)
    for i in range(count):
        offsets[i, 0] = i % side
        if dim > 1:
            offsets[i, 1] = i // side
    return offsets


def generate_instance(spec: GeneratorSpec) -> FloatArray:
    """Gaussian blobs on a grid with spacing ``spread``, or uniform points in a box."""
    rng = np.random.default_rng(spec.seed)
    if spec.kind == "uniform":
        return rng.uniform(0.0, spec.spread, size=(spec.n, spec.dim))
    centers = _grid_offsets(spec.count, spec.dim) * spec.spread
    noise = rng.normal(0.0, 1.0, size=(spec.count * spec.per_blob, spec.dim)) * spec.sigma
    return np.repeat(centers, spec.per_blob, axis=0) + noise
