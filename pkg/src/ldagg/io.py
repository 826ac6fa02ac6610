"""CSV ingestion for aggregation inputs.

Format: UTF-8, header ``id,value,weight,price``; ``weight`` and ``price`` may
be omitted as columns or left empty, but a column must be either filled on
every row or empty on every row.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Tuple, Union

import numpy as np

from .errors import DomainError, ParseError

COLUMNS = ("id", "value", "weight", "price")


@dataclass(frozen=True)
class Row:
    id: str
    value: float
    weight: Optional[float] = None
    price: Optional[float] = None


@dataclass(frozen=True)
class DataTable:
    rows: Tuple[Row, ...]

    def __post_init__(self):
        if not self.rows:
            raise ParseError("table has no data rows")
        object.__setattr__(self, "rows", tuple(self.rows))
        for col in ("weight", "price"):
            present = [getattr(r, col) is not None for r in self.rows]
            if any(present) and not all(present):
                raise ParseError(f"column {col!r} is filled on some rows only")
        for r in self.rows:
            for col in ("value", "weight", "price"):
                v = getattr(r, col)
                if v is not None and not (v > 0 and math.isfinite(v)):
                    raise DomainError(f"row {r.id!r}: {col} must be positive, got {v!r}")

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def ids(self) -> list:
        return [r.id for r in self.rows]

    @property
    def values(self) -> np.ndarray:
        return np.array([r.value for r in self.rows])

    @property
    def weights(self) -> np.ndarray:
        """Explicit weights, or ``1/m`` each when the column is empty."""
        if self.rows[0].weight is None:
            return np.full(len(self), 1.0 / len(self))
        return np.array([r.weight for r in self.rows])

    @property
    def has_weights(self) -> bool:
        return self.rows[0].weight is not None

    @property
    def prices(self) -> Optional[np.ndarray]:
        if self.rows[0].price is None:
            return None
        return np.array([r.price for r in self.rows])


def _number(text: str, row_id: str, col: str, line: int) -> Optional[float]:
    text = (text or "").strip()
    if not text:
        return None
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"line {line} (row {row_id!r}): {col} {text!r} is not a number") from None


def parse_table(text: str) -> DataTable:
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip().lower() for h in next(reader)]
    except StopIteration:
        raise ParseError("empty input") from None
    if header[:2] != ["id", "value"] or any(h not in COLUMNS for h in header) or len(set(header)) != len(header):
        raise ParseError(f"bad header {header!r}; expected a subset of {','.join(COLUMNS)} starting with id,value")
    rows = []
    for line, fields in enumerate(reader, start=2):
        if not fields or all(not f.strip() for f in fields):
            continue
        if len(fields) != len(header):
            raise ParseError(f"line {line}: expected {len(header)} fields, got {len(fields)}")
        rec = dict(zip(header, fields))
        row_id = rec["id"].strip()
        if not row_id:
            raise ParseError(f"line {line}: empty id")
        value = _number(rec["value"], row_id, "value", line)
        if value is None:
            raise ParseError(f"line {line} (row {row_id!r}): missing value")
        rows.append(Row(row_id, value,
                        _number(rec.get("weight"), row_id, "weight", line),
                        _number(rec.get("price"), row_id, "price", line)))
    return DataTable(tuple(rows))


def read_table(path: Union[str, Path]) -> DataTable:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_table(text)


def format_table(table: DataTable) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in table.rows:
        w.writerow([r.id] + ["" if v is None else repr(v) for v in (r.value, r.weight, r.price)])
    return out.getvalue()


def write_table(table: DataTable, path: Union[str, Path]) -> None:
    Path(path).write_text(format_table(table), encoding="utf-8")


def table_from_arrays(values: Iterable[float], weights=None, prices=None, ids=None) -> DataTable:
    values = [float(v) for v in values]
    m = len(values)
    ids = ids or [f"x{i + 1}" for i in range(m)]
    weights = [None] * m if weights is None else [float(v) for v in weights]
    prices = [None] * m if prices is None else [float(v) for v in prices]
    return DataTable(tuple(Row(str(i), v, w, p) for i, v, w, p in zip(ids, values, weights, prices)))
