"""Reading sample vectors and writing reports/matrices."""

from __future__ import annotations

import io
import json
import math
from typing import Iterable, Sequence

import numpy as np


class InputError(ValueError):
    """Unparseable input; the message names the offending line or value."""


def parse_vectors(text: str, source: str = "<input>") -> list[np.ndarray]:
    """Vectors from CSV (one sample per line, '#' comments) or JSON (flat array or array of arrays)."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        return _parse_json(stripped, source)
    return [_parse_csv(text, source)]


def _parse_csv(text: str, source: str) -> np.ndarray:
    samples = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        item = line.strip()
        if not item or item.startswith("#"):
            continue
        try:
            x = float(item)
        except ValueError:
            raise InputError(f"{source}:{lineno}: not a number: {item!r}") from None
        if not math.isfinite(x):
            raise InputError(f"{source}:{lineno}: non-finite sample {item!r}")
        samples.append(x)
    if not samples:
        raise InputError(f"{source}: no samples found")
    return np.array(samples)


def _parse_json(text: str, source: str) -> list[np.ndarray]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, list) or not data:
        raise InputError(f"{source}: expected a non-empty JSON array")
    batch = data if all(isinstance(x, list) for x in data) else [data]
    vectors = []
    for i, row in enumerate(batch):
        if not row:
            raise InputError(f"{source}: vector {i} is empty")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
                raise InputError(f"{source}: vector {i}, element {j}: not a finite number: {x!r}")
        vectors.append(np.array(row, dtype=float))
    return vectors


def format_number(x: float) -> str:
    """Shortest round-tripping representation; integers print without a fraction."""
    x = float(x)
    if x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    return repr(x)


def matrix_csv(M: np.ndarray) -> str:
    return "".join(",".join(format_number(x) for x in row) + "\n" for row in np.asarray(M))


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (float, np.floating)):
        return format_number(x)
    return str(x)


def table_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_cell(x) for x in row) + "\n")
    return buf.getvalue()
