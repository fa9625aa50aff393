"""Text formats: matrices and factorizations as JSON objects with exact entries."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .core import NEG_INF, TropMatrix, fmt, scalar
from .errors import InputError, InvalidScalar
from .factor import Factorization


def _entry(x):
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"entry {x!r} must be an integer, a 'p/q' string or '-inf'")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return scalar(x)
        except (ValueError, ZeroDivisionError, InvalidScalar) as exc:
            raise InputError(f"bad entry {x!r}: {exc}") from None
    raise InputError(f"entry {x!r} must be an integer, a 'p/q' string or '-inf'")


def matrix_from_obj(obj) -> TropMatrix:
    if not isinstance(obj, dict) or not {"rows", "cols", "entries"} <= set(obj):
        raise InputError("matrix object needs 'rows', 'cols' and 'entries'")
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 0 or cols < 0:
        raise InputError("'rows' and 'cols' must be nonnegative integers")
    if not isinstance(entries, list):
        raise InputError("'entries' must be a list")
    if entries and all(isinstance(r, list) for r in entries):
        grid = entries
    else:
        if len(entries) != rows * cols:
            raise InputError(f"expected {rows * cols} entries, got {len(entries)}")
        grid = [entries[i * cols : (i + 1) * cols] for i in range(rows)]
    if len(grid) != rows or any(len(r) != cols for r in grid):
        raise InputError(f"entries do not form a {rows}x{cols} grid")
    return TropMatrix(rows, cols, tuple(tuple(_entry(x) for x in r) for r in grid))


def matrix_to_obj(m: TropMatrix) -> dict:
    def enc(x):
        if x is NEG_INF:
            return "-inf"
        return int(x) if x.denominator == 1 else str(x)

    return {"rows": m.rows, "cols": m.cols, "entries": [[enc(x) for x in r] for r in m.entries]}


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def load_matrix(path) -> TropMatrix:
    return matrix_from_obj(_read_json(path))


def save_matrix(m: TropMatrix, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_obj(m)) + "\n")


def load_factorization(path) -> Factorization:
    obj = _read_json(path)
    if not isinstance(obj, dict) or "U" not in obj or "L" not in obj:
        raise InputError("factorization file needs 'U' and 'L' matrices")
    try:
        return Factorization.of(matrix_from_obj(obj["U"]), matrix_from_obj(obj["L"]))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def scalar_text(x) -> str:
    return fmt(x)
