"""Scaled-integer max-plus kernel used by the iteration-heavy routines.

All weights involved in one computation are multiplied by a common
denominator so they become integers, which numpy handles exactly in int64.
``NEG`` stands for -inf; anything that falls below ``CUT`` after an addition
is snapped back to ``NEG``.  Results are decoded back to Fractions before
they leave the package.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

from .core import NEG_INF, TropMatrix
from .errors import PositiveCycleError, StructureError

NEG = -(2**61)
CUT = -(2**60)
LIMIT = 2**58


def common_scale(*items) -> int:
    """Least common denominator of every finite value among matrices and scalars."""
    scale = 1
    for item in items:
        if isinstance(item, TropMatrix):
            for row in item.entries:
                for x in row:
                    if x is not NEG_INF:
                        scale = lcm(scale, x.denominator)
        elif item is not None and item is not NEG_INF:
            scale = lcm(scale, Fraction(item).denominator)
    return scale


def encode(m: TropMatrix, scale: int) -> np.ndarray:
    out = np.full((m.rows, m.cols), NEG, dtype=np.int64)
    for i, row in enumerate(m.entries):
        for j, x in enumerate(row):
            if x is not NEG_INF:
                v = x * scale
                if v.denominator != 1:
                    raise StructureError("scale does not clear every denominator")
                v = int(v)
                if abs(v) >= LIMIT:
                    raise OverflowError("weight too large for the integer kernel")
                out[i, j] = v
    return out


def decode(x: np.ndarray, scale: int) -> TropMatrix:
    rows = tuple(
        tuple(NEG_INF if v <= CUT else Fraction(int(v), scale) for v in row) for row in x.tolist()
    )
    return TropMatrix(x.shape[0], x.shape[1], rows)


def _snap(x: np.ndarray) -> np.ndarray:
    x[x < CUT] = NEG
    if x.size and x.max() >= LIMIT:
        raise OverflowError("integer kernel overflow")
    return x


def mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if x.shape[0] == 0 or y.shape[1] == 0 or x.shape[1] == 0:
        return np.full((x.shape[0], y.shape[1]), NEG, dtype=np.int64)
    return _snap((x[:, :, None] + y[None, :, :]).max(axis=1))


def add(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.maximum(x, y)


def shift(x: np.ndarray, c: int) -> np.ndarray:
    """Add the integer ``c`` to every finite entry."""
    out = np.where(x <= CUT, NEG, x + c)
    return out


def identity(n: int) -> np.ndarray:
    out = np.full((n, n), NEG, dtype=np.int64)
    np.fill_diagonal(out, 0)
    return out


def star(x: np.ndarray) -> np.ndarray:
    """Max-plus closure I + X + X^2 + ...; raises if some cycle is positive."""
    n = x.shape[0]
    m = x.copy()
    diag = np.diagonal(m).copy()
    np.fill_diagonal(m, np.maximum(diag, 0))
    for k in range(n):
        cand = m[:, k : k + 1] + m[k : k + 1, :]
        np.maximum(m, cand, out=m)
        m[m < CUT] = NEG
        if m[k, k] > 0:
            raise PositiveCycleError("matrix has a cycle of positive weight; star diverges")
    if n and np.diagonal(m).max() > 0:
        raise PositiveCycleError("matrix has a cycle of positive weight; star diverges")
    return m


def support(x: np.ndarray) -> np.ndarray:
    return x > CUT


def bool_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return (x.astype(np.int32) @ y.astype(np.int32)) > 0
