"""Exact max-plus scalars and dense matrices.

Finite weights are :class:`fractions.Fraction`; the additive identity is the
singleton :data:`NEG_INF`.  Matrices are immutable and every operation
returns a new matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionError, InvalidScalar, PositiveCycleError


class _NegInf:
    """Tropical zero.  Below every rational, absorbing for ``+``."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"

    def __reduce__(self):
        return "NEG_INF"

    def __hash__(self):
        return hash("troptransient.NEG_INF")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__


NEG_INF = _NegInf()

TropScalar = Union[Fraction, _NegInf]


def scalar(x) -> TropScalar:
    """Coerce ints, Fractions, ``"p/q"`` strings and ``"-inf"`` to a TropScalar."""
    if x is NEG_INF:
        return NEG_INF
    if isinstance(x, str):
        s = x.strip()
        if s.lower() in ("-inf", "-infinity", "neg_inf", "-∞"):
            return NEG_INF
        return Fraction(s)
    if isinstance(x, float):
        if x == float("-inf"):
            return NEG_INF
        if x != x or x == float("inf"):
            raise InvalidScalar(f"{x!r} is not a tropical scalar")
        return Fraction(x)
    if isinstance(x, bool):
        raise InvalidScalar("booleans are not tropical scalars")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise InvalidScalar(f"cannot interpret {x!r} as a tropical scalar")


def is_finite(x: TropScalar) -> bool:
    return x is not NEG_INF


def fmt(x: TropScalar) -> str:
    return "-inf" if x is NEG_INF else str(x)


def oplus(x: TropScalar, y: TropScalar) -> TropScalar:
    return y if x < y else x


def otimes(x: TropScalar, y: TropScalar) -> TropScalar:
    if x is NEG_INF or y is NEG_INF:
        return NEG_INF
    return x + y


@dataclass(frozen=True)
class TropMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError(
                f"entries grid does not match declared shape {self.rows}x{self.cols}"
            )

    @classmethod
    def of(cls, grid: Sequence[Sequence]) -> "TropMatrix":
        rows = tuple(tuple(scalar(x) for x in row) for row in grid)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), ncols, rows)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "TropMatrix") -> "TropMatrix":
        return mat_mul(self, other)

    def __or__(self, other: "TropMatrix") -> "TropMatrix":
        return mat_add(self, other)

    def arcs(self):
        """Yield ``(i, j, weight)`` for every finite entry."""
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if x is not NEG_INF:
                    yield i, j, x

    def finite_values(self) -> list:
        return [x for row in self.entries for x in row if x is not NEG_INF]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "TropMatrix":
        e = self.entries
        return TropMatrix(len(rows), len(cols), tuple(tuple(e[i][j] for j in cols) for i in rows))

    def permuted(self, order: Sequence[int]) -> "TropMatrix":
        """Return P^- A P: entry (k, l) is a[order[k], order[l]]."""
        return self.submatrix(order, order)

    def tolist(self) -> list:
        return [[fmt(x) for x in row] for row in self.entries]

    def __str__(self):
        cells = self.tolist()
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def identity(n: int) -> TropMatrix:
    z = Fraction(0)
    return TropMatrix(n, n, tuple(tuple(z if i == j else NEG_INF for j in range(n)) for i in range(n)))


def neg_inf_matrix(rows: int, cols: int | None = None) -> TropMatrix:
    cols = rows if cols is None else cols
    return TropMatrix(rows, cols, tuple((NEG_INF,) * cols for _ in range(rows)))


def mat_add(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    if a.shape != b.shape:
        raise DimensionError(f"cannot add {a.shape} and {b.shape}")
    return TropMatrix(
        a.rows,
        a.cols,
        tuple(tuple(y if x < y else x for x, y in zip(ra, rb)) for ra, rb in zip(a.entries, b.entries)),
    )


def mat_mul(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    bcols = list(zip(*b.entries)) if b.rows else [()] * b.cols
    out = []
    for row in a.entries:
        support = [(k, x) for k, x in enumerate(row) if x is not NEG_INF]
        new = []
        for col in bcols:
            best = NEG_INF
            for k, x in support:
                y = col[k]
                if y is not NEG_INF:
                    s = x + y
                    if best is NEG_INF or s > best:
                        best = s
            new.append(best)
        out.append(tuple(new))
    return TropMatrix(a.rows, b.cols, tuple(out))


def mat_pow(a: TropMatrix, t: int) -> TropMatrix:
    if not a.is_square:
        raise DimensionError(f"power of non-square {a.shape} matrix")
    if t < 0:
        raise ValueError("negative exponent")
    result = identity(a.rows)
    base = a
    while t:
        if t & 1:
            result = mat_mul(result, base)
        t >>= 1
        if t:
            base = mat_mul(base, base)
    return result


def scalar_mul(c, a: TropMatrix) -> TropMatrix:
    c = scalar(c)
    if c is NEG_INF:
        raise InvalidScalar("scalar action by -inf is not supported")
    return TropMatrix(
        a.rows,
        a.cols,
        tuple(tuple(NEG_INF if x is NEG_INF else x + c for x in row) for row in a.entries),
    )


def kleene_star(a: TropMatrix) -> TropMatrix:
    """A* = I + A + ... + A^(d-1), computed as a max-plus Floyd-Warshall closure."""
    if not a.is_square:
        raise DimensionError(f"star of non-square {a.shape} matrix")
    n = a.rows
    m = [list(row) for row in a.entries]
    zero = Fraction(0)
    for i in range(n):
        if m[i][i] is NEG_INF or m[i][i] < zero:
            m[i][i] = zero
    for k in range(n):
        mk = m[k]
        for i in range(n):
            mi = m[i]
            x = mi[k]
            if x is NEG_INF:
                continue
            for j in range(n):
                y = mk[j]
                if y is not NEG_INF:
                    s = x + y
                    if mi[j] is NEG_INF or s > mi[j]:
                        mi[j] = s
        if mk[k] > zero:
            raise PositiveCycleError("matrix has a cycle of positive weight; star diverges")
    for i in range(n):
        if m[i][i] > zero:
            raise PositiveCycleError("matrix has a cycle of positive weight; star diverges")
    return TropMatrix(n, n, tuple(tuple(r) for r in m))


def leq(a: TropMatrix, b: TropMatrix) -> bool:
    """Entrywise a <= b."""
    if a.shape != b.shape:
        raise DimensionError(f"cannot compare {a.shape} with {b.shape}")
    return all(x <= y for ra, rb in zip(a.entries, b.entries) for x, y in zip(ra, rb))


def from_blocks(blocks: Iterable[Iterable[TropMatrix]]) -> TropMatrix:
    """Assemble a matrix from a grid of compatible blocks."""
    grid = [list(r) for r in blocks]
    rows = []
    for brow in grid:
        h = brow[0].rows
        if any(b.rows != h for b in brow):
            raise DimensionError("blocks in a row must share their height")
        for k in range(h):
            rows.append(tuple(x for b in brow for x in b.entries[k]))
    width = len(rows[0]) if rows else 0
    if any(len(r) != width for r in rows):
        raise DimensionError("block columns do not line up")
    return TropMatrix(len(rows), width, tuple(rows))
