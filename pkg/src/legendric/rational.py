"""Exact rational matrices and integer lattice helpers.

Everything here works over :class:`fractions.Fraction`; there are no
floating point values and no tolerances.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class RationalMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(to_fraction(x) for x in row) for row in entries)
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if width == 0 or any(len(r) != width for r in rows):
            raise ValueError("ragged or empty matrix rows")
        self._rows = rows
        self.rows = len(rows)
        self.cols = width

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> RationalMatrix:
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> RationalMatrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> RationalMatrix:
        return cls(zip(*columns))

    @classmethod
    def block(cls, blocks: Sequence[Sequence[RationalMatrix]]) -> RationalMatrix:
        out = []
        for block_row in blocks:
            height = block_row[0].rows
            if any(b.rows != height for b in block_row):
                raise ValueError("block heights disagree")
            for i in range(height):
                out.append([x for b in block_row for x in b._rows[i]])
        return cls(out)

    # -- access ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"RationalMatrix([{body}])"

    # -- arithmetic --------------------------------------------------------

    def _check_same_shape(self, other: RationalMatrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return RationalMatrix(
            [a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)
        )

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return RationalMatrix(
            [a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)
        )

    def __neg__(self) -> RationalMatrix:
        return RationalMatrix([-a for a in r] for r in self._rows)

    def __mul__(self, scalar) -> RationalMatrix:
        c = to_fraction(scalar)
        return RationalMatrix([c * a for a in r] for r in self._rows)

    __rmul__ = __mul__

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        return RationalMatrix(
            [sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols]
            for r in self._rows
        )

    def apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} for {self.shape} matrix")
        v = [to_fraction(x) for x in vector]
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self._rows)

    @property
    def T(self) -> RationalMatrix:
        return RationalMatrix(zip(*self._rows))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(a == 0 for r in self._rows for a in r)

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_skew(self) -> bool:
        return self.is_square() and self == -self.T

    def rank(self) -> int:
        return rank(self._rows)

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        return nullspace(self._rows)

    def inverse(self) -> RationalMatrix:
        if not self.is_square():
            raise ValueError("only square matrices have inverses")
        n = self.rows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._rows)]
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return RationalMatrix(r[n:] for r in red[:n])

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        return determinant(self._rows)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> list[list[str]]:
        return [[format_fraction(a) for a in r] for r in self._rows]

    @classmethod
    def from_json(cls, data) -> RationalMatrix:
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("matrix JSON must be a list of rows")
        return cls(data)


# -- elimination routines on plain row lists -------------------------------


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; preserves rank."""
    out = []
    for r in rows:
        fr = [to_fraction(x) for x in r]
        m = reduce(lcm, (x.denominator for x in fr), 1)
        out.append([int(x * m) for x in fr])
    return out


def bareiss_echelon(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free (Bareiss) forward elimination.

    Returns the integer echelon form and its pivot columns.
    """
    a = _integer_rows(rows)
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, m):
            aic = a[i][c]
            for j in range(c, n):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (piv * a[i][j] - aic * a[r][j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(bareiss_echelon(rows)[1])


def determinant(rows: Sequence[Sequence]) -> Fraction:
    fr = [[to_fraction(x) for x in r] for r in rows]
    n = len(fr)
    scale = Fraction(1)
    ints = []
    for r in fr:
        m = reduce(lcm, (x.denominator for x in r), 1)
        scale /= m
        ints.append([int(x * m) for x in r])
    # Bareiss with sign tracking; the last pivot is the determinant
    a = ints
    sign = 1
    prev = 1
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * prev * scale


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals."""
    a = [[to_fraction(x) for x in r] for r in rows]
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def nullspace(rows: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel {x : A x = 0}."""
    red, pivots = rref(rows)
    n = len(red[0]) if red else 0
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -red[i][f]
        basis.append(tuple(x))
    return basis


def span_basis(vectors: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """A basis (nonzero RREF rows) of the span of ``vectors``."""
    if not vectors:
        return []
    red, pivots = rref(vectors)
    return [tuple(r) for r in red[: len(pivots)]]


# -- integer lattices --------------------------------------------------------


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = reduce(gcd, (abs(x) for x in v), 0)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def hermite_normal_form(generators: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of the lattice spanned by integer rows.

    Returns the nonzero HNF rows: upper triangular, positive pivots, entries
    above each pivot reduced into ``[0, pivot)``.
    """
    a = [list(map(int, g)) for g in generators]
    if not a:
        return []
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        # gcd-reduce column c over rows r..m-1
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return [tuple(row) for row in a[:r]]


def lattice_covolume(basis: Sequence[Sequence[int]]) -> int:
    """|det| of a square integer basis; 0 when the rows are dependent."""
    return abs(int(determinant(basis)))
