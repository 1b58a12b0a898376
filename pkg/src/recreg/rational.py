"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction`, which already keeps the canonical
form (positive denominator, reduced, zero as 0/1).  This module adds a small
immutable matrix type and the handful of exact linear algebra routines the
rest of the package needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction, str, Decimal, float]
Vector = tuple[Fraction, ...]


class DimensionError(ValueError):
    """Raised when matrix or vector shapes do not fit together."""


def parse_rational(value: RationalLike) -> Fraction:
    """Parse an integer, a ``"p/q"`` string or a finite decimal exactly.

    Floats are accepted only when they are integral or came from a JSON
    decimal literal; they go through their shortest ``repr`` so ``0.1`` is
    read as 1/10 rather than its binary expansion.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite number {value!r}")
        return Fraction(Decimal(repr(value)))
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise ValueError(f"non-finite number {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            q = Fraction(int(num), int(den))
            return q
        try:
            dec = Decimal(text)
        except InvalidOperation as exc:
            raise ValueError(f"cannot parse {value!r} as a rational") from exc
        if not dec.is_finite():
            raise ValueError(f"non-finite number {value!r}")
        return Fraction(dec)
    raise TypeError(f"cannot parse {type(value).__name__} as a rational")


def vec(values: Iterable[RationalLike]) -> Vector:
    return tuple(parse_rational(v) for v in values)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise DimensionError(f"dot of lengths {len(a)} and {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: Fraction, a: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in a)


def is_zero(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


def primitive(a: Sequence[Fraction]) -> Vector:
    """Positive multiple of ``a`` with coprime integer entries."""
    if is_zero(a):
        return tuple(Fraction(0) for _ in a)
    lcm = 1
    for x in a:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in a]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(Fraction(x // g) for x in ints)


def positive_multiple(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    """True when ``a = c * b`` for some rational ``c > 0``."""
    if len(a) != len(b) or is_zero(a) or is_zero(b):
        return False
    return primitive(a) == primitive(b)


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]], cols: int | None = None) -> "RatMatrix":
        rows = [vec(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionError("column count needed for an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols]

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def select_rows(self, idx: Iterable[int]) -> "RatMatrix":
        idx = list(idx)
        return RatMatrix(len(idx), self.cols, tuple(x for i in idx for x in self.row(i)))

    def matvec(self, x: Sequence[Fraction]) -> Vector:
        if len(x) != self.cols:
            raise DimensionError(f"vector of length {len(x)} for {self.cols} columns")
        return tuple(dot(self.row(i), x) for i in range(self.rows))

    def vecmat(self, y: Sequence[Fraction]) -> Vector:
        """Return ``yᵀ M``, the combination of rows with coefficients ``y``."""
        if len(y) != self.rows:
            raise DimensionError(f"vector of length {len(y)} for {self.rows} rows")
        out = [Fraction(0)] * self.cols
        for i, yi in enumerate(y):
            if yi:
                for j, mij in enumerate(self.row(i)):
                    if mij:
                        out[j] += yi * mij
        return tuple(out)


def as_matrix(m: RatMatrix | Sequence[Sequence[RationalLike]]) -> RatMatrix:
    return m if isinstance(m, RatMatrix) else RatMatrix.from_rows(m)


def det(m: RatMatrix | Sequence[Sequence[RationalLike]]) -> Fraction:
    """Determinant by Bareiss fraction-free elimination."""
    m = as_matrix(m)
    if m.rows != m.cols:
        raise DimensionError(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    # Clear denominators so Bareiss runs over the integers.
    scale = Fraction(1)
    a: list[list[int]] = []
    for i in range(n):
        r = m.row(i)
        lcm = 1
        for x in r:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        scale /= lcm
        a.append([int(x * lcm) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns rows and pivot columns."""
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: RatMatrix | Sequence[Sequence[RationalLike]]) -> int:
    m = as_matrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    _, pivots = _rref(m.tolist())
    return len(pivots)


@dataclass(frozen=True)
class LinearSolution:
    x: Vector | None
    nullspace: tuple[Vector, ...]

    @property
    def consistent(self) -> bool:
        return self.x is not None


def solve_linear(m: RatMatrix | Sequence[Sequence[RationalLike]],
                 b: Sequence[RationalLike]) -> LinearSolution:
    """Solve ``m x = b`` exactly.

    Returns one particular solution (free variables set to zero) and a basis
    of the homogeneous solutions.  ``x`` is None when the system is
    inconsistent; the nullspace basis is returned either way.
    """
    m = as_matrix(m)
    b = vec(b)
    if len(b) != m.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for {m.rows} rows")
    n = m.cols
    aug = [list(m.row(i)) + [b[i]] for i in range(m.rows)]
    if aug:
        aug, pivots = _rref(aug)
    else:
        pivots = []
    pivots = [p for p in pivots if p < n]
    consistent = all(any(r[j] != 0 for j in range(n)) or r[n] == 0 for r in aug)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -aug[i][f]
        basis.append(tuple(v))
    x = None
    if consistent:
        xs = [Fraction(0)] * n
        for i, p in enumerate(pivots):
            xs[p] = aug[i][n]
        x = tuple(xs)
    return LinearSolution(x, tuple(basis))


def nullspace(m: RatMatrix | Sequence[Sequence[RationalLike]], cols: int | None = None) -> tuple[Vector, ...]:
    if not isinstance(m, RatMatrix):
        m = RatMatrix.from_rows(m, cols)
    if m.rows == 0:
        return tuple(tuple(Fraction(int(i == j)) for j in range(m.cols)) for i in range(m.cols))
    return solve_linear(m, [0] * m.rows).nullspace


def affine_dependence(points: Sequence[Sequence[Fraction]], homogenize: bool = True) -> Vector:
    """Coefficients ``λ`` of the dependence among ``k + 2`` vectors in
    dimension ``k + 1`` (after appending a 1 when ``homogenize``).

    Computed by cofactor expansion, ``λ_i = (-1)^i det(rows without i)``, so
    integer input gives integer output.  The caller fixes the sign.
    """
    rows = [list(p) + [Fraction(1)] if homogenize else list(p) for p in points]
    n = len(rows)
    if any(len(r) != n - 1 for r in rows):
        raise DimensionError("need exactly one more vector than the dimension")
    return tuple((-1) ** i * det(rows[:i] + rows[i + 1:]) for i in range(n))
