"""Minimum relaxation sets of strict homogeneous systems."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from recreg.lp import gordan_relaxed
from recreg.rational import DimensionError, RatMatrix, Vector, as_matrix, dot, vec


@dataclass(frozen=True)
class RelaxableSystem:
    """Rows ``s_i``; rows in ``baseline`` are equations, the rest strict
    inequalities ``s_i·x > 0``."""

    matrix: RatMatrix
    row_labels: tuple[str, ...]
    baseline: frozenset[int] = frozenset()

    @classmethod
    def make(cls, rows, labels: Sequence[str] | None = None, baseline=(), cols: int | None = None) -> "RelaxableSystem":
        m = rows if isinstance(rows, RatMatrix) else RatMatrix.from_rows(rows, cols)
        labels = tuple(str(x) for x in labels) if labels is not None else tuple(str(i + 1) for i in range(m.rows))
        if len(labels) != m.rows:
            raise DimensionError("one label per row expected")
        if len(set(labels)) != len(labels):
            raise ValueError("row labels must be unique")
        baseline = frozenset(baseline)
        if any(i < 0 or i >= m.rows for i in baseline):
            raise IndexError("baseline index out of range")
        return cls(m, labels, baseline)

    def index(self, label: str) -> int:
        return self.row_labels.index(label)

    def labels_of(self, idx) -> frozenset[str]:
        return frozenset(self.row_labels[i] for i in idx)


@dataclass(frozen=True)
class RelaxationResult:
    E: frozenset[int]
    rounds: tuple[Vector, ...]
    final_witness: Vector
    margin: Fraction | None

    def relaxed(self, sys: RelaxableSystem) -> frozenset[int]:
        """Rows relaxed beyond the baseline."""
        return self.E - sys.baseline


def minimum_relaxation(sys: RelaxableSystem) -> RelaxationResult:
    """Grow E from the baseline by the positive support of dual witnesses
    until the system becomes compatible."""
    m = as_matrix(sys.matrix)
    E = frozenset(sys.baseline)
    rounds = []
    while True:
        res = gordan_relaxed(m, E)
        if res.compatible:
            return RelaxationResult(E, tuple(rounds), res.x, res.margin)
        support = frozenset(i for i, yi in enumerate(res.y) if yi > 0 and i not in E)
        assert support, "dual witness without positive support off E"
        rounds.append(res.y)
        E = E | support


def verify_dual_certificate(sys: RelaxableSystem, y: Sequence) -> bool:
    """True iff ``Σ y_i s_i = 0`` exactly, ``y >= 0`` off the baseline and
    ``y`` is positive somewhere off the baseline."""
    y = vec(y)
    if len(y) != sys.matrix.rows:
        raise DimensionError(f"{len(y)} coefficients for {sys.matrix.rows} rows")
    if any(x != 0 for x in sys.matrix.vecmat(y)):
        return False
    free = [i for i in range(len(y)) if i not in sys.baseline]
    return all(y[i] >= 0 for i in free) and any(y[i] > 0 for i in free)


def residual(sys: RelaxableSystem, y: Sequence) -> Vector:
    return sys.matrix.vecmat(vec(y))


def check_witness(sys: RelaxableSystem, E, x: Sequence[Fraction]) -> bool:
    """``x`` solves S(M,E): zero on E, strictly positive elsewhere."""
    for i in range(sys.matrix.rows):
        s = dot(sys.matrix.row(i), x)
        if (i in E and s != 0) or (i not in E and s <= 0):
            return False
    return True
