"""Exact linear programming and Gordan's alternative.

The simplex method below is a dense two-phase tableau over Fractions with
Bland's rule throughout.  Problems in this package have at most a few dozen
rows and columns, so the simple dense layout is the right trade.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from recreg.rational import DimensionError, RatMatrix, Vector, as_matrix, dot, vec

Relation = Literal["<=", ">=", "="]
Status = Literal["optimal", "infeasible", "unbounded"]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LinearProgram:
    """maximize ``c·x`` subject to ``A x (rel) b``; ``free[j]`` marks
    variables without the default lower bound ``x_j >= 0``."""

    objective: Vector
    matrix: tuple[Vector, ...]
    relations: tuple[Relation, ...]
    rhs: Vector
    free: tuple[bool, ...]

    @classmethod
    def build(cls, objective, matrix, relations, rhs, free=None) -> "LinearProgram":
        c = vec(objective)
        a = tuple(vec(r) for r in matrix)
        b = vec(rhs)
        rel = tuple(relations)
        fr = tuple(free) if free is not None else (False,) * len(c)
        if any(len(r) != len(c) for r in a):
            raise DimensionError("constraint row length differs from objective length")
        if not (len(a) == len(rel) == len(b)):
            raise DimensionError("rows, relations and right-hand side disagree in length")
        if len(fr) != len(c):
            raise DimensionError("free-variable flags differ from objective length")
        if any(r not in ("<=", ">=", "=") for r in rel):
            raise ValueError(f"unknown relation in {rel}")
        return cls(c, a, rel, b, fr)


@dataclass(frozen=True)
class LPOutcome:
    status: Status
    primal: Vector = ()
    dual: Vector = ()
    objective_value: Fraction | None = None


class _Tableau:
    def __init__(self, a: list[list[Fraction]], b: list[Fraction], basis: list[int]):
        self.a = a
        self.b = b
        self.basis = basis

    def pivot(self, r: int, c: int, obj: list[list[Fraction]]) -> None:
        row = self.a[r]
        inv = 1 / row[c]
        if inv != 1:
            row = [x * inv if x else x for x in row]
            self.a[r] = row
            self.b[r] *= inv
        nz = [j for j, x in enumerate(row) if x]
        for i, other in enumerate(self.a):
            if i != r and other[c]:
                f = other[c]
                for j in nz:
                    other[j] -= f * row[j]
                self.b[i] -= f * self.b[r]
        for o in obj:
            if o[c]:
                f = o[c]
                for j in nz:
                    o[j] -= f * row[j]
                # last entry of an objective row holds minus the value
                o[-1] -= f * self.b[r]
        self.basis[r] = c

    def run(self, obj: list[Fraction], allowed: Sequence[bool], extra: list[list[Fraction]]) -> bool:
        """Maximize with reduced-cost row ``obj`` (entries are ``c_j - z_j``).

        Returns False when unbounded.
        """
        while True:
            enter = next((j for j, x in enumerate(obj[:-1]) if x > 0 and allowed[j]), None)
            if enter is None:
                return True
            best: tuple[Fraction, int] | None = None
            leave = None
            for i, row in enumerate(self.a):
                if row[enter] > 0:
                    ratio = self.b[i] / row[enter]
                    key = (ratio, self.basis[i])
                    if best is None or key < best:
                        best = key
                        leave = i
            if leave is None:
                return False
            self.pivot(leave, enter, [obj] + extra)


def lp_solve(p: LinearProgram) -> LPOutcome:
    """Solve ``p`` exactly.  Duals are reported per original row with the
    sign convention of the maximization: ``y_i >= 0`` for ``<=`` rows,
    ``y_i <= 0`` for ``>=`` rows, free for equations."""
    n = len(p.objective)
    m = len(p.matrix)
    # Column layout: structural (free ones split), then one auxiliary per row
    # that starts in the basis (slack or artificial), then surplus columns.
    struct: list[tuple[int, int]] = []
    for j in range(n):
        struct.append((j, 1))
        if p.free[j]:
            struct.append((j, -1))
    ns = len(struct)
    flips = []
    rows = []
    rhs = []
    rels = []
    for i in range(m):
        r = [p.matrix[i][j] * s for j, s in struct]
        b = p.rhs[i]
        rel = p.relations[i]
        if b < 0:
            r = [-x for x in r]
            b = -b
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
            flips.append(-1)
        else:
            flips.append(1)
        rows.append(r)
        rhs.append(b)
        rels.append(rel)
    surplus_rows = [i for i in range(m) if rels[i] == ">="]
    width = ns + m + len(surplus_rows)
    a = []
    for i in range(m):
        row = rows[i] + [ZERO] * (m + len(surplus_rows))
        row[ns + i] = ONE
        a.append(row)
    for k, i in enumerate(surplus_rows):
        a[i][ns + m + k] = -ONE
    artificial = [rels[i] != "<=" for i in range(m)]
    tab = _Tableau(a, rhs, [ns + i for i in range(m)])

    # Phase 2 reduced costs, kept current through phase 1 pivots.
    cost = [ZERO] * (width + 1)
    for k, (j, s) in enumerate(struct):
        cost[k] = p.objective[j] * s
    allowed = [True] * width
    if any(artificial):
        # Phase 1: maximize minus the sum of artificials.
        ph1 = [ZERO] * (width + 1)
        for i in range(m):
            if artificial[i]:
                for j in range(width):
                    if j != ns + i:
                        ph1[j] += a[i][j]
                ph1[-1] += rhs[i]
        tab.run(ph1, allowed, [cost])
        if ph1[-1] != 0:
            return LPOutcome("infeasible")
        for i in range(m):
            allowed[ns + i] = not artificial[i]
        # Drive artificials at level zero out of the basis when possible.
        for r in range(m):
            bcol = tab.basis[r]
            if ns <= bcol < ns + m and artificial[bcol - ns]:
                c = next((j for j in range(width) if allowed[j] and tab.a[r][j] != 0), None)
                if c is not None:
                    tab.pivot(r, c, [cost])
    if not tab.run(cost, allowed, []):
        return LPOutcome("unbounded")

    x_std = [ZERO] * width
    for i, bcol in enumerate(tab.basis):
        x_std[bcol] = tab.b[i]
    x = [ZERO] * n
    for k, (j, s) in enumerate(struct):
        x[j] += s * x_std[k]
    # Column ns+i started as e_i with zero cost, so its reduced cost is -y_i.
    dual = tuple(-cost[ns + i] * flips[i] for i in range(m))
    value = dot(p.objective, x)
    return LPOutcome("optimal", tuple(x), dual, value)


@dataclass(frozen=True)
class GordanResult:
    """Exactly one of ``x`` (primal witness) and ``y`` (dual witness)."""

    x: Vector | None = None
    y: Vector | None = None
    margin: Fraction | None = None
    equations: frozenset[int] = field(default_factory=frozenset)

    @property
    def compatible(self) -> bool:
        return self.x is not None


def _dual_lp(m: RatMatrix, eq: frozenset[int]) -> LPOutcome:
    # Variables: y_i for every row, plus y_i^- for rows in eq (y_i free).
    cols: list[tuple[int, int]] = [(i, 1) for i in range(m.rows)]
    cols += [(i, -1) for i in sorted(eq)]
    k = len(cols)
    objective = [ONE if s == 1 and i not in eq else ZERO for i, s in cols]
    matrix = []
    for j in range(m.cols):
        matrix.append([m[i, j] * s for i, s in cols])
    matrix.append([ONE] * k)
    relations = ["="] * m.cols + ["<="]
    rhs = [ZERO] * m.cols + [ONE]
    return lp_solve(LinearProgram.build(objective, matrix, relations, rhs))


def max_margin(m: RatMatrix, eq: frozenset[int] = frozenset()) -> LPOutcome:
    """maximize ``t`` s.t. ``s_i·x = 0`` (i in eq), ``s_j·x >= t`` otherwise,
    ``t <= 1``; variables ``x`` free.  The last primal entry is ``t``."""
    n = m.cols
    matrix, rel, rhs = [], [], []
    for i in range(m.rows):
        row = list(m.row(i))
        if i in eq:
            matrix.append(row + [ZERO])
            rel.append("=")
        else:
            matrix.append(row + [-ONE])
            rel.append(">=")
        rhs.append(ZERO)
    matrix.append([ZERO] * n + [ONE])
    rel.append("<=")
    rhs.append(ONE)
    objective = [ZERO] * n + [ONE]
    return lp_solve(LinearProgram.build(objective, matrix, rel, rhs, [True] * (n + 1)))


def _check_dual(m: RatMatrix, y: Sequence[Fraction], eq: frozenset[int]) -> bool:
    if any(x != 0 for x in m.vecmat(y)):
        return False
    if any(y[i] < 0 for i in range(m.rows) if i not in eq):
        return False
    return any(y[i] > 0 for i in range(m.rows) if i not in eq)


def _check_primal(m: RatMatrix, x: Sequence[Fraction], eq: frozenset[int]) -> bool:
    for i in range(m.rows):
        s = dot(m.row(i), x)
        if (i in eq and s != 0) or (i not in eq and s <= 0):
            return False
    return True


def gordan_relaxed(m: RatMatrix | Sequence[Sequence], eq) -> GordanResult:
    """Decide ``S(M,E)``: ``s_i·x = 0`` for i in E and ``s_j·x > 0`` otherwise.

    Returns a strict primal witness or a dual witness ``y`` with
    ``Mᵀy = 0``, ``y_i >= 0`` off E and some ``y_j > 0`` off E.
    """
    m = as_matrix(m)
    eq = frozenset(eq)
    if any(i < 0 or i >= m.rows for i in eq):
        raise IndexError("equation index out of range")
    if len(eq) == m.rows:
        x = tuple(ZERO for _ in range(m.cols))
        return GordanResult(x=x, margin=None, equations=eq)
    dual = _dual_lp(m, eq)
    assert dual.status == "optimal"
    if dual.objective_value > 0:
        y = list(dual.primal[:m.rows])
        for k, i in enumerate(sorted(eq)):
            y[i] -= dual.primal[m.rows + k]
        y = tuple(y)
        if not _check_dual(m, y, eq):
            raise ArithmeticError("dual witness failed exact verification")
        return GordanResult(y=y, equations=eq)
    primal = max_margin(m, eq)
    assert primal.status == "optimal"
    x, t = primal.primal[:-1], primal.primal[-1]
    if t <= 0 or not _check_primal(m, x, eq):
        raise ArithmeticError("primal witness failed exact verification")
    return GordanResult(x=x, margin=t, equations=eq)


def gordan(m: RatMatrix | Sequence[Sequence]) -> GordanResult:
    """Either ``x`` with ``Mx > 0`` or ``y >= 0``, ``y != 0`` with ``Mᵀy = 0``."""
    return gordan_relaxed(m, ())
