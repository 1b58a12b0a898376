"""Regularity systems, regularity decisions and finest regular coarsenings."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from recreg.complex import (
    Coarsening,
    Complex,
    Fan,
    InvalidComplex,
    PointConfiguration,
    Subdivision,
    Violation,
    dual_graph,
    restrict_cells,
    validate_subdivision,
    walls,
)
from recreg.lp import gordan_relaxed
from recreg.rational import Vector, affine_dependence, dot, rank, vec
from recreg.relaxation import RelaxableSystem, minimum_relaxation


@dataclass(frozen=True)
class HeightFunction:
    values: tuple[Fraction, ...]

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]


@dataclass(frozen=True)
class RegularityVerdict:
    regular: bool
    witness: HeightFunction | None = None
    contradiction: Mapping[str, Fraction] | None = None


@dataclass(frozen=True)
class FinestRegularCoarsening:
    coarsening: Coarsening
    relaxed_walls: frozenset[str]
    witness: HeightFunction
    rounds: int


def _independent_prefix(vectors: Sequence[Vector], idx: Sequence[int], k: int) -> list[int]:
    """Greedy lexicographically-first ``k`` independent vectors."""
    chosen: list[int] = []
    for i in idx:
        if rank([vectors[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == k:
                return chosen
    raise InvalidComplex([Violation("degenerate cell: no affine basis", tuple(idx))])


def _integral(v: Sequence[Fraction]) -> Vector:
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return tuple(x * lcm for x in v)


def regularity_system(c: Complex) -> RelaxableSystem:
    """One folding row per interior wall and one coplanarity equation per
    extra vertex of a non-simplicial cell.

    Folding rows are the cofactor expansion of the dependence among a ridge
    basis and one apex on each side, signed so the apexes get positive
    coefficients.  A height vector ``ω`` folds strictly across the wall
    exactly when the row times ``ω`` is positive.
    """
    vectors = c.vectors
    h = len(vectors[0])
    n = len(vectors)
    rows: list[list[Fraction]] = []
    labels: list[str] = []
    baseline: list[int] = []
    for w in walls(c):
        a, b = w.cells
        basis = _independent_prefix(vectors, w.ridge, h - 1)
        apex_a = next(v for v in c.cells[a] if rank([vectors[j] for j in basis + [v]]) == h)
        apex_b = next(v for v in c.cells[b] if rank([vectors[j] for j in basis + [v]]) == h)
        pts = basis + [apex_a, apex_b]
        lam = affine_dependence([vectors[j] for j in pts], homogenize=False)
        if lam[-1] < 0:
            lam = tuple(-x for x in lam)
        row = [Fraction(0)] * n
        for j, l in zip(pts, lam):
            row[j] += l
        rows.append(row)
        labels.append(w.label)
    for i, cell in enumerate(c.cells):
        if len(cell) <= h:
            continue
        basis = _independent_prefix(vectors, cell, h)
        for v in cell:
            if v in basis:
                continue
            lam = affine_dependence([vectors[j] for j in basis + [v]], homogenize=False)
            if lam[-1] < 0:
                lam = tuple(-x for x in lam)
            row = [Fraction(0)] * n
            for j, l in zip(basis + [v], lam):
                row[j] += l
            baseline.append(len(rows))
            rows.append(row)
            cl = c.cell_labels[i] if c.cell_labels else str(i)
            labels.append(f"cell {cl}: vertex {v}")
    return RelaxableSystem.make(rows, labels, baseline, cols=n)


def _wall_rows(sys: RelaxableSystem) -> list[int]:
    return [i for i in range(sys.matrix.rows) if i not in sys.baseline]


def is_regular(c: Complex) -> RegularityVerdict:
    sys = regularity_system(c)
    res = gordan_relaxed(sys.matrix, sys.baseline)
    if res.compatible:
        omega = _integral(res.x)
        for i in range(sys.matrix.rows):
            s = dot(sys.matrix.row(i), omega)
            assert (s == 0) if i in sys.baseline else (s > 0)
        return RegularityVerdict(True, witness=HeightFunction(omega))
    cert = {sys.row_labels[i]: y for i, y in enumerate(_integral(res.y)) if y != 0}
    return RegularityVerdict(False, contradiction=cert)


def groups_from_relaxed(c: Complex, relaxed: frozenset[str]) -> tuple[tuple[int, ...], ...]:
    """Connected components of the dual graph restricted to relaxed walls."""
    parent = list(range(len(c.cells)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w in walls(c):
        if w.label in relaxed:
            ra, rb = find(w.cells[0]), find(w.cells[1])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    comps: dict[int, list[int]] = {}
    for i in range(len(c.cells)):
        comps.setdefault(find(i), []).append(i)
    return tuple(tuple(g) for g in sorted(comps.values()))


def finest_regular_coarsening(c: Complex) -> FinestRegularCoarsening:
    sys = regularity_system(c)
    res = minimum_relaxation(sys)
    relaxed = sys.labels_of(res.E - sys.baseline)
    groups = groups_from_relaxed(c, relaxed)
    return FinestRegularCoarsening(Coarsening(c, groups), relaxed,
                                   HeightFunction(_integral(res.final_witness)), len(res.rounds))


def restrict(c: Complex, group: Sequence[int]) -> Complex:
    group = sorted(set(group))
    if not group:
        raise ValueError("empty group")
    adj = dual_graph(c)
    inside = set(group)
    seen = {group[0]}
    stack = [group[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in inside and y not in seen:
                seen.add(y)
                stack.append(y)
    if seen != inside:
        raise ValueError(f"cells {sorted(inside - seen)} are not connected to cell {group[0]}")
    return restrict_cells(c, group)


def lift_project_2d(config: PointConfiguration, heights: HeightFunction | Sequence) -> Subdivision:
    """Regular subdivision induced by ``heights`` (brute-force lower hull)."""
    if config.dimension != 2:
        raise ValueError("lift_project_2d needs a planar configuration")
    w = heights.values if isinstance(heights, HeightFunction) else vec(heights)
    pts = config.points
    n = len(pts)
    if len(w) != n:
        raise ValueError("one height per point expected")
    cells: dict[frozenset[int], None] = {}
    for i, j, k in itertools.combinations(range(n), 3):
        a, b, cpt = pts[i], pts[j], pts[k]
        det2 = (b[0] - a[0]) * (cpt[1] - a[1]) - (b[1] - a[1]) * (cpt[0] - a[0])
        if det2 == 0:
            continue
        # Plane z = α x + β y + γ through the three lifted points.
        alpha = ((w[j] - w[i]) * (cpt[1] - a[1]) - (w[k] - w[i]) * (b[1] - a[1])) / det2
        beta = ((b[0] - a[0]) * (w[k] - w[i]) - (cpt[0] - a[0]) * (w[j] - w[i])) / det2
        gamma = w[i] - alpha * a[0] - beta * a[1]
        tight = []
        ok = True
        for m in range(n):
            z = alpha * pts[m][0] + beta * pts[m][1] + gamma
            if w[m] < z:
                ok = False
                break
            if w[m] == z:
                tight.append(m)
        if ok:
            cells[frozenset(tight)] = None
    if not cells:
        raise ValueError("all points are collinear")
    return validate_subdivision(config, [sorted(c) for c in cells])
