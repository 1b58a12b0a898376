"""Covering assignments of fan cells to points.

A cell ``C`` assigned to point ``p`` is the translated cone ``p + C``.  An
assignment covers when the translated cells cover the support of the fan.
"""

from __future__ import annotations

import itertools
import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from recreg.complex import Fan, boundary_facets, cell_inequalities, cone_facets, in_cell, walls
from recreg.lp import gordan
from recreg.matching import min_cost_assignment
from recreg.rational import Vector, dot, is_zero, primitive, solve_linear, vec, vsub
from recreg.regularity import finest_regular_coarsening, restrict
from recreg.visibility import acyclic_in_direction

Points = Sequence[Vector]


class PreconditionError(ValueError):
    """An operation's documented precondition does not hold."""


@dataclass(frozen=True)
class Assignment:
    mapping: tuple[int, ...]
    """``mapping[c]`` is the point index assigned to cell ``c``."""

    def __post_init__(self) -> None:
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError("assignment must be a bijection onto 0..n-1")

    def notation(self, labels: Sequence[str] | None = None) -> str:
        """Labels of the points for cells 0, 1, ... concatenated."""
        labels = labels or [str(i + 1) for i in range(len(self.mapping))]
        return "".join(labels[p] for p in self.mapping)


@dataclass(frozen=True)
class WallMargin:
    label: str
    cells: tuple[int, int]
    margin: Fraction

    @property
    def violated(self) -> bool:
        return self.margin < 0


@dataclass(frozen=True)
class OverlapReport:
    walls: tuple[WallMargin, ...]

    @property
    def violations(self) -> tuple[WallMargin, ...]:
        return tuple(w for w in self.walls if w.violated)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def min_margin(self) -> Fraction | None:
        return min((w.margin for w in self.walls), default=None)


def _points(p) -> list[Vector]:
    return [vec(x) for x in p]


def _check_sizes(f: Fan, p: Points, a: Assignment | None = None) -> None:
    if len(p) != len(f.cells):
        raise PreconditionError(f"{len(p)} points for {len(f.cells)} cells")
    if a is not None and len(a.mapping) != len(f.cells):
        raise PreconditionError("assignment size differs from the number of cells")
    if any(len(x) != f.dimension for x in p):
        raise PreconditionError("point dimension differs from the fan dimension")


def overlap_check(f: Fan, p: Points, a: Assignment) -> OverlapReport:
    """Margin ``⟨σ(C) - σ(D), u⟩`` for every wall, ``u`` from C to D."""
    p = _points(p)
    _check_sizes(f, p, a)
    out = []
    for w in walls(f):
        c, d = w.cells
        out.append(WallMargin(w.label, w.cells, dot(vsub(p[a.mapping[c]], p[a.mapping[d]]), w.normal)))
    return OverlapReport(tuple(out))


def in_reverse_support(f: Fan, x: Sequence[Fraction]) -> bool:
    """``x`` lies in the reverse of the fan's support (everything for a
    complete fan)."""
    return all(dot(n, x) <= 0 for n, _ in boundary_facets(f))


def _check_reverse(f: Fan, p: Points) -> None:
    if f.complete:
        return
    for i, x in enumerate(p):
        if not in_reverse_support(f, x):
            raise PreconditionError(f"point {i} lies outside the reverse of the fan's support")


@dataclass(frozen=True)
class LineAssignmentResult:
    assignment: Assignment | None
    direction: Vector | None
    cycle: tuple[int, ...] = ()


def line_assignment(f: Fan, p: Points) -> LineAssignmentResult:
    """Assign collinear points along the topological order of the in-front
    relation in the line's direction, or return the visibility cycle."""
    p = _points(p)
    _check_sizes(f, p)
    _check_reverse(f, p)
    base = p[0]
    v = next((vsub(x, base) for x in p if x != base), None)
    if v is None:
        return LineAssignmentResult(Assignment(tuple(range(len(p)))), None)
    params = []
    for x in p:
        sol = solve_linear([[vi] for vi in v], vsub(x, base))
        if sol.x is None:
            raise PreconditionError("points are not collinear")
        params.append(sol.x[0])
    verdict = acyclic_in_direction(f, v)
    if not verdict.acyclic:
        return LineAssignmentResult(None, v, verdict.cycle)
    by_param = sorted(range(len(p)), key=lambda i: (params[i], i))
    mapping = [0] * len(p)
    for cell, point in zip(verdict.order, by_param):
        mapping[cell] = point
    return LineAssignmentResult(Assignment(tuple(mapping)), v)


# ------------------------------------------------------------ covering


@dataclass(frozen=True)
class TraceLevel:
    cells: tuple[int, ...]
    groups: tuple[tuple[int, ...], ...]
    functionals: tuple[Vector, ...]
    weights: tuple[Fraction, ...]
    routing: tuple[tuple[int, ...], ...]
    """Point indices routed to each group."""


@dataclass(frozen=True)
class CoveringResult:
    assignment: Assignment
    trace: tuple[TraceLevel, ...]


def transportation(costs: Sequence[Sequence[Fraction]], capacities: Sequence[int]):
    """Route each point (row) to a group (column), filling capacities
    exactly at minimum total cost.

    Returns ``(routing, weights)`` where ``routing[i]`` is the group of point
    ``i`` and ``weights`` are dual prices with each point's group minimizing
    ``cost + weight``.  The routing is an optimal matching of points to
    capacity slots; the prices are shortest-path potentials of the
    difference constraints ``w[r_i] - w[j] <= cost[i][j] - cost[i][r_i]``,
    which are feasible exactly because the routing is optimal.
    """
    n, g = len(costs), len(capacities)
    if sum(capacities) != n or any(c < 0 for c in capacities):
        raise PreconditionError("capacities must add up to the number of points")
    slots = [j for j in range(g) for _ in range(capacities[j])]
    match = min_cost_assignment([[costs[i][j] for j in slots] for i in range(n)])
    routing = tuple(slots[k] for k in match)
    # edge j -> r_i with length cost[i][j] - cost[i][r_i]
    edge: dict[tuple[int, int], Fraction] = {}
    for i in range(n):
        r = routing[i]
        for j in range(g):
            if j != r:
                w = Fraction(costs[i][j]) - costs[i][r]
                if (j, r) not in edge or w < edge[(j, r)]:
                    edge[(j, r)] = w
    dist = [Fraction(0)] * g
    for _ in range(g):
        changed = False
        for (a, b), w in edge.items():
            if dist[a] + w < dist[b]:
                dist[b] = dist[a] + w
                changed = True
        if not changed:
            break
    else:
        raise AssertionError("negative cycle: routing is not optimal")
    return routing, tuple(dist)


def _group_functional(sub: Fan, group: Sequence[int], heights: Sequence[Fraction]) -> Vector:
    rays = sorted({r for c in group for r in sub.cells[c]})
    sol = solve_linear([sub.rays[r] for r in rays], [heights[r] for r in rays])
    assert sol.x is not None and not sol.nullspace
    return sol.x


def covering_assignment(f: Fan, p: Points) -> CoveringResult:
    """Covering assignment for a recursively regular fan.

    At each level the finest regular coarsening gives a convex lifting with
    one linear functional ``a_G`` per group.  Points are split among the
    groups by an exact transportation problem with costs ``a_G·p`` and
    capacities equal to group sizes; its dual prices are the power-diagram
    weights.  The recursion continues inside every group.
    """
    p = _points(p)
    _check_sizes(f, p)
    _check_reverse(f, p)
    mapping = [-1] * len(p)
    trace: list[TraceLevel] = []

    def solve(sub: Fan, cells: tuple[int, ...], pts: tuple[int, ...]) -> None:
        if len(cells) == 1:
            mapping[cells[0]] = pts[0]
            return
        frc = finest_regular_coarsening(sub)
        groups = frc.coarsening.groups
        if len(groups) == 1:
            raise PreconditionError("fan is not recursively regular")
        funcs = tuple(_group_functional(sub, g, frc.witness.values) for g in groups)
        costs = [[dot(a, p[i]) for a in funcs] for i in pts]
        routing, weights = transportation(costs, [len(g) for g in groups])
        for k, i in enumerate(pts):
            own = costs[k][routing[k]] + weights[routing[k]]
            assert all(own <= costs[k][j] + weights[j] for j in range(len(groups)))
        routed = tuple(tuple(i for k, i in enumerate(pts) if routing[k] == j) for j in range(len(groups)))
        trace.append(TraceLevel(cells, tuple(tuple(cells[c] for c in g) for g in groups),
                                funcs, weights, routed))
        for g, got in zip(groups, routed):
            if len(g) == 1:
                mapping[cells[g[0]]] = got[0]
            else:
                solve(restrict(sub, g), tuple(cells[c] for c in g), got)

    solve(f, tuple(range(len(f.cells))), tuple(range(len(p))))
    return CoveringResult(Assignment(tuple(mapping)), tuple(trace))


# ------------------------------------------------------------ universality


@dataclass(frozen=True)
class UniversalityResult:
    assignment: Assignment | None
    table: tuple[tuple[Assignment, str, Fraction], ...]
    """For a failed search: every permutation with one violated wall and its
    margin."""

    @property
    def found(self) -> bool:
        return self.assignment is not None


def universality_search(f: Fan, p: Points, bound: int = 8) -> UniversalityResult:
    """Try every assignment; stop at the first with no violated wall."""
    p = _points(p)
    _check_sizes(f, p)
    n = len(p)
    if n > bound:
        raise PreconditionError(f"exhaustive search limited to {bound} cells")
    ws = walls(f)
    table = []
    for perm in itertools.permutations(range(n)):
        bad = None
        for w in ws:
            c, d = w.cells
            m = dot(vsub(p[perm[c]], p[perm[d]]), w.normal)
            if m < 0:
                bad = (w.label, m)
                break
        a = Assignment(perm)
        if bad is None:
            return UniversalityResult(a, ())
        table.append((a, bad[0], bad[1]))
    return UniversalityResult(None, tuple(table))


# ------------------------------------------------------------ coverage


@dataclass(frozen=True)
class UncoveredRegion:
    vertices: tuple[Vector, ...]
    bounded: bool = True

    @property
    def empty(self) -> bool:
        return not self.vertices and self.bounded


def _line_through(n: Vector, q: Vector) -> tuple[Vector, Fraction]:
    return n, dot(n, q)


def _translated_halfplanes(f: Fan, p: list[Vector], a: Assignment, scale: int):
    """Integer ``(n, scale * ⟨n, p⟩)`` per facet of every translated cell."""
    out = []
    for c, cell in enumerate(f.cells):
        q = p[a.mapping[c]]
        ns = [primitive(n) for n, _ in cone_facets([f.rays[r] for r in cell])]
        out.append([(int(n[0]), int(n[1]), int(dot(n, q) * scale)) for n in ns])
    return out


def _covered(cells, x: int, y: int, den: int) -> bool:
    """``(x/den, y/den)`` lies in one of the translated cells."""
    return any(all(n0 * x + n1 * y >= c * den for n0, n1, c in cell) for cell in cells)


def uncovered_region_2d(f: Fan, p: Points, a: Assignment) -> UncoveredRegion:
    """Exact uncovered part of the plane for a complete planar fan.

    The translated cells' boundary lines cut the plane into slabs between
    consecutive arrangement vertices; one probe inside each slab face
    decides that face.  The uncovered faces are returned as the convex hull
    of their corners.
    """
    if f.dimension != 2 or not f.complete:
        raise PreconditionError("uncovered_region_2d needs a complete planar fan")
    p = _points(p)
    report = overlap_check(f, p, a)
    if not report.ok:
        raise PreconditionError(
            f"violated overlapping condition on wall {report.violations[0].label}")
    scale = math.lcm(*(x.denominator for q in p for x in q))
    halfplanes = _translated_halfplanes(f, p, a, scale)
    lines: dict[tuple[Vector, Fraction], None] = {}
    for c, cell in enumerate(f.cells):
        q = p[a.mapping[c]]
        for n, _ in cone_facets([f.rays[r] for r in cell]):
            lines[_line_through(n, q)] = None
    lines_l = list(lines)
    xs = set()
    for (n1, c1), (n2, c2) in itertools.combinations(lines_l, 2):
        det = n1[0] * n2[1] - n1[1] * n2[0]
        if det != 0:
            xs.add((c1 * n2[1] - c2 * n1[1]) / det)
    for n, c in lines_l:
        if n[1] == 0:
            xs.add(c / n[0])
    xs_sorted = sorted(xs) or [Fraction(0)]
    probes_x = [xs_sorted[0] - 1] + [(u + v) / 2 for u, v in zip(xs_sorted, xs_sorted[1:])] + [xs_sorted[-1] + 1]
    bounds = [None] + list(zip(xs_sorted, xs_sorted[1:])) + [None]
    corners: list[Vector] = []
    bounded = True
    for xm, slab in zip(probes_x, bounds):
        ys = sorted({(c - n[0] * xm) / n[1] for n, c in lines_l if n[1] != 0})
        if not ys:
            ys = [Fraction(0)]
        probes_y = [ys[0] - 1] + [(u + v) / 2 for u, v in zip(ys, ys[1:])] + [ys[-1] + 1]
        for k, ym in enumerate(probes_y):
            den = math.lcm(xm.denominator, ym.denominator)
            if _covered(halfplanes, int(xm * den), int(ym * den), den * scale):
                continue
            if slab is None or k == 0 or k == len(probes_y) - 1:
                bounded = False
                continue
            lo_y, hi_y = ys[k - 1], ys[k]
            below = [(n, c) for n, c in lines_l if n[1] != 0 and (c - n[0] * xm) / n[1] == lo_y][0]
            above = [(n, c) for n, c in lines_l if n[1] != 0 and (c - n[0] * xm) / n[1] == hi_y][0]
            for xe in slab:
                for n, c in (below, above):
                    corners.append((xe, (c - n[0] * xe) / n[1]))
    if not bounded:
        return UncoveredRegion((), bounded=False)
    from recreg.complex import convex_hull_2d

    return UncoveredRegion(tuple(convex_hull_2d(corners)) if corners else ())


@dataclass(frozen=True)
class SampleSet:
    """Integer sample points ``X``; the sample is ``X / scale``."""

    points: tuple[tuple[int, ...], ...]
    scale: int
    region: str
    """``"ball"`` or ``"cone"``: the domain the points were drawn from."""
    bound: Fraction
    functional: Vector | None = None


@dataclass(frozen=True)
class CoverageReport:
    fraction: Fraction
    covered: int
    samples: int
    uncovered: tuple[Vector, ...] = field(default=())
    region: str = "ball"


def _int_facets(f: Fan) -> list[list[tuple[int, ...]]]:
    return [[tuple(int(v) for v in n) for n, _ in cell_inequalities(f, c)] for c in range(len(f.cells))]


def _inside(facets: list[list[tuple[int, ...]]], x: Sequence[int]) -> bool:
    return any(all(sum(a * b for a, b in zip(n, x)) >= 0 for n in cell) for cell in facets)


def positive_functional(f: Fan) -> Vector | None:
    """Integer ``ℓ`` with ``ℓ(r) > 0`` on every ray, preferring a signed
    coordinate axis; None if no such functional exists."""
    d = f.dimension
    for k in range(d):
        for sign in (-1, 1):
            if all(sign * r[k] > 0 for r in f.rays):
                return tuple(Fraction(sign if j == k else 0) for j in range(d))
    res = gordan(list(f.rays))
    return primitive(res.x) if res.compatible else None


def draw_samples(f: Fan, p: Points, samples: int = 10_000, seed: int = 0,
                 radius=None, depth=None, denominator: int = 997) -> SampleSet:
    """Seeded points of ``|F|``, uniform up to rounding to ``1/scale``.

    Complete fans and fans whose rays admit no positive functional are
    sampled in the ball ``|x| <= radius``; other fans in the truncated cone
    ``ℓ(x) <= depth``, which holds far more of the support's volume at the
    scale where translated cells interact.
    """
    p = _points(p)
    d = f.dimension
    rng = random.Random(seed)
    scale = denominator
    for q in p:
        for x in q:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    facets = _int_facets(f)
    ell = None if f.complete else positive_functional(f)
    out: list[tuple[int, ...]] = []
    if ell is None:
        if radius is None:
            radius = 4 * max((abs(x) for q in p for x in q), default=1) + 10
        bound = Fraction(radius)
        big = int(bound * scale)
        while len(out) < samples:
            x = tuple(rng.randint(-big, big) for _ in range(d))
            if sum(t * t for t in x) > big * big or not any(x):
                continue
            if _inside(facets, x):
                out.append(x)
        return SampleSet(tuple(out), scale, "ball", bound)
    if depth is None:
        depth = 10 * (1 + max((sum(abs(a * b) for a, b in zip(ell, q)) for q in p), default=0))
    bound = Fraction(depth)
    k = max(range(d), key=lambda j: abs(ell[j]))
    tips = [tuple(x / dot(ell, r) for x in r) for r in f.rays]
    lo = [float(min(t[j] for t in tips)) for j in range(d)]
    hi = [float(max(t[j] for t in tips)) for j in range(d)]
    ellf = [float(v) for v in ell]
    while len(out) < samples:
        t = float(bound) * rng.random() ** (1 / d)
        y = [rng.uniform(lo[j], hi[j]) if j != k else 0.0 for j in range(d)]
        y[k] = (1 - sum(ellf[j] * y[j] for j in range(d) if j != k)) / ellf[k]
        x = tuple(round(t * v * scale) for v in y)
        if any(x) and _inside(facets, x):
            out.append(x)
    return SampleSet(tuple(out), scale, "cone", bound, ell)


def sample_coverage(f: Fan, p: Points, a: Assignment, samples: int = 10_000, seed: int = 0,
                    radius=None, depth=None, denominator: int = 997,
                    sample_set: SampleSet | None = None) -> CoverageReport:
    """Fraction of seeded sample points of ``|F|`` covered by some
    translated cell.  Membership is exact; see :func:`draw_samples` for the
    sampling domain.  A precomputed ``sample_set`` may be shared between
    assignments of the same fan and points."""
    p = _points(p)
    _check_sizes(f, p, a)
    if sample_set is None:
        if samples <= 0:
            warnings.warn("no samples requested; coverage reported as 1", stacklevel=2)
            return CoverageReport(Fraction(1), 0, 0)
        sample_set = draw_samples(f, p, samples, seed, radius, depth, denominator)
    n = len(sample_set.points)
    if n == 0:
        warnings.warn("no samples requested; coverage reported as 1", stacklevel=2)
        return CoverageReport(Fraction(1), 0, 0, region=sample_set.region)
    facets = _int_facets(f)
    sc = sample_set.scale
    # cell c covers X iff <n, X> >= scale * <n, p_sigma(c)> for its facets
    tests = []
    for c, cell in enumerate(facets):
        q = p[a.mapping[c]]
        tests.append([(nv, int(sc * dot(nv, q))) for nv in cell])
    covered = 0
    bad = []
    for x in sample_set.points:
        if any(all(sum(u * v for u, v in zip(nv, x)) >= b for nv, b in cell) for cell in tests):
            covered += 1
        elif len(bad) < 10:
            bad.append(tuple(Fraction(v, sc) for v in x))
    return CoverageReport(Fraction(covered, n), covered, n, tuple(bad), sample_set.region)
