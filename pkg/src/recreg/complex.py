"""Point configurations, subdivisions, fans, walls and coarsenings.

Cells are stored as sorted tuples of vertex (or ray) indices.  Geometry is
derived on demand.  Subdivisions and fans share one calculus through
homogenized vectors: a point ``p`` of a subdivision becomes ``(p, 1)`` and a
ray stays as it is, so in both cases a cell spans the whole homogeneous space
and a wall spans a hyperplane of it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Literal, Sequence, Union

from recreg.lp import gordan
from recreg.rational import (
    Vector,
    dot,
    nullspace,
    positive_multiple,
    primitive,
    rank,
    vadd,
    vec,
    vsub,
)

CellKind = Literal["points", "fan-section"]


class InvalidComplex(ValueError):
    """Validation failure; ``violations`` lists every problem found."""

    def __init__(self, violations: Sequence["Violation"]):
        self.violations = tuple(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class Violation:
    kind: str
    cells: tuple[int, ...]
    witness: Vector | None = None
    detail: str = ""

    def __str__(self) -> str:
        w = "" if self.witness is None else f" at {tuple(str(x) for x in self.witness)}"
        d = f" ({self.detail})" if self.detail else ""
        return f"{self.kind} in cells {list(self.cells)}{w}{d}"


@dataclass(frozen=True)
class PointConfiguration:
    dimension: int
    points: tuple[Vector, ...]
    labels: tuple[str, ...] | None = None

    @classmethod
    def make(cls, points: Iterable[Sequence], labels: Sequence[str] | None = None) -> "PointConfiguration":
        pts = tuple(vec(p) for p in points)
        if not pts:
            raise ValueError("empty point configuration")
        d = len(pts[0])
        if d < 1 or any(len(p) != d for p in pts):
            raise ValueError("points must share one positive dimension")
        if len(set(pts)) != len(pts):
            seen = {}
            for i, p in enumerate(pts):
                if p in seen:
                    raise ValueError(f"points {seen[p]} and {i} coincide")
                seen[p] = i
        if labels is not None and len(labels) != len(pts):
            raise ValueError("one label per point expected")
        return cls(d, pts, tuple(labels) if labels is not None else None)

    def __len__(self) -> int:
        return len(self.points)


WallKey = tuple[int, int]


@dataclass(frozen=True)
class Subdivision:
    config: PointConfiguration
    cells: tuple[tuple[int, ...], ...]
    kind: CellKind = "points"
    cell_labels: tuple[str, ...] | None = None
    wall_labels: tuple[tuple[int, int, str], ...] = ()
    origin: tuple[int, ...] | None = None
    """Original cell indices when this subdivision is a restriction."""

    @property
    def dimension(self) -> int:
        return self.config.dimension

    @property
    def vectors(self) -> tuple[Vector, ...]:
        one = (Fraction(1),)
        return tuple(p + one for p in self.config.points)

    def used_vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for c in self.cells for v in c}))


@dataclass(frozen=True)
class Fan:
    dimension: int
    rays: tuple[Vector, ...]
    cells: tuple[tuple[int, ...], ...]
    complete: bool = False
    cell_labels: tuple[str, ...] | None = None
    wall_labels: tuple[tuple[int, int, str], ...] = ()
    normals: tuple[tuple[int, int, Vector], ...] = ()
    """Optional explicit wall normals; each must be a positive multiple of
    the computed one."""
    origin: tuple[int, ...] | None = None

    @property
    def vectors(self) -> tuple[Vector, ...]:
        return self.rays

    def used_vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for c in self.cells for v in c}))


Complex = Union[Subdivision, Fan]


@dataclass(frozen=True)
class Wall:
    cells: tuple[int, int]
    ridge: tuple[int, ...]
    normal: Vector
    label: str

    @property
    def key(self) -> WallKey:
        return self.cells


@dataclass(frozen=True)
class Coarsening:
    base: Complex
    groups: tuple[tuple[int, ...], ...]

    def group_of(self) -> dict[int, int]:
        return {c: g for g, cells in enumerate(self.groups) for c in cells}

    def group_walls(self) -> tuple[Wall, ...]:
        """Walls of the base complex that separate two different groups."""
        owner = self.group_of()
        return tuple(w for w in walls(self.base) if owner[w.cells[0]] != owner[w.cells[1]])

    def is_identity(self) -> bool:
        return len(self.groups) == len(self.base.cells)

    def is_trivial(self) -> bool:
        return len(self.groups) == 1


def _cell_label(c: Complex, i: int) -> str:
    return c.cell_labels[i] if c.cell_labels else str(i)


def _barycenter(vectors: Sequence[Vector]) -> Vector:
    total = vectors[0]
    for v in vectors[1:]:
        total = vadd(total, v)
    return tuple(x / len(vectors) for x in total)


def _normal(c: Complex, ridge: Sequence[int], cell_d: Sequence[int]) -> Vector:
    """Primitive integer normal to the ridge, pointing into ``cell_d``."""
    if isinstance(c, Fan):
        basis = nullspace([c.rays[v] for v in ridge], c.dimension)
        inside = _barycenter([c.rays[v] for v in cell_d])
    else:
        base = c.config.points[ridge[0]]
        diffs = [vsub(c.config.points[v], base) for v in ridge[1:]]
        basis = nullspace(diffs, c.dimension) if diffs else nullspace([], c.dimension)
        inside = vsub(_barycenter([c.config.points[v] for v in cell_d]), base)
    if len(basis) != 1:
        raise InvalidComplex([Violation("degenerate ridge", tuple(cell_d))])
    n = primitive(basis[0])
    s = dot(n, inside)
    if s == 0:
        raise InvalidComplex([Violation("cell on its own wall hyperplane", tuple(cell_d))])
    return n if s > 0 else tuple(-x for x in n)


@lru_cache(maxsize=256)
def walls(c: Complex) -> tuple[Wall, ...]:
    """All interior walls, ordered by cell pair, normals pointing from the
    first cell to the second."""
    vectors = c.vectors
    h = len(vectors[0])
    labels = {(a, b): lab for a, b, lab in c.wall_labels}
    overrides = {(a, b): n for a, b, n in getattr(c, "normals", ())}
    out = []
    for a, b in itertools.combinations(range(len(c.cells)), 2):
        shared = sorted(set(c.cells[a]) & set(c.cells[b]))
        if len(shared) < h - 1:
            continue
        if rank([vectors[v] for v in shared]) != h - 1:
            continue
        n = _normal(c, shared, c.cells[b])
        if (a, b) in overrides:
            given = overrides[(a, b)]
            if not positive_multiple(given, n):
                raise InvalidComplex([Violation(
                    "explicit normal not a positive multiple of the computed one",
                    (a, b), detail=f"computed {tuple(map(str, n))}")])
            n = given
        label = labels.get((a, b), f"{_cell_label(c, a)}-{_cell_label(c, b)}")
        out.append(Wall((a, b), tuple(shared), n, label))
    return tuple(out)


def wall_by_label(c: Complex, label: str) -> Wall:
    for w in walls(c):
        if w.label == label:
            return w
    raise KeyError(label)


def dual_graph(c: Complex) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {i: [] for i in range(len(c.cells))}
    for w in walls(c):
        a, b = w.cells
        adj[a].append(b)
        adj[b].append(a)
    return adj


def cone_facets(vectors: Sequence[Vector]) -> tuple[tuple[Vector, frozenset[int]], ...]:
    """Facets of the cone spanned by ``vectors`` (full-dimensional, pointed).

    Returns ``(inward normal, indices of generators on the facet)`` pairs.
    """
    dim = len(vectors[0])
    found: dict[frozenset[int], Vector] = {}
    for combo in itertools.combinations(range(len(vectors)), dim - 1):
        basis = nullspace([vectors[i] for i in combo], dim)
        if len(basis) != 1:
            continue
        n = primitive(basis[0])
        signs = [dot(n, v) for v in vectors]
        if all(s >= 0 for s in signs):
            pass
        elif all(s <= 0 for s in signs):
            n = tuple(-x for x in n)
        else:
            continue
        tight = frozenset(i for i, s in enumerate(signs) if s == 0)
        found.setdefault(tight, n)
    return tuple((n, t) for t, n in found.items())


@lru_cache(maxsize=4096)
def cell_inequalities(c: Complex, cell: int) -> tuple[tuple[Vector, Fraction], ...]:
    """Inequalities ``⟨n, x⟩ >= b`` describing a cell.

    For a fan ``b`` is zero; for a subdivision the cone over the homogenized
    points is cut back down to the cell.
    """
    idx = c.cells[cell]
    vs = [c.vectors[i] for i in idx]
    out = []
    for n, _ in cone_facets(vs):
        if isinstance(c, Fan):
            out.append((n, Fraction(0)))
        else:
            out.append((n[:-1], -n[-1]))
    return tuple(out)


def in_cell(c: Complex, cell: int, x: Sequence[Fraction], strict: bool = False) -> bool:
    for n, b in cell_inequalities(c, cell):
        s = dot(n, x)
        if s < b or (strict and s == b):
            return False
    return True


def boundary_facets(c: Complex) -> tuple[tuple[Vector, Fraction], ...]:
    """Facets of cells that are not walls, as inward inequalities.

    For a subdivision or fan with convex support these are the facets of the
    support.
    """
    ridges = {}
    for w in walls(c):
        ridges.setdefault(w.cells[0], []).append(frozenset(w.ridge))
        ridges.setdefault(w.cells[1], []).append(frozenset(w.ridge))
    out = []
    for i, cell in enumerate(c.cells):
        vs = [c.vectors[v] for v in cell]
        for n, tight in cone_facets(vs):
            face = frozenset(cell[t] for t in tight)
            if any(face <= r for r in ridges.get(i, [])):
                continue
            if isinstance(c, Fan):
                out.append((n, Fraction(0)))
            else:
                out.append((n[:-1], -n[-1]))
    return tuple(dict.fromkeys(out))


# ---------------------------------------------------------------- validation


def _orient(a: Vector, b: Vector, c: Vector) -> Fraction:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def convex_hull_2d(points: Sequence[Vector]) -> list[Vector]:
    """Counter-clockwise hull vertices (monotone chain, collinear dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Vector] = []
    for p in pts:
        while len(lower) >= 2 and _orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Vector] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def polygon_area2(poly: Sequence[Vector]) -> Fraction:
    """Twice the signed area."""
    return sum((poly[i][0] * poly[(i + 1) % len(poly)][1]
                - poly[(i + 1) % len(poly)][0] * poly[i][1] for i in range(len(poly))),
               Fraction(0))


def _interiors_overlap_2d(p: list[Vector], q: list[Vector]) -> bool:
    # Separating axis test on the edge lines of two convex ccw polygons.
    for poly, other in ((p, q), (q, p)):
        for i in range(len(poly)):
            a, b = poly[i], poly[(i + 1) % len(poly)]
            if all(_orient(a, b, x) <= 0 for x in other):
                return False
    return True


def _point_in_polygon(poly: list[Vector], x: Vector) -> bool:
    return all(_orient(poly[i], poly[(i + 1) % len(poly)], x) >= 0 for i in range(len(poly)))


def subdivision_violations(s: Subdivision) -> list[Violation]:
    pts = s.config.points
    vectors = s.vectors
    d = s.dimension
    out: list[Violation] = []
    for i, cell in enumerate(s.cells):
        if rank([vectors[v] for v in cell]) != d + 1:
            out.append(Violation("cell not full-dimensional", (i,)))
    if out or d > 2:
        if not out and d > 2:
            out.extend(_face_to_face_general(s))
        return out
    if d == 1:
        spans = [(min(pts[v][0] for v in c), max(pts[v][0] for v in c)) for c in s.cells]
        for i, j in itertools.combinations(range(len(spans)), 2):
            lo, hi = max(spans[i][0], spans[j][0]), min(spans[i][1], spans[j][1])
            if lo < hi:
                out.append(Violation("overlapping interiors", (i, j), ((lo + hi) / 2,)))
        for i, cell in enumerate(s.cells):
            for v in range(len(pts)):
                if v not in cell and spans[i][0] <= pts[v][0] <= spans[i][1] and \
                        any(v in other for other in s.cells):
                    out.append(Violation("non-face-to-face contact", (i,), pts[v]))
        used = s.used_vertices()
        total = sum(hi - lo for lo, hi in spans)
        if total != max(pts[v][0] for v in used) - min(pts[v][0] for v in used):
            out.append(Violation("gap between cells", tuple(range(len(s.cells)))))
        return out
    hulls = [convex_hull_2d([pts[v] for v in c]) for c in s.cells]
    for i, cell in enumerate(s.cells):
        on_hull = set(hulls[i])
        poly = hulls[i]
        for v in cell:
            p = pts[v]
            if p in on_hull:
                continue
            if all(_orient(poly[k], poly[(k + 1) % len(poly)], p) > 0 for k in range(len(poly))):
                out.append(Violation("non-convex cell: listed point inside the cell", (i,), p))
    for i, j in itertools.combinations(range(len(s.cells)), 2):
        if _interiors_overlap_2d(hulls[i], hulls[j]):
            wit = _barycenter(hulls[i] + hulls[j])
            out.append(Violation("overlapping interiors", (i, j), wit))
            continue
        for a, b in ((i, j), (j, i)):
            for v in s.cells[a]:
                if v not in s.cells[b] and _point_in_polygon(hulls[b], pts[v]):
                    out.append(Violation("non-face-to-face contact", (a, b), pts[v]))
    if not out:
        used = s.used_vertices()
        hull = convex_hull_2d([pts[v] for v in used])
        if sum(polygon_area2(h) for h in hulls) != polygon_area2(hull):
            out.append(Violation("gap between cells", tuple(range(len(s.cells))),
                                 detail="cell areas do not add up to the hull area"))
    return out


def _face_to_face_general(c: Complex) -> list[Violation]:
    out = []
    for w in walls(c):
        a, b = w.cells
        n = _normal(c, w.ridge, c.cells[b])
        vs = c.vectors
        if isinstance(c, Subdivision):
            base = c.config.points[w.ridge[0]]
            side = lambda v: dot(n, vsub(c.config.points[v], base))  # noqa: E731
        else:
            side = lambda v: dot(n, vs[v])  # noqa: E731
        if any(side(v) >= 0 for v in c.cells[a] if v not in w.ridge) or \
                any(side(v) <= 0 for v in c.cells[b] if v not in w.ridge):
            out.append(Violation("cells not separated by their wall", (a, b)))
    return out


def validate_subdivision(config: PointConfiguration, cells: Iterable[Iterable[int]],
                         kind: CellKind = "points", cell_labels: Sequence[str] | None = None,
                         wall_labels: Iterable[tuple[int, int, str]] = (),
                         trusted: bool = False) -> Subdivision:
    """Build a Subdivision, raising :class:`InvalidComplex` on any violation.

    Coverage and overlap are checked exactly for ``d <= 2``.  In higher
    dimension the check is limited to full-dimensionality and separation of
    adjacent cells by their walls; ``trusted`` skips geometric checks.
    """
    cells = tuple(tuple(sorted(set(c))) for c in cells)
    if not cells:
        raise InvalidComplex([Violation("no cells", ())])
    for i, c in enumerate(cells):
        if any(v < 0 or v >= len(config.points) for v in c):
            raise InvalidComplex([Violation("vertex index out of range", (i,))])
    if cell_labels is not None and len(cell_labels) != len(cells):
        raise InvalidComplex([Violation("one label per cell expected", ())])
    s = Subdivision(config, cells, kind, tuple(cell_labels) if cell_labels else None,
                    tuple((a, b, str(lab)) for a, b, lab in wall_labels))
    if not trusted:
        v = subdivision_violations(s)
        if v:
            raise InvalidComplex(v)
    _check_wall_labels(s)
    return s


def _check_wall_labels(c: Complex) -> None:
    keys = {w.cells for w in walls(c)}
    for a, b, lab in c.wall_labels:
        if (a, b) not in keys:
            raise InvalidComplex([Violation(f"label {lab!r} names a non-wall", (a, b))])
    labs = [w.label for w in walls(c)]
    if len(set(labs)) != len(labs):
        raise InvalidComplex([Violation("duplicate wall labels", ())])


def fan_violations(f: Fan) -> list[Violation]:
    out = []
    for i, cell in enumerate(f.cells):
        rays = [f.rays[v] for v in cell]
        if rank(rays) != f.dimension:
            out.append(Violation("cell not full-dimensional", (i,)))
        elif not gordan(rays).compatible:
            out.append(Violation("cell not pointed", (i,)))
    if out:
        return out
    out.extend(_face_to_face_general(f))
    if f.complete:
        out.extend(_completeness_violations(f))
    return out


def _completeness_violations(f: Fan) -> list[Violation]:
    out = []
    # Every facet of every cell must be a wall.
    for n, b in boundary_facets(f):
        out.append(Violation("complete fan has a boundary facet", (), n))
        break
    if out or f.dimension != 2:
        return out
    # In the plane also require winding number one around the origin.
    probe = (Fraction(1), Fraction(1, 10**6 + 3))
    while any(dot((r[1], -r[0]), probe) == 0 for r in f.rays):
        probe = (probe[0], probe[1] / 3 + Fraction(1, 7919))
    count = sum(1 for i in range(len(f.cells)) if in_cell(f, i, probe, strict=True))
    if count != 1:
        out.append(Violation("planar fan does not wind once", (), probe, f"covered {count} times"))
    return out


def validate_fan(rays: Iterable[Sequence], cells: Iterable[Iterable[int]], complete: bool = False,
                 cell_labels: Sequence[str] | None = None,
                 wall_labels: Iterable[tuple[int, int, str]] = (),
                 normals: Iterable[tuple[int, int, Sequence]] = (),
                 trusted: bool = False) -> Fan:
    rays = tuple(vec(r) for r in rays)
    if not rays:
        raise InvalidComplex([Violation("no rays", ())])
    d = len(rays[0])
    if any(len(r) != d for r in rays):
        raise InvalidComplex([Violation("rays of mixed dimension", ())])
    cells = tuple(tuple(sorted(set(c))) for c in cells)
    for i, c in enumerate(cells):
        if any(v < 0 or v >= len(rays) for v in c):
            raise InvalidComplex([Violation("ray index out of range", (i,))])
    f = Fan(d, rays, cells, complete, tuple(cell_labels) if cell_labels else None,
            tuple((a, b, str(lab)) for a, b, lab in wall_labels),
            tuple((a, b, vec(n)) for a, b, n in normals))
    if not trusted:
        v = fan_violations(f)
        if v:
            raise InvalidComplex(v)
    _check_wall_labels(f)
    return f


def fan_from_section(s: Subdivision, height, normals: Iterable[tuple[int, int, Sequence]] = ()) -> Fan:
    """Cone over ``s`` placed in the hyperplane ``x_{d+1} = height``."""
    h = Fraction(height)
    if h == 0:
        raise ValueError("section height must be non-zero")
    rays = tuple(p + (h,) for p in s.config.points)
    f = Fan(s.dimension + 1, rays, s.cells, False, s.cell_labels, s.wall_labels,
            tuple((a, b, vec(n)) for a, b, n in normals))
    walls(f)  # validates explicit normals
    return f


def section_points(f: Fan, height) -> tuple[Vector, ...]:
    """Intersect each ray with ``x_d = height`` and drop the last coordinate."""
    h = Fraction(height)
    out = []
    for r in f.rays:
        if r[-1] == 0 or (r[-1] > 0) != (h > 0):
            raise ValueError("ray does not meet the section hyperplane")
        out.append(tuple(x * h / r[-1] for x in r[:-1]))
    return tuple(out)


def restrict_cells(c: Complex, group: Sequence[int]) -> Complex:
    """Sub-complex on the given cells, re-indexed on the vertices they use."""
    group = tuple(sorted(group))
    used = sorted({v for i in group for v in c.cells[i]})
    index = {v: k for k, v in enumerate(used)}
    cells = tuple(tuple(index[v] for v in c.cells[i]) for i in group)
    pos = {i: k for k, i in enumerate(group)}
    labels = tuple(_cell_label(c, i) for i in group)
    wl = tuple((pos[a], pos[b], lab) for a, b, lab in c.wall_labels if a in pos and b in pos)
    origin = tuple((c.origin[i] if c.origin else i) for i in group)
    if isinstance(c, Fan):
        nm = tuple((pos[a], pos[b], n) for a, b, n in c.normals if a in pos and b in pos)
        return Fan(c.dimension, tuple(c.rays[v] for v in used), cells, False, labels, wl, nm, origin)
    labs = tuple(c.config.labels[v] for v in used) if c.config.labels else None
    cfg = PointConfiguration(c.dimension, tuple(c.config.points[v] for v in used), labs)
    return Subdivision(cfg, cells, c.kind, labels, wl, origin)
