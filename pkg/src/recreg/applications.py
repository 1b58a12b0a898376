"""Spider-web redundancy and directional-graph embeddings."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from recreg.complex import (
    Complex,
    InvalidComplex,
    PointConfiguration,
    Subdivision,
    Violation,
    convex_hull_2d,
    validate_subdivision,
    walls,
)
from recreg.floodlight import Assignment, PreconditionError
from recreg.lp import gordan
from recreg.matching import min_cost_assignment
from recreg.rational import Vector, dot, is_zero, solve_linear, vec, vsub
from recreg.rectree import is_recursively_regular
from recreg.regularity import finest_regular_coarsening
from recreg.visibility import simple_cycles

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


# ------------------------------------------------------------ spider webs


@dataclass(frozen=True)
class SpiderWeb:
    vertices: tuple[Vector, ...]
    cables: tuple[Edge, ...]
    pinned: frozenset[int]

    @classmethod
    def make(cls, vertices, cables, pinned=None) -> "SpiderWeb":
        vs = tuple(vec(v) for v in vertices)
        if any(len(v) != 2 for v in vs):
            raise ValueError("spider webs are planar")
        cab = tuple(sorted({_edge(int(a), int(b)) for a, b in cables}))
        if any(a == b or b >= len(vs) or a < 0 for a, b in cab):
            raise ValueError("bad cable endpoints")
        on_hull = _hull_boundary(vs)
        pin = frozenset(on_hull if pinned is None else (int(x) for x in pinned))
        if pin != on_hull:
            raise ValueError("pinned vertices must be exactly those on the convex hull")
        adj = {i: set() for i in range(len(vs))}
        for a, b in cab:
            adj[a].add(b)
            adj[b].add(a)
        seen, stack = {0}, [0]
        while stack:
            x = stack.pop()
            for y in adj[x] - seen:
                seen.add(y)
                stack.append(y)
        if len(seen) != len(vs):
            raise ValueError("cable graph is not connected")
        return cls(vs, cab, pin)


def _hull_boundary(vs: Sequence[Vector]) -> frozenset[int]:
    hull = convex_hull_2d(list(vs))
    out = set()
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        for k, p in enumerate(vs):
            cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
            if cross == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and \
                    min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
                out.add(k)
    return frozenset(out)


def _angle_key(d: Vector):
    # Exact angular order: half-plane first, then by cross product.
    half = 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1
    return half, d


def _ccw_sorted(center: Vector, nbrs: list[int], vs: Sequence[Vector]) -> list[int]:
    import functools

    def cmp(a: int, b: int) -> int:
        da, db = vsub(vs[a], center), vsub(vs[b], center)
        ha, hb = _angle_key(da)[0], _angle_key(db)[0]
        if ha != hb:
            return ha - hb
        cross = da[0] * db[1] - da[1] * db[0]
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(nbrs, key=functools.cmp_to_key(cmp))


def web_faces(w: SpiderWeb) -> list[tuple[int, ...]]:
    """Bounded faces of the straight-line drawing, as ccw vertex cycles."""
    vs = w.vertices
    adj: dict[int, list[int]] = {i: [] for i in range(len(vs))}
    for a, b in w.cables:
        adj[a].append(b)
        adj[b].append(a)
    order = {v: _ccw_sorted(vs[v], adj[v], vs) for v in adj}
    seen: set[tuple[int, int]] = set()
    faces = []
    for a, b in w.cables:
        for start in ((a, b), (b, a)):
            if start in seen:
                continue
            face = []
            u, v = start
            while (u, v) not in seen:
                seen.add((u, v))
                face.append(u)
                ring = order[v]
                k = ring.index(u)
                u, v = v, ring[(k - 1) % len(ring)]
            area2 = sum(vs[face[i]][0] * vs[face[(i + 1) % len(face)]][1]
                        - vs[face[(i + 1) % len(face)]][0] * vs[face[i]][1] for i in range(len(face)))
            if area2 > 0:
                faces.append(tuple(face))
    return faces


def web_subdivision(w: SpiderWeb) -> Subdivision:
    faces = web_faces(w)
    cfg = PointConfiguration.make(w.vertices)
    for i, f in enumerate(faces):
        hull = convex_hull_2d([w.vertices[v] for v in f])
        if len(hull) < 3:
            raise InvalidComplex([Violation("degenerate face", (i,))])
        for k, v in enumerate(f):
            a, b, c = (w.vertices[f[k - 1]], w.vertices[v], w.vertices[f[(k + 1) % len(f)]])
            if (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]) < 0:
                raise InvalidComplex([Violation("non-convex cell in the drawing", (i,), b)])
    return validate_subdivision(cfg, faces)


@dataclass(frozen=True)
class WebReport:
    redundant: frozenset[Edge]
    rigid: bool
    """True when the associated subdivision is recursively regular, which
    guarantees rigidity; False means no rigidity claim is made."""
    frc_identity: bool
    """Necessary for infinitesimal rigidity."""


def spiderweb_redundant_cables(w: SpiderWeb) -> WebReport:
    """Interior cables relaxed by the finest regular coarsening of the
    drawing carry no stress in any equilibrium."""
    s = web_subdivision(w)
    frc = finest_regular_coarsening(s)
    cables = set(w.cables)
    redundant = set()
    for wall in walls(s):
        if wall.label in frc.relaxed_walls:
            for a, b in itertools.combinations(wall.ridge, 2):
                if _edge(a, b) in cables:
                    redundant.add(_edge(a, b))
    rec, _ = is_recursively_regular(s)
    return WebReport(frozenset(redundant), rec, frc.coarsening.is_identity())


# ------------------------------------------------------------ directional graphs


@dataclass(frozen=True)
class DirectionalGraph:
    n: int
    arcs: tuple[tuple[int, int, Vector], ...]
    """``(u, v, h(u, v))``, one entry per edge; ``h(v, u) = -h(u, v)``."""

    @classmethod
    def make(cls, n: int, arcs) -> "DirectionalGraph":
        seen: dict[Edge, tuple[int, int, Vector]] = {}
        dim = None
        for u, v, h in arcs:
            u, v, h = int(u), int(v), vec(h)
            if u == v:
                raise ValueError("loops are not allowed; h(v, v) = 0")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("arc endpoint out of range")
            dim = dim or len(h)
            if len(h) != dim:
                raise ValueError("arc vectors of mixed dimension")
            key = _edge(u, v)
            if key in seen:
                pu, pv, ph = seen[key]
                other = ph if (pu, pv) == (u, v) else tuple(-x for x in ph)
                if other != h:
                    raise ValueError(f"h is not antisymmetric on edge {key}")
                continue
            seen[key] = (u, v, h)
        return cls(n, tuple(seen[k] for k in sorted(seen)))

    @classmethod
    def from_complex(cls, c: Complex) -> "DirectionalGraph":
        """Cells as vertices, ``h(C, D)`` the wall normal from C to D."""
        return cls.make(len(c.cells), [(w.cells[0], w.cells[1], w.normal) for w in walls(c)])

    @classmethod
    def from_drawing(cls, edges, drawing) -> "DirectionalGraph":
        pts = [vec(p) for p in drawing]
        return cls.make(len(pts), [(u, v, vsub(pts[u], pts[v])) for u, v in edges])

    def h(self, u: int, v: int) -> Vector:
        for a, b, vecr in self.arcs:
            if (a, b) == (u, v):
                return vecr
            if (a, b) == (v, u):
                return tuple(-x for x in vecr)
        raise KeyError((u, v))

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {i: [] for i in range(self.n)}
        for u, v, _ in self.arcs:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def forcing_cycle(g: DirectionalGraph, max_len: int | None = None):
    """First cycle ``v_0 .. v_k`` and direction ``δ`` with
    ``⟨h(v_i, v_{i+1}), δ⟩ > 0`` for every step, or None."""
    max_len = g.n if max_len is None else max_len
    for cyc in simple_cycles(g.adjacency(), max_len):
        rows = [g.h(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
        res = gordan(rows)
        if res.compatible:
            return res.x, cyc
    return None


@dataclass(frozen=True)
class EdgeMargin:
    edge: tuple[int, int]
    margin: Fraction


def embedding_margins(g: DirectionalGraph, points, sigma: Assignment) -> list[EdgeMargin]:
    pts = [vec(p) for p in points]
    if len(sigma.mapping) != g.n or len(pts) != g.n:
        raise PreconditionError("assignment must be a bijection between vertices and points")
    return [EdgeMargin((u, v), dot(h, vsub(pts[sigma.mapping[u]], pts[sigma.mapping[v]])))
            for u, v, h in g.arcs]


def check_embedding(g: DirectionalGraph, points, sigma: Assignment) -> list[EdgeMargin]:
    """Edges with ``⟨h(u, v), σ(u) - σ(v)⟩ < 0``; empty means an embedding."""
    return [m for m in embedding_margins(g, points, sigma) if m.margin < 0]


def validate_drawing(g: DirectionalGraph, drawing) -> list[Vector]:
    pts = [vec(p) for p in drawing]
    if len(pts) != g.n:
        raise PreconditionError("one drawing point per vertex expected")
    for u, v, h in g.arcs:
        diff = vsub(pts[u], pts[v])
        sol = solve_linear([[x] for x in h], diff)
        if is_zero(h) or sol.x is None or sol.x[0] <= 0:
            raise PreconditionError(f"drawing does not realize edge ({u}, {v}) with a positive multiple")
    return pts


def embed_drawable(g: DirectionalGraph, drawing, points) -> Assignment:
    """Least-squares matching of the drawing onto ``points``."""
    pi = validate_drawing(g, drawing)
    pts = [vec(p) for p in points]
    if len(pts) != g.n:
        raise PreconditionError("one point per vertex expected")
    cost = [[dot(vsub(a, b), vsub(a, b)) for b in pts] for a in pi]
    return Assignment(min_cost_assignment(cost))
