"""In-front digraphs and acyclicity, per direction and for all directions."""

from __future__ import annotations

import graphlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from recreg.complex import Complex, Fan, Subdivision, dual_graph, walls
from recreg.lp import LinearProgram, gordan, lp_solve
from recreg.rational import Vector, dot, is_zero, vadd, vec, vscale


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    wall: str
    margin: Fraction


@dataclass(frozen=True)
class InFrontDigraph:
    vertices: tuple[int, ...]
    arcs: tuple[Arc, ...]


@dataclass(frozen=True)
class DirectionVerdict:
    acyclic: bool
    order: tuple[int, ...] = ()
    cycle: tuple[int, ...] = ()


@dataclass(frozen=True)
class CycleCertificate:
    cycle: tuple[int, ...]
    coefficients: tuple[Fraction, ...]
    """One coefficient per traversal step ``cycle[i] -> cycle[i+1]``; zero
    entries mean the step is not needed for the contradiction."""
    identity: bool

    def to_json(self) -> dict:
        return {"cycle": list(self.cycle), "coefficients": [str(x) for x in self.coefficients],
                "identity": self.identity}


@dataclass(frozen=True)
class AllDirectionsVerdict:
    acyclic: bool
    certificates: tuple[CycleCertificate, ...] = ()
    direction: Vector | None = None
    cycle: tuple[int, ...] = ()


def _check_direction(v: Sequence) -> Vector:
    v = vec(v)
    if is_zero(v):
        raise ValueError("direction must be non-zero")
    return v


def infront_digraph(c: Complex, direction: Sequence) -> InFrontDigraph:
    """Arc ``D -> C`` for each wall whose normal ``u`` (from C to D) has
    ``⟨u, v⟩ > 0``; walls orthogonal to ``v`` give no arc."""
    v = _check_direction(direction)
    arcs = []
    for w in walls(c):
        if len(w.normal) != len(v):
            raise ValueError(f"direction of length {len(v)} for dimension {len(w.normal)}")
        m = dot(w.normal, v)
        a, b = w.cells
        if m > 0:
            arcs.append(Arc(b, a, w.label, m))
        elif m < 0:
            arcs.append(Arc(a, b, w.label, -m))
    return InFrontDigraph(tuple(range(len(c.cells))), tuple(arcs))


def acyclic_in_direction(c: Complex, direction: Sequence) -> DirectionVerdict:
    g = infront_digraph(c, direction)
    ts = graphlib.TopologicalSorter({v: set() for v in g.vertices})
    for arc in g.arcs:
        ts.add(arc.head, arc.tail)
    try:
        order = tuple(ts.static_order())
    except graphlib.CycleError as err:
        # graphlib lists the cycle along the arcs, closing node repeated
        cyc = list(err.args[1])
        return DirectionVerdict(False, cycle=tuple(cyc[:-1]))
    return DirectionVerdict(True, order=order)


def simple_cycles(adj: dict[int, list[int]], max_len: int) -> Iterator[tuple[int, ...]]:
    """Each simple cycle of an undirected graph once, starting at its
    smallest vertex, with ``cycle[1] < cycle[-1]``."""
    for s in sorted(adj):
        path = [s]
        on_path = {s}

        def extend(x: int) -> Iterator[tuple[int, ...]]:
            for y in sorted(adj[x]):
                if y == s and len(path) >= 3 and path[1] < path[-1]:
                    yield tuple(path)
                elif y > s and y not in on_path and len(path) < max_len:
                    path.append(y)
                    on_path.add(y)
                    yield from extend(y)
                    path.pop()
                    on_path.discard(y)

        yield from extend(s)


def oriented_normals(c: Complex, cycle: Sequence[int]) -> list[Vector]:
    """Normal of each step ``cycle[i] -> cycle[i+1]``, pointing forward."""
    by_pair = {w.cells: w.normal for w in walls(c)}
    out = []
    for i in range(len(cycle)):
        a, b = cycle[i], cycle[(i + 1) % len(cycle)]
        if (a, b) in by_pair:
            out.append(by_pair[(a, b)])
        elif (b, a) in by_pair:
            out.append(tuple(-x for x in by_pair[(b, a)]))
        else:
            raise ValueError(f"cells {a} and {b} share no wall")
    return out


def verify_cycle_certificate(c: Complex, cycle: Sequence[int], coefficients: Sequence) -> bool:
    """Exact check of ``Σ λ_i u_i = 0`` with ``λ >= 0`` and ``λ != 0``."""
    lam = vec(coefficients)
    normals = oriented_normals(c, cycle)
    if len(lam) != len(normals) or any(x < 0 for x in lam) or all(x == 0 for x in lam):
        return False
    total = tuple(Fraction(0) for _ in normals[0])
    for l, n in zip(lam, normals):
        total = vadd(total, vscale(l, n))
    return is_zero(total)


def _positive_certificate(normals: list[Vector]) -> Vector | None:
    # minimize Σλ subject to Σ λ_i u_i = 0, λ_i >= 1
    k = len(normals)
    d = len(normals[0])
    matrix = [[normals[i][j] for i in range(k)] for j in range(d)]
    matrix += [[int(i == j) for i in range(k)] for j in range(k)]
    rel = ["="] * d + [">="] * k
    rhs = [0] * d + [1] * k
    out = lp_solve(LinearProgram.build([-1] * k, matrix, rel, rhs))
    return out.primal if out.status == "optimal" else None


def acyclic_all_directions(f: Complex, max_len: int | None = None) -> AllDirectionsVerdict:
    """Test every simple dual-graph cycle up to ``max_len`` cells for a
    direction making it a visibility cycle.

    Only cycles of adjacent cells are examined, as in the usual method for
    fans with small dual graphs.
    """
    if max_len is None:
        max_len = len(f.cells)
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    certs = []
    for cyc in simple_cycles(dual_graph(f), max_len):
        normals = oriented_normals(f, cyc)
        res = gordan(normals)
        if res.compatible:
            # ⟨u_i, δ⟩ > 0 puts cycle[i+1] in front of cycle[i]: the visibility
            # cycle runs against the traversal.
            return AllDirectionsVerdict(False, direction=res.x, cycle=tuple(reversed(cyc)))
        lam = _positive_certificate(normals)
        if lam is None:
            lam = res.y
        ok = verify_cycle_certificate(f, cyc, lam)
        certs.append(CycleCertificate(cyc, tuple(lam), ok))
    return AllDirectionsVerdict(True, certificates=tuple(certs))


def acyclic_from_point(section: Subdivision, x: Sequence, height=Fraction(-1, 8)) -> DirectionVerdict:
    """Visibility from a point of a planar section, through the cone over
    the section at ``height``: the direction is ``(-x, -height)``."""
    from recreg.complex import fan_from_section

    h = Fraction(height)
    f = fan_from_section(section, h)
    return acyclic_in_direction(f, tuple(-t for t in vec(x)) + (-h,))


def signed_terms_to_steps(c: Complex, cycle: Sequence[int], terms: dict[str, object]) -> tuple[Fraction, ...]:
    """Per-step coefficients from a combination ``Σ c_w · normal(w)`` over
    wall labels.  A step running against a wall's orientation takes
    ``-c_w``.  Raises ValueError if a term names a wall off the cycle."""
    by_label = {w.label: w for w in walls(c)}
    steps = {}
    for i in range(len(cycle)):
        steps[frozenset((cycle[i], cycle[(i + 1) % len(cycle)]))] = i
    lam = [Fraction(0)] * len(cycle)
    for label, coef in terms.items():
        if label not in by_label:
            raise ValueError(f"unknown wall {label!r}")
        w = by_label[label]
        i = steps.get(frozenset(w.cells))
        if i is None:
            raise ValueError(f"wall {label!r} is not a step of the cycle")
        forward = w.cells == (cycle[i], cycle[(i + 1) % len(cycle)])
        lam[i] = Fraction(coef) if forward else -Fraction(coef)
    return tuple(lam)


def verify_signed_certificate(c: Complex, cycle: Sequence[int], terms: dict[str, object]) -> bool:
    try:
        lam = signed_terms_to_steps(c, cycle, terms)
    except ValueError:
        return False
    return verify_cycle_certificate(c, cycle, lam)
