import itertools
import random
from fractions import Fraction as F

import pytest

from recreg.applications import (
    DirectionalGraph,
    SpiderWeb,
    check_embedding,
    embed_drawable,
    embedding_margins,
    forcing_cycle,
    spiderweb_redundant_cables,
    validate_drawing,
    web_subdivision,
)
from recreg.complex import InvalidComplex, fan_from_section, walls
from recreg.floodlight import Assignment, PreconditionError
from recreg.rational import dot, vsub

UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
CUBE = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
CUBE_EDGES = [(i, j) for i, j in itertools.combinations(range(8), 2)
              if sum(a != b for a, b in zip(CUBE[i], CUBE[j])) == 1]
CUBE_DRAWING = [(x + F(z, 3), y + F(z, 2)) for x, y, z in CUBE]


def interior(w):
    return {c for c in w.cables if not (c[0] in w.pinned and c[1] in w.pinned)}


# ------------------------------------------------------------ webs


def test_triangulated_regular_web_has_no_redundant_cables():
    w = SpiderWeb.make([(0, 0), (4, 0), (0, 4), (1, 1)], [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])
    rep = spiderweb_redundant_cables(w)
    assert rep.redundant == frozenset() and rep.rigid and rep.frc_identity


def test_fig2_web(load):
    w, e = load("fig2-web"), load("appendixE")
    rep = spiderweb_redundant_cables(w)
    assert len(rep.redundant) == 10 and rep.rigid and not rep.frc_identity
    labelled = {frozenset(e.config.points[i] for i in x.ridge) for x in walls(e) if x.label in {str(i) for i in range(1, 11)}}
    assert {frozenset(w.vertices[i] for i in c) for c in rep.redundant} == labelled


def test_fig3_web(load):
    w = load("fig3-web")
    rep = spiderweb_redundant_cables(w)
    assert rep.redundant == interior(w) and len(rep.redundant) == 13
    assert not rep.rigid


def test_removing_redundant_cables_relaxes_nothing(load):
    # fig3-web loses every interior cable and falls apart, so only
    # fig2-web is re-run
    w = load("fig2-web")
    rep = spiderweb_redundant_cables(w)
    pruned = SpiderWeb.make(w.vertices, set(w.cables) - rep.redundant)
    again = spiderweb_redundant_cables(pruned)
    assert again.redundant == frozenset() and again.frc_identity


def test_web_validation():
    with pytest.raises(ValueError):
        SpiderWeb.make([(0, 0), (1, 0), (0, 1)], [(0, 1)])
    with pytest.raises(ValueError):
        SpiderWeb.make([(0, 0), (1, 0), (0, 1)], [(0, 1), (1, 2), (2, 0)], pinned=[0, 1])
    # a reflex face: the dart (2, 2) dents the quadrilateral 0-1-3-2
    dart = SpiderWeb.make([(0, 0), (4, 0), (2, 1), (2, 4)], [(0, 1), (1, 2), (2, 0), (1, 3), (3, 0)])
    with pytest.raises(InvalidComplex):
        web_subdivision(dart)


# ------------------------------------------------------------ directional graphs


def test_antisymmetry_is_validated():
    DirectionalGraph.make(2, [(0, 1, (1, 0)), (1, 0, (-1, 0))])
    with pytest.raises(ValueError):
        DirectionalGraph.make(2, [(0, 1, (1, 0)), (1, 0, (1, 0))])
    with pytest.raises(ValueError):
        DirectionalGraph.make(2, [(0, 0, (1, 0))])
    g = DirectionalGraph.make(2, [(0, 1, (2, 3))])
    assert g.h(1, 0) == (-2, -3)


def test_forcing_cycles(load):
    tri = DirectionalGraph.make(3, [(0, 1, (1, 0)), (1, 2, (1, 0)), (2, 0, (1, 0))])
    delta, cyc = forcing_cycle(tri)
    assert cyc == (0, 1, 2) and delta[0] > 0 and delta[1] == 0
    d = load("appendixD")
    assert forcing_cycle(DirectionalGraph.from_complex(fan_from_section(d, F(-1, 8)))) is None
    assert forcing_cycle(load("square-digraph")) is None
    cube = DirectionalGraph.from_drawing(CUBE_EDGES, CUBE_DRAWING)
    assert forcing_cycle(cube) is None


def test_forcing_triangle_has_no_embedding():
    tri = DirectionalGraph.make(3, [(0, 1, (1, 0)), (1, 2, (1, 0)), (2, 0, (1, 0))])
    p = [(0, 0), (1, 0), (5, 0)]
    for perm in itertools.permutations(range(3)):
        assert check_embedding(tri, p, Assignment(perm))


def test_zero_directions_embed_everywhere():
    g = DirectionalGraph.make(3, [(0, 1, (0, 0)), (1, 2, (0, 0))])
    for perm in itertools.permutations(range(3)):
        assert check_embedding(g, [(1, 2), (3, 4), (5, 6)], Assignment(perm)) == []
    with pytest.raises(PreconditionError):
        check_embedding(g, [(1, 2), (3, 4)], Assignment((0, 1)))


def test_reversed_edges_give_the_same_margin():
    # h(v, u) = -h(u, v) and σ(v) - σ(u) = -(σ(u) - σ(v)), so the two
    # orientations of an edge carry one margin
    g = DirectionalGraph.make(3, [(0, 1, (1, 2)), (1, 2, (-3, 1))])
    rev = DirectionalGraph.make(3, [(1, 0, (-1, -2)), (2, 1, (3, -1))])
    p = [(0, 5), (2, -1), (7, 3)]
    sigma = Assignment((2, 0, 1))
    a = {tuple(sorted(m.edge)): m.margin for m in embedding_margins(g, p, sigma)}
    b = {tuple(sorted(m.edge)): m.margin for m in embedding_margins(rev, p, sigma)}
    assert a == b and any(a.values())


def test_square_identity(load):
    g = load("square-digraph")
    sigma = embed_drawable(g, UNIT_SQUARE, UNIT_SQUARE)
    assert sigma == Assignment((0, 1, 2, 3))
    assert all(m.margin > 0 for m in embedding_margins(g, UNIT_SQUARE, sigma))


def test_square_targets_against_brute_force(load):
    g, p = load("square-digraph"), load("square-targets")
    sigma = embed_drawable(g, UNIT_SQUARE, p)
    assert check_embedding(g, p, sigma) == []
    valid = [perm for perm in itertools.permutations(range(4)) if not check_embedding(g, p, Assignment(perm))]
    assert sigma.mapping in valid


def squared_cost(drawing, p, mapping):
    return sum(dot(vsub(drawing[v], p[mapping[v]]), vsub(drawing[v], p[mapping[v]])) for v in range(len(drawing)))


@pytest.mark.parametrize("case", ["square", "cube", "path"])
def test_drawable_graphs_embed_universally(load, case):
    rng = random.Random(hash(case) % 1000)
    if case == "square":
        g, drawing = load("square-digraph"), UNIT_SQUARE
    elif case == "cube":
        g, drawing = DirectionalGraph.from_drawing(CUBE_EDGES, CUBE_DRAWING), CUBE_DRAWING
    else:
        drawing = [(0, 0), (2, 1), (3, -4), (-1, -1), (5, 5)]
        g = DirectionalGraph.from_drawing([(0, 1), (1, 2), (2, 3), (3, 4)], drawing)
    for _ in range(30):
        p = [(F(rng.randint(-30, 30), rng.randint(1, 3)), F(rng.randint(-30, 30), rng.randint(1, 3))) for _ in drawing]
        sigma = embed_drawable(g, drawing, p)
        assert check_embedding(g, p, sigma) == []
        base = squared_cost(drawing, p, sigma.mapping)
        for i, j in itertools.combinations(range(len(drawing)), 2):
            m = list(sigma.mapping)
            m[i], m[j] = m[j], m[i]
            assert squared_cost(drawing, p, m) >= base


def test_invalid_drawing_is_rejected(load):
    g = load("square-digraph")
    with pytest.raises(PreconditionError):
        validate_drawing(g, [(0, 0), (1, 0), (1, 1), (0, 2)])
    with pytest.raises(PreconditionError):
        validate_drawing(g, [(1, 0), (0, 0), (0, 1), (1, 1)])
    with pytest.raises(PreconditionError):
        embed_drawable(g, UNIT_SQUARE, UNIT_SQUARE[:3])
