"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line with its runtime
and budget; the lines are repeated in the terminal summary.  Published
certificates are checked exactly as transcribed.
"""

import functools
import itertools
import math
import random
import time
from fractions import Fraction as F

import pytest

from recreg.applications import DirectionalGraph, check_embedding, embed_drawable, spiderweb_redundant_cables
from recreg.complex import PointConfiguration, convex_hull_2d, fan_from_section, validate_fan, walls
from recreg.floodlight import (
    covering_assignment,
    line_assignment,
    overlap_check,
    sample_coverage,
    uncovered_region_2d,
    universality_search,
)
from recreg.lp import gordan, gordan_relaxed
from recreg.rational import dot, positive_multiple
from recreg.rectree import is_recursively_regular, regularity_tree
from recreg.regularity import finest_regular_coarsening, is_regular, lift_project_2d
from recreg.relaxation import RelaxableSystem, check_witness, minimum_relaxation, residual, verify_dual_certificate
from recreg.visibility import acyclic_all_directions, acyclic_in_direction, verify_signed_certificate

from conftest import ACCEPTANCE_LINES

C_NORMALS = {"12": (4, 0, -32), "13": (2, 2, 0), "15": (1, -3, 16), "23": (0, 4, 32),
             "24": (4, 0, 32), "25": (0, -4, 32), "34": (2, -2, 0), "45": (-2, -3, 8)}


def criterion(number, budget, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            failure = None
            try:
                fn(*args, **kwargs)
            except AssertionError as err:
                failure = err
            elapsed = time.perf_counter() - t0
            if failure is None and elapsed >= budget:
                failure = AssertionError(f"took {elapsed:.1f}s, budget {budget}s")
            verdict = "PASS" if failure is None else "FAIL"
            line = f"criterion {number:2d}: {verdict}  {elapsed:6.2f}s / {budget}s  {title}"
            if failure is not None:
                line += f"  [{str(failure).splitlines()[0][:100]}]"
            print(line)
            ACCEPTANCE_LINES.append(line)
            if failure is not None:
                raise failure
        return run
    return wrap


class Checks:
    """Named sub-checks; every failing name is reported together."""

    def __init__(self):
        self.failed = []

    def __call__(self, name, ok):
        if not ok:
            self.failed.append(name)

    def done(self):
        assert not self.failed, "failed: " + "; ".join(self.failed)


def residual_text(sys, y):
    return "residual (" + ", ".join(str(r) for r in residual(sys, y)) + ")"


def certificate_vector(sys, cert):
    return [cert.get(lab, 0) for lab in sys.row_labels]


@criterion(1, 1, "appendixE certificate and non-regularity")
def test_criterion_1(load):
    check = Checks()
    sys = load("appendixE-rows")
    y = [1, 1, F(1, 32), F(1, 32)] + [F(1, 2)] * 6
    assert certificate_vector(sys, load("appendixE-certificate")) == y
    check(f"transcribed rows, {residual_text(sys, y)}", verify_dual_certificate(sys, y))
    check("fixture regular", not is_regular(load("appendixE")).regular)
    check.done()


@criterion(2, 1, "appendixD certificate, minimum relaxation, complete non-regularity")
def test_criterion_2(load):
    check = Checks()
    sys = load("appendixD-rows")
    y = [207, 24, 20, 24, 288, 24, 1308, 24, 1464, 24, 198, 24, 1464]
    assert certificate_vector(sys, load("appendixD-certificate")) == y
    check(f"transcribed y, {residual_text(sys, y)}", verify_dual_certificate(sys, y))
    check("E is not all 13 rows", minimum_relaxation(sys).E == frozenset(range(13)))
    d = load("appendixD")
    check("FRC not trivial", finest_regular_coarsening(d).coarsening.is_trivial())
    check("recursively regular", not is_recursively_regular(d)[0])
    check.done()


@criterion(3, 5, "appendixF certificate and regularity tree")
def test_criterion_3(load):
    check = Checks()
    sys = load("appendixF-rows")
    y = certificate_vector(sys, load("appendixF-certificate"))
    assert len(y) == 12 and y[0] == F(1, 10) and y[-1] == F(9, 80)
    check(f"transcribed rows, {residual_text(sys, y)}", verify_dual_certificate(sys, y))
    f = load("appendixF")
    tree = regularity_tree(f)
    splits = [len(node.children) for node in tree.internal_nodes()]
    check(f"depth {tree.depth}", tree.depth == 2)
    check(f"splits {splits}", splits == [5] * len(splits))
    check("non-regular leaf", all(leaf.status == "leaf-regular" for leaf in tree.leaves()))
    check("not recursively regular", is_recursively_regular(f)[0])
    check.done()


@criterion(4, 10, "appendixC normals, 120 violated assignments, cycle certificates")
def test_criterion_4(load):
    check = Checks()
    section, fan, points = load("appendixC-section"), load("appendixC-fan"), load("appendixC-points")
    lifted = fan_from_section(section, F(-1, 8))
    got = {w.label: w.normal for w in walls(lifted)}
    check("normals", set(got) == set(C_NORMALS) and all(positive_multiple(got[lab], n) for lab, n in C_NORMALS.items()))
    res = universality_search(fan, points)
    check("a satisfying assignment", not res.found and len(res.table) == 120 and all(m < 0 for _, _, m in res.table))
    ident = next((row for row in res.table if row[0].mapping == (0, 1, 2, 3, 4)), None)
    check("identity row", ident is not None and ident[1:] == ("12", -8))
    verdict = acyclic_all_directions(fan)
    check("cyclic", verdict.acyclic)
    found = {frozenset(c.cycle) for c in verdict.certificates}
    published = load("appendixC-cycles")
    assert len(published) == 9
    check("v13 + v34/4 + v45 - v15/2",
          verify_signed_certificate(fan, (0, 2, 3, 4), {"13": 1, "34": F(1, 4), "45": 1, "15": F(-1, 2)}))
    bad = [cyc for cyc, terms in published if not (frozenset(cyc) in found and verify_signed_certificate(fan, cyc, terms))]
    check(f"published cycles {bad}", not bad)
    check.done()


def brute_minimum(m):
    out = set(range(len(m)))
    for k in range(len(m) + 1):
        for e in itertools.combinations(range(len(m)), k):
            # supersets of the running intersection cannot shrink it
            if out <= set(e):
                continue
            if gordan_relaxed(m, e).compatible:
                out &= set(e)
    return frozenset(out)


@criterion(5, 60, "minimum relaxation equals the brute-force oracle on 200 matrices")
def test_criterion_5():
    rng = random.Random(2026)
    for _ in range(200):
        m = [[rng.randint(-3, 3) for _ in range(rng.randint(1, 5))]]
        m += [[rng.randint(-3, 3) for _ in m[0]] for _ in range(rng.randint(0, 7))]
        sys = RelaxableSystem.make(m)
        res = minimum_relaxation(sys)
        assert res.E == brute_minimum(m), m
        assert check_witness(sys, res.E, res.final_witness)


@criterion(6, 30, "Gordan dichotomy on 500 matrices")
def test_criterion_6():
    rng = random.Random(6)
    for _ in range(500):
        rows, cols = rng.randint(1, 6), rng.randint(1, 4)
        m = [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)]
        res = gordan(m)
        assert (res.x is None) != (res.y is None)
        if res.x is not None:
            assert all(dot(r, res.x) > 0 for r in m)
        else:
            assert all(v >= 0 for v in res.y) and any(res.y)
            assert all(sum(res.y[i] * m[i][j] for i in range(rows)) == 0 for j in range(cols))


@criterion(7, 60, "lifted configurations are regular, FRC-identity and acyclic")
def test_criterion_7():
    rng = random.Random(7)
    done = 0
    while done < 100:
        pts = list({(rng.randint(0, 12), rng.randint(0, 12)) for _ in range(rng.randint(3, 9))})
        try:
            s = lift_project_2d(PointConfiguration.make(pts), [rng.randint(0, 20) for _ in pts])
        except ValueError:
            continue
        done += 1
        assert is_regular(s).regular
        assert finest_regular_coarsening(s).coarsening.is_identity()
        for _ in range(20):
            v = (rng.randint(-20, 20), rng.randint(-20, 20))
            if v != (0, 0):
                assert acyclic_in_direction(s, v).acyclic


def random_complete_fan(rng, max_cells):
    while True:
        dirs = {}
        for _ in range(rng.randint(3, max_cells)):
            r = (rng.randint(-6, 6), rng.randint(-6, 6))
            if r != (0, 0):
                g = math.gcd(*r)
                dirs[(r[0] // g, r[1] // g)] = None
        rays = sorted(dirs, key=lambda r: math.atan2(r[1], r[0]))
        n = len(rays)
        if n >= 3 and all(rays[i][0] * rays[(i + 1) % n][1] - rays[i][1] * rays[(i + 1) % n][0] > 0 for i in range(n)):
            return validate_fan(rays, [(i, (i + 1) % n) for i in range(n)], complete=True)


@criterion(8, 30, "line assignments on 50 planar fans and a cyclic witness")
def test_criterion_8(load):
    rng = random.Random(8)
    for _ in range(50):
        f = random_complete_fan(rng, 7)
        while True:
            v = (rng.randint(-5, 5), rng.randint(-5, 5))
            if v != (0, 0) and acyclic_in_direction(f, v).acyclic:
                break
        q = (rng.randint(-20, 20), rng.randint(-20, 20))
        p = [(q[0] + t * v[0], q[1] + t * v[1]) for t in rng.sample(range(-9, 10), len(f.cells))]
        res = line_assignment(f, p)
        assert res.assignment is not None
        assert uncovered_region_2d(f, p, res.assignment).empty
    twisted = load("twisted-fan")
    v = (F(19, 2), 8, F(-7, 64))
    p = [tuple(a + k * b for a, b in zip((-9600, -6400, 100), v)) for k in range(len(twisted.cells))]
    res = line_assignment(twisted, p)
    assert res.assignment is None and res.cycle and not acyclic_in_direction(twisted, v).acyclic


def fans_from_appendix_e(e):
    """Complete planar fans through the appendixE points, seen from the
    interior point at the origin: every direction, and the hull corners."""
    pts = e.config.points
    o = next(p for p in pts if not any(p))
    out = []
    for chosen in (pts, convex_hull_2d(pts)):
        dirs = {}
        for p in chosen:
            if p != o:
                g = math.gcd(int(p[0]), int(p[1]))
                dirs[(int(p[0]) // g, int(p[1]) // g)] = None
        rays = sorted(dirs, key=lambda r: math.atan2(r[1], r[0]))
        out.append(validate_fan(rays, [(i, (i + 1) % len(rays)) for i in range(len(rays))], complete=True))
    return out


CUBE_RAYS = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
CUBE_FACES = [tuple(i for i, r in enumerate(CUBE_RAYS) if r[k] == s) for k in range(3) for s in (-1, 1)]


@criterion(9, 60, "recursive covering on appendixE fans and a regular 3D fan")
def test_criterion_9(load):
    rng = random.Random(9)
    fans = fans_from_appendix_e(load("appendixE"))
    assert [len(f.cells) for f in fans] == [14, 6]
    assert all(is_recursively_regular(f)[0] for f in fans)
    for k in range(100):
        f = fans[k % 2]
        p = [(rng.randint(-40, 40), rng.randint(-40, 40)) for _ in f.cells]
        a = covering_assignment(f, p).assignment
        rep = overlap_check(f, p, a)
        assert rep.ok and all(w.margin >= 0 for w in rep.walls)
        assert uncovered_region_2d(f, p, a).empty
    cube = validate_fan(CUBE_RAYS, CUBE_FACES, complete=True)
    assert is_regular(cube).regular
    p = [tuple(rng.randint(-9, 9) for _ in range(3)) for _ in CUBE_FACES]
    a = covering_assignment(cube, p).assignment
    cov = sample_coverage(cube, p, a, samples=10_000, seed=0)
    assert cov.samples == 10_000 and cov.fraction == 1


CUBE = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
CUBE_EDGES = [(i, j) for i, j in itertools.combinations(range(8), 2) if sum(a != b for a, b in zip(CUBE[i], CUBE[j])) == 1]
CUBE_DRAWING = [(x + F(z, 3), y + F(z, 2)) for x, y, z in CUBE]


@criterion(10, 30, "spider web redundancy and universal embeddings")
def test_criterion_10(load):
    w, e = load("fig2-web"), load("appendixE")
    rep = spiderweb_redundant_cables(w)
    labelled = {frozenset(e.config.points[i] for i in x.ridge) for x in walls(e) if x.label in {str(i) for i in range(1, 11)}}
    assert {frozenset(w.vertices[i] for i in c) for c in rep.redundant} == labelled and rep.rigid
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    cases = [(load("square-digraph"), square),
             (DirectionalGraph.from_drawing(CUBE_EDGES, CUBE_DRAWING), CUBE_DRAWING)]
    rng = random.Random(10)
    for g, drawing in cases:
        for _ in range(100):
            p = [(F(rng.randint(-50, 50), rng.randint(1, 4)), F(rng.randint(-50, 50), rng.randint(1, 4))) for _ in drawing]
            assert check_embedding(g, p, embed_drawable(g, drawing, p)) == []


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
