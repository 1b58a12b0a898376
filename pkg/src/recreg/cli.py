"""Command-line interface.

Every command prints one JSON report on stdout.  Exit status: 0 when the
property holds or the object was produced, 1 when the property fails (the
report carries the certificate), 2 on malformed input or a failed
precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from recreg import io
from recreg.applications import (
    DirectionalGraph,
    SpiderWeb,
    check_embedding,
    embed_drawable,
    embedding_margins,
    forcing_cycle,
    spiderweb_redundant_cables,
    web_subdivision,
)
from recreg.complex import Fan, InvalidComplex, Subdivision, walls
from recreg.floodlight import (
    Assignment,
    PreconditionError,
    covering_assignment,
    line_assignment,
    overlap_check,
    sample_coverage,
    uncovered_region_2d,
    universality_search,
)
from recreg.rational import DimensionError, parse_rational
from recreg.rectree import is_recursively_regular, regularity_tree
from recreg.regularity import finest_regular_coarsening, is_regular, regularity_system
from recreg.relaxation import RelaxableSystem, minimum_relaxation, residual, verify_dual_certificate
from recreg.svg import emit_svg
from recreg.visibility import (
    acyclic_all_directions,
    acyclic_in_direction,
    signed_terms_to_steps,
    verify_cycle_certificate,
)


class UsageError(Exception):
    pass


def _load(path: str, *types):
    obj = io.load(path)
    if types and not isinstance(obj, types):
        names = " or ".join(t.__name__ for t in types)
        raise UsageError(f"{path}: expected {names}, got {type(obj).__name__}")
    return obj


def _points(path: str):
    obj = io.load(path)
    if not isinstance(obj, tuple):
        raise UsageError(f"{path}: expected a points file")
    return obj


def _assignment(spec: str) -> Assignment:
    if all(ch.isdigit() or ch in ", " for ch in spec) and any(ch.isdigit() for ch in spec):
        return Assignment(tuple(int(x) for x in spec.replace(" ", "").split(",")))
    return _load(spec, Assignment)


def _vector(text: str):
    try:
        return tuple(parse_rational(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as err:
        raise UsageError(f"bad vector {text!r}: {err}") from None


def _heights(h) -> list:
    return [io.num(x) for x in h.values] if h is not None else None


def _tree_report(tree, stats=None) -> dict:
    out = {"depth": tree.depth, "leaves": len(tree.leaves()), "tree": tree.to_json()}
    if stats is not None:
        out["frc_calls"] = stats["frc_calls"]
    return out


# ------------------------------------------------------------ commands


def cmd_check_regular(a) -> tuple[int, dict]:
    c = _load(a.file, Subdivision, Fan)
    v = is_regular(c)
    rep = {"regular": v.regular}
    if v.regular:
        rep["witness"] = _heights(v.witness)
    else:
        rep["certificate"] = io.jsonable(v.contradiction)
    return (0 if v.regular else 1), rep


def cmd_frc(a) -> tuple[int, dict]:
    c = _load(a.file, Subdivision, Fan)
    frc = finest_regular_coarsening(c)
    return 0, {"groups": [list(g) for g in frc.coarsening.groups],
               "relaxed_walls": sorted(frc.relaxed_walls), "rounds": frc.rounds,
               "identity": frc.coarsening.is_identity(), "trivial": frc.coarsening.is_trivial(),
               "witness": _heights(frc.witness)}


def cmd_tree(a) -> tuple[int, dict]:
    c = _load(a.file, Subdivision, Fan)
    stats: dict = {}
    return 0, _tree_report(regularity_tree(c, stats), stats)


def cmd_check_recursive(a) -> tuple[int, dict]:
    c = _load(a.file, Subdivision, Fan)
    ok, tree = is_recursively_regular(c)
    rep = {"recursively_regular": ok}
    rep.update(_tree_report(tree))
    return (0 if ok else 1), rep


def cmd_acyclic(a) -> tuple[int, dict]:
    c = _load(a.file, Subdivision, Fan)
    if a.direction:
        v = acyclic_in_direction(c, _vector(a.direction))
        rep = {"acyclic": v.acyclic}
        rep["order" if v.acyclic else "cycle"] = list(v.order if v.acyclic else v.cycle)
        return (0 if v.acyclic else 1), rep
    if not a.all:
        raise UsageError("give --direction or --all")
    v = acyclic_all_directions(c, a.max_len)
    if v.acyclic:
        return 0, {"acyclic": True, "certificates": [x.to_json() for x in v.certificates]}
    return 1, {"acyclic": False, "direction": io.nums(v.direction), "cycle": list(v.cycle)}


def cmd_assign(a) -> tuple[int, dict]:
    f = _load(a.fan, Fan)
    p = _points(a.points)
    if a.line:
        r = line_assignment(f, p)
        if r.assignment is None:
            return 1, {"assignment": None, "direction": io.nums(r.direction), "cycle": list(r.cycle)}
        a_ = r.assignment
        rep: dict[str, Any] = {"method": "line"}
    else:
        r = covering_assignment(f, p)
        a_ = r.assignment
        rep = {"method": "recursive", "levels": len(r.trace)}
    ov = overlap_check(f, p, a_)
    rep.update({"assignment": list(a_.mapping), "overlap_ok": ov.ok,
                "min_margin": io.num(ov.min_margin) if ov.min_margin is not None else None})
    return 0, rep


def _overlap_report(ov) -> dict:
    return {"ok": ov.ok, "walls": [{"wall": w.label, "cells": list(w.cells), "margin": io.num(w.margin),
                                    "violated": w.violated} for w in ov.walls]}


def cmd_verify_overlap(a) -> tuple[int, dict]:
    f = _load(a.fan, Fan)
    ov = overlap_check(f, _points(a.points), _assignment(a.assignment))
    return (0 if ov.ok else 1), _overlap_report(ov)


def cmd_uncovered_2d(a) -> tuple[int, dict]:
    f = _load(a.fan, Fan)
    r = uncovered_region_2d(f, _points(a.points), _assignment(a.assignment))
    return (0 if r.empty else 1), {"empty": r.empty, "bounded": r.bounded,
                                   "vertices": [io.nums(v) for v in r.vertices]}


def cmd_search_universal(a) -> tuple[int, dict]:
    f = _load(a.fan, Fan)
    r = universality_search(f, _points(a.points), a.bound)
    if r.found:
        return 0, {"found": True, "assignment": list(r.assignment.mapping)}
    labels = [str(i + 1) for i in range(len(f.cells))]
    return 1, {"found": False, "permutations": len(r.table),
               "table": [{"assignment": x.notation(labels), "wall": w, "margin": io.num(m)}
                         for x, w, m in r.table]}


def cmd_verify_certificate(a) -> tuple[int, dict]:
    target = io.load(a.target)
    cert = io.load(a.certificate)
    if isinstance(cert, list) and cert and isinstance(cert[0], tuple):
        if not isinstance(target, (Fan, Subdivision)):
            raise UsageError("cycle certificates need a fan or subdivision")
        results = []
        for cyc, terms in cert:
            try:
                lam = signed_terms_to_steps(target, cyc, terms)
                ok = verify_cycle_certificate(target, cyc, lam)
            except ValueError as err:
                ok, lam = False, ()
                results.append({"cycle": list(cyc), "valid": False, "error": str(err)})
                continue
            results.append({"cycle": list(cyc), "valid": ok, "coefficients": io.nums(lam)})
        good = all(r["valid"] for r in results)
        return (0 if good else 1), {"valid": good, "cycles": results}
    if isinstance(target, (Fan, Subdivision)):
        target = regularity_system(target)
    if not isinstance(target, RelaxableSystem):
        raise UsageError("dual certificates need a system or a complex")
    if isinstance(cert, dict):
        unknown = set(cert) - set(target.row_labels)
        if unknown:
            raise UsageError(f"certificate names unknown rows {sorted(unknown)}")
        y = [cert.get(lab, Fraction(0)) for lab in target.row_labels]
    else:
        y = cert
    ok = verify_dual_certificate(target, y)
    res = residual(target, y)
    return (0 if ok else 1), {"valid": ok, "residual": io.nums(res)}


def cmd_relax(a) -> tuple[int, dict]:
    sys_ = _load(a.file, RelaxableSystem)
    r = minimum_relaxation(sys_)
    return 0, {"E": sorted(sys_.labels_of(r.E)), "relaxed": sorted(sys_.labels_of(r.relaxed(sys_))),
               "rounds": len(r.rounds), "witness": io.nums(r.final_witness)}


def cmd_spiderweb(a) -> tuple[int, dict]:
    w = _load(a.file, SpiderWeb)
    r = spiderweb_redundant_cables(w)
    return 0, {"redundant": sorted(list(e) for e in r.redundant), "rigid": r.rigid,
               "frc_identity": r.frc_identity}


def cmd_embed_digraph(a) -> tuple[int, dict]:
    raw = io.read_json(a.digraph)
    g = io.decode(raw, a.digraph)
    if not isinstance(g, DirectionalGraph):
        raise UsageError(f"{a.digraph}: expected a digraph")
    drawing = raw.get("drawing")
    if a.drawing:
        drawing = _points(a.drawing)
    if drawing is None:
        raise UsageError("no drawing given")
    p = _points(a.points)
    sigma = embed_drawable(g, drawing, p)
    bad = check_embedding(g, p, sigma)
    return (0 if not bad else 1), {
        "assignment": list(sigma.mapping),
        "margins": [{"edge": list(m.edge), "margin": io.num(m.margin)} for m in embedding_margins(g, p, sigma)],
        "violations": len(bad)}


def cmd_forcing_cycle(a) -> tuple[int, dict]:
    g = _load(a.file, DirectionalGraph)
    r = forcing_cycle(g, a.max_len)
    if r is None:
        return 0, {"forcing_cycle": None}
    delta, cyc = r
    return 1, {"forcing_cycle": list(cyc), "direction": io.nums(delta)}


def cmd_sample_coverage(a) -> tuple[int, dict]:
    f = _load(a.fan, Fan)
    r = sample_coverage(f, _points(a.points), _assignment(a.assignment), a.samples, a.seed)
    return (0 if r.fraction == 1 else 1), {"fraction": io.num(r.fraction), "covered": r.covered,
                                           "samples": r.samples,
                                           "uncovered_examples": [io.nums(x) for x in r.uncovered]}


def cmd_plot(a) -> tuple[int, dict]:
    c = _load(a.file, Subdivision, Fan, SpiderWeb)
    if isinstance(c, SpiderWeb):
        c = web_subdivision(c)
    kwargs: dict[str, Any] = {}
    if a.frc:
        frc = finest_regular_coarsening(c)
        kwargs["relaxed"] = frc.relaxed_walls
        kwargs["groups"] = frc.coarsening.groups
    if a.assignment:
        ov = overlap_check(c, _points(a.points), _assignment(a.assignment))
        kwargs["violated"] = [w.label for w in ov.violations]
    path = emit_svg(c, a.out, **kwargs)
    return 0, {"out": str(path), "cells": len(c.cells), "walls": len(walls(c))}


# ------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="recreg", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, *args):
        sp = sub.add_parser(name, help=help_)
        for a in args:
            sp.add_argument(a)
        sp.set_defaults(fn=fn)
        return sp

    add("check-regular", cmd_check_regular, "decide regularity", "file")
    add("frc", cmd_frc, "finest regular coarsening", "file")
    add("tree", cmd_tree, "regularity tree", "file")
    add("check-recursive", cmd_check_recursive, "decide recursive regularity", "file")
    sp = add("acyclic", cmd_acyclic, "visibility acyclicity", "file")
    sp.add_argument("--direction")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--max-len", type=int)
    sp = add("assign", cmd_assign, "covering assignment", "fan", "points")
    m = sp.add_mutually_exclusive_group(required=True)
    m.add_argument("--line", action="store_true")
    m.add_argument("--recursive", action="store_true")
    add("verify-overlap", cmd_verify_overlap, "overlapping condition margins", "fan", "points", "assignment")
    add("uncovered-2d", cmd_uncovered_2d, "exact uncovered region of a planar fan", "fan", "points", "assignment")
    sp = add("search-universal", cmd_search_universal, "try every assignment", "fan", "points")
    sp.add_argument("--bound", type=int, default=8)
    add("verify-certificate", cmd_verify_certificate, "check a dual or cycle certificate", "target", "certificate")
    add("relax", cmd_relax, "minimum relaxation of a system", "file")
    add("spiderweb", cmd_spiderweb, "redundant cables of a spider web", "file")
    sp = add("embed-digraph", cmd_embed_digraph, "embed a drawable directional graph", "digraph", "points")
    sp.add_argument("--drawing")
    sp = add("forcing-cycle", cmd_forcing_cycle, "search for a forcing cycle", "file")
    sp.add_argument("--max-len", type=int)
    sp = add("sample-coverage", cmd_sample_coverage, "sampled coverage fraction", "fan", "points", "assignment")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp = add("plot", cmd_plot, "write an SVG", "file")
    sp.add_argument("--out", required=True)
    sp.add_argument("--frc", action="store_true")
    sp.add_argument("--points")
    sp.add_argument("--assignment")
    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        code, report = args.fn(args)
    except (io.InstanceError, InvalidComplex, PreconditionError, UsageError, DimensionError,
            ValueError, KeyError) as err:
        code, report = 2, {"error": type(err).__name__, "message": str(err)}
        if isinstance(err, InvalidComplex):
            report["violations"] = [str(v) for v in getattr(err, "violations", [])]
    out.write(json.dumps(io.jsonable(report)) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
