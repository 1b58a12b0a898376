"""Regenerate the bundled fixture corpus and its checksum manifest.

Usage: python3 scripts/build_fixtures.py [OUTDIR]

Every instance is validated through the library before it is written.
Published constraint rows and certificates are stored verbatim; where a row
or coefficient does not match the geometry, a ``-corrected`` companion file
carries the repaired values.
"""

from __future__ import annotations

import hashlib
import itertools
import sys
from fractions import Fraction as F
from pathlib import Path

from recreg.applications import DirectionalGraph, SpiderWeb
from recreg.complex import PointConfiguration, fan_from_section, validate_subdivision
from recreg.io import dumps, encode, nums
from recreg.relaxation import RelaxableSystem

OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "src/recreg/fixtures"

# ---------------------------------------------------------------- C

C_SECTION = [(-1, 1), (1, 1), (1, -1), (-1, -1), (-4, 4), (4, 4), (7, -5), (-7, -3)]
C_CELLS = [(3, 0, 4, 7), (0, 1, 2, 3), (0, 1, 5, 4), (1, 2, 6, 5), (2, 3, 7, 6)]
C_NORMALS = {"12": (4, 0, -32), "13": (2, 2, 0), "15": (1, -3, 16), "23": (0, 4, 32),
             "24": (4, 0, 32), "25": (0, -4, 32), "34": (2, -2, 0), "45": (-2, -3, 8)}
C_POINTS = [(29, 95, 89), (55, 19, 92), (54, 10, 82), (78, 2, 68), (15, 40, 92)]
C_HEIGHT = F(-1, 8)
# (cycle of cell labels, signed combination over wall labels)
C_CYCLES = [
    ("1345", {"13": 1, "34": F(1, 4), "45": 1, "15": F(-1, 2)}),
    ("2513", {"25": F(3, 4), "15": F(-1, 4), "13": F(1, 2), "23": F(-1, 4)}),
    ("2134", {"12": F(-1, 2), "13": 1, "34": 1, "24": F(-1, 2)}),
    ("2345", {"23": F(1, 2), "34": 1, "45": 1, "25": F(-3, 4)}),
    ("2451", {"24": F(1, 2), "45": 1, "15": -1, "12": F(1, 4)}),
    ("21345", {"12": F(-1, 2), "13": 1, "34": 1, "45": 1, "25": F(-3, 4)}),
    ("23451", {"23": F(1, 2), "34": 1, "45": 1, "15": -1, "12": F(1, 4)}),
    ("24513", {"24": F(1, 2), "45": 1, "15": -1, "13": F(1, 2), "23": F(-1, 4)}),
    ("25134", {"25": F(3, 4), "15": F(-1, 4), "13": F(1, 2), "34": F(1, 4), "24": F(-1, 4)}),
]
C_CYCLE_FIXES = {"2513": {"15": -1}, "25134": {"25": F(1, 2), "15": F(-1, 2)}}

# ---------------------------------------------------------------- D

D_POINTS = [(12, 54), (-24, 50), (4, 18), (40, 22), (-56, 64), (0, 0), (79, 0), (0, 79)]
D_CELLS = [(0, 1, 2), (0, 1, 4), (0, 2, 3), (0, 3, 7), (0, 4, 7), (1, 2, 5), (1, 4, 5),
           (2, 3, 6), (2, 5, 6), (3, 6, 7)]
D_WALLS = [(0, 1), (0, 5), (2, 7), (2, 3), (0, 2), (3, 4), (1, 4), (1, 6), (5, 6), (5, 8),
           (7, 8), (7, 9), (3, 9)]
D_ROWS = [(8, -32, 8, 0, 16, 0, 0, 0), (8, 0, -24, 0, 0, 16, 0, 0), (12, 0, 8, -36, 0, 0, 16, 0),
          (-28, 0, 4, 8, 0, 0, 0, 16), (-16, 16, -16, 16, 0, 0, 0, 0), (-48, 0, 0, 20, 4, 0, 0, 24),
          (-16, 20, 0, 0, -12, 0, 0, 8), (16, -48, 0, 0, 24, 8, 0, 0), (0, -16, 16, 0, 8, -8, 0, 0),
          (0, 18, -50, 0, 0, 24, 8, 0), (0, 0, -22, 18, 0, 12, -8, 0), (0, 0, 17, -57, 0, 0, 28, 12),
          (17, 0, 0, -13, 0, 0, 4, -8)]
D_Y = [207, 24, 20, 24, 288, 24, 1308, 24, 1464, 24, 198, 24, 1464]
D_Y_FIXED = {10: 880}

# ---------------------------------------------------------------- E

E_POINTS = [(-16, -4), (-16, 4), (-8, 4), (-8, -4), (0, 0), (8, 4), (8, -4), (16, -4), (16, 4),
            (0, 8), (0, -8), (-17, -6), (17, -6), (17, 6), (-17, 6)]
E_CELLS = [(2, 4, 5), (2, 5, 9), (3, 4, 10), (4, 6, 10), (0, 1, 2), (0, 2, 3), (5, 6, 7), (5, 7, 8),
           (0, 1, 14), (0, 11, 14), (1, 2, 9), (1, 9, 14), (5, 8, 9), (8, 9, 13), (7, 8, 13),
           (7, 12, 13), (6, 7, 12), (6, 10, 12), (0, 3, 11), (3, 10, 11), (2, 3, 4), (4, 5, 6)]
E_WALLS = [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11), (12, 13), (14, 15), (16, 17), (18, 19)]
E_ROWS = [(0, 0, -4, 0, 4, -4, 0, 0, 0, 4, 0, 0, 0, 0, 0), (0, 0, 0, 4, -4, 0, 4, 0, 0, 0, -4, 0, 0, 0, 0),
          (-16, 16, -16, 16, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, -16, 16, -16, 16, 0, 0, 0, 0, 0, 0),
          (-12, 12, 0, 0, 0, 0, 0, 0, 0, 0, 0, 8, 0, 0, -8), (0, -13, 9, 0, 0, 0, 0, 0, 0, -4, 0, 0, 0, 0, 8),
          (0, 0, 0, 0, 0, 9, 0, 0, -13, -4, 0, 0, 0, 8, 0), (0, 0, 0, 0, 0, 0, 0, -12, 12, 0, 0, 0, 8, -8, 0),
          (0, 0, 0, 0, 0, 0, 0, -9, 13, 0, 0, 4, 0, -8, 0), (13, 0, 0, -9, 0, 0, 0, 0, 0, 0, 4, -8, 0, 0, 0)]
E_ROW_FIXES = {8: (0, 0, 0, 0, 0, 0, -9, 13, 0, 0, 4, 0, -8, 0, 0)}
E_Y = [1, 1, F(1, 32), F(1, 32)] + [F(1, 2)] * 6

# ---------------------------------------------------------------- F

F_POINTS = [(14, 5), (4, 14), (3, 5), (0, 0), (22, 0), (0, 22), (70, -34), (52, -24), (-21, 9)]
F_CELLS = [(0, 1, 2), (0, 1, 4), (0, 2, 3), (0, 3, 4), (1, 2, 5), (1, 4, 5), (2, 3, 5), (3, 4, 7),
           (3, 5, 8), (3, 7, 8), (4, 5, 6), (4, 6, 7), (6, 7, 8)]
F_LABELS = ["2", "4", "5", "6", "7", "8", "9", "10", "11", "12", "20", "21"]
F_WALLS = {"2": (1, 3), "4": (6, 8), "5": (2, 6), "6": (0, 2), "7": (0, 4), "8": (0, 1), "9": (4, 5),
           "10": (4, 6), "11": (2, 3), "12": (1, 5), "20": (9, 12), "21": (10, 11)}
F_ROWS = [(-56, 20, 0, 4, 32, 0, 0, 0, 0), (0, 0, 84, -72, 0, -24, 0, 0, 12), (12, 0, -56, 34, 0, 10, 0, 0, 0),
          (4, 10, -32, 18, 0, 0, 0, 0, 0), (8, -34, 8, 0, 0, 18, 0, 0, 0), (-32, 10, 4, 0, 18, 0, 0, 0, 0),
          (0, 56, 16, 0, 8, 32, 0, 0, 0), (0, 12, -16, 8, 0, -4, 0, 0, 0), (-20, 0, 20, -10, 10, 0, 0, 0, 0),
          (16, -12, 0, -8, 4, 0, 0, 0, 0), (0, 0, 0, 136, 0, 0, 36, -84, -88), (0, 0, 0, 0, -112, 48, -48, 112, 0)]
F_ROW_FIXES = {6: (0, -56, 16, 0, 8, 32, 0, 0, 0), 9: (16, -12, 0, 0, -8, 4, 0, 0, 0)}
F_Y = {"2": F(1, 10), "4": F(11, 10), "5": F(109, 110), "6": 1, "7": F(50, 99), "8": F(71, 99),
       "9": F(1, 10), "10": F(11, 10), "11": F(23, 110), "12": F(4, 5), "20": F(3, 20), "21": F(9, 80)}

# ---------------------------------------------------------------- extra

# Cone over a twisted six-triangle ring: cyclic in some directions.
TWIST_POINTS = [(0, 0), (24, 0), (12, 21), (7, 6), (15, 6), (12, 13)]
TWIST_CELLS = [(3, 4, 5), (0, 1, 3), (1, 4, 3), (1, 2, 4), (2, 5, 4), (2, 0, 5), (0, 3, 5)]


def edges_of(cells):
    out = set()
    for c in cells:
        for a, b in itertools.combinations(sorted(c), 2):
            out.add((a, b))
    return sorted(out)


def certificate(y, labels):
    return {"kind": "certificate", "y": {lab: (v if isinstance(v, int) else f"{F(v).numerator}/{F(v).denominator}")
                                         for lab, v in zip(labels, y)}}


def system(rows, labels):
    return encode(RelaxableSystem.make(rows, labels))


def build() -> dict[str, dict]:
    files: dict[str, dict] = {}
    c_labels = [str(i) for i in range(1, 6)]
    c_walls = [(int(k[0]) - 1, int(k[1]) - 1, k) for k in C_NORMALS]
    sec = validate_subdivision(PointConfiguration.make(C_SECTION), C_CELLS, cell_labels=c_labels,
                               wall_labels=c_walls)
    files["appendixC-section.json"] = encode(sec)
    fan = fan_from_section(sec, C_HEIGHT, [(a, b, C_NORMALS[k]) for a, b, k in c_walls])
    files["appendixC-fan.json"] = {"kind": "fan", "section": encode(sec), "height": "-1/8",
                                   "normals": [[a, b, list(C_NORMALS[k])] for a, b, k in c_walls]}
    files["appendixC-points.json"] = {"kind": "points", "labels": ["p1", "p2", "p3", "p4", "p5"],
                                      "points": [list(p) for p in C_POINTS]}

    def cyc_json(fixes):
        out = []
        for cyc, terms in C_CYCLES:
            t = dict(terms)
            t.update(fixes.get(cyc, {}))
            out.append({"cycle": [int(ch) - 1 for ch in cyc],
                        "terms": {k: nums([v])[0] for k, v in t.items()}})
        return {"kind": "cycle-certificates", "cycles": out}

    files["appendixC-cycles.json"] = cyc_json({})
    files["appendixC-cycles-corrected.json"] = cyc_json(C_CYCLE_FIXES)
    assert fan.dimension == 3

    labels = [str(i) for i in range(1, 14)]
    d = validate_subdivision(PointConfiguration.make(D_POINTS), D_CELLS,
                             wall_labels=[(a, b, lab) for (a, b), lab in zip(D_WALLS, labels)])
    files["appendixD.json"] = encode(d)
    files["appendixD-rows.json"] = system(D_ROWS, labels)
    files["appendixD-certificate.json"] = certificate(D_Y, labels)
    y = list(D_Y)
    for i, v in D_Y_FIXED.items():
        y[i] = v
    files["appendixD-certificate-corrected.json"] = certificate(y, labels)

    labels = [str(i) for i in range(1, 11)]
    e = validate_subdivision(PointConfiguration.make(E_POINTS), E_CELLS,
                             wall_labels=[(a, b, lab) for (a, b), lab in zip(E_WALLS, labels)])
    files["appendixE.json"] = encode(e)
    files["appendixE-rows.json"] = system(E_ROWS, labels)
    rows = list(E_ROWS)
    for i, r in E_ROW_FIXES.items():
        rows[i] = r
    files["appendixE-rows-corrected.json"] = system(rows, labels)
    files["appendixE-certificate.json"] = certificate(E_Y, labels)

    f = validate_subdivision(PointConfiguration.make(F_POINTS), F_CELLS,
                             wall_labels=[(a, b, lab) for lab, (a, b) in F_WALLS.items()])
    files["appendixF.json"] = encode(f)
    files["appendixF-rows.json"] = system(F_ROWS, F_LABELS)
    rows = list(F_ROWS)
    for i, r in F_ROW_FIXES.items():
        rows[i] = r
    files["appendixF-rows-corrected.json"] = system(rows, F_LABELS)
    files["appendixF-certificate.json"] = certificate([F_Y[k] for k in F_LABELS], F_LABELS)

    files["fig2-web.json"] = encode(SpiderWeb.make(E_POINTS, edges_of(E_CELLS)))
    files["fig3-web.json"] = encode(SpiderWeb.make(D_POINTS, edges_of(D_CELLS)))

    tw = validate_subdivision(PointConfiguration.make(TWIST_POINTS), TWIST_CELLS)
    files["twisted-fan.json"] = {"kind": "fan", "section": encode(tw), "height": "-1/8"}

    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    g = DirectionalGraph.from_drawing([(0, 1), (1, 2), (2, 3), (3, 0)], square)
    files["square-digraph.json"] = dict(encode(g), drawing=[list(p) for p in square])
    files["square-targets.json"] = {"kind": "points", "points": [[5, 1], [0, 0], [3, 7], [2, 2]]}
    return files


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    files = build()
    manifest = []
    for name in sorted(files):
        text = dumps(files[name])
        (OUT / name).write_text(text)
        manifest.append(f"{hashlib.sha256(text.encode()).hexdigest()}  {name}")
    (OUT / "MANIFEST.sha256").write_text("\n".join(manifest) + "\n")
    print(f"wrote {len(files)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
