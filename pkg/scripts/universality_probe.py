"""Probe the appendixC fan: margins and sampled coverage per assignment.

Usage: python3 scripts/universality_probe.py [SAMPLES] [SEED]

Every permutation violates some wall.  The table lists the first violated
wall with its margin and the sampled coverage fraction, so gaps too thin
for the sample size show up as fraction 1 despite the violation.
"""

from __future__ import annotations

import itertools
import sys

from recreg import io
from recreg.floodlight import Assignment, draw_samples, overlap_check, sample_coverage


def main() -> None:
    samples = int(sys.argv[1]) if len(sys.argv) > 1 else 10_000
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    fan, points = io.load("appendixC-fan.json"), io.load("appendixC-points.json")
    sample = draw_samples(fan, points, samples=samples, seed=seed)
    print(f"{samples} samples, seed {seed}, region {sample.region}")
    full = 0
    for perm in itertools.permutations(range(5)):
        a = Assignment(perm)
        worst = min(overlap_check(fan, points, a).walls, key=lambda w: w.margin)
        cov = sample_coverage(fan, points, a, sample_set=sample)
        full += cov.fraction == 1
        print(f"{a.notation()}  wall {worst.label:>2}  margin {str(worst.margin):>6}  coverage {float(cov.fraction):.6f}")
    print(f"{full} assignments show no uncovered sample")


if __name__ == "__main__":
    main()
