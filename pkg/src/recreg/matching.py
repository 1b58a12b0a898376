"""Exact minimum-cost perfect matching (Hungarian method with potentials)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _hungarian(cost: Sequence[Sequence[Fraction]]) -> list[int]:
    n = len(cost)
    INF = None
    u = [Fraction(0)] * (n + 1)
    v = [Fraction(0)] * (n + 1)
    match = [0] * (n + 1)  # match[j] = row matched to column j (1-based)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv: list[Fraction | None] = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = None
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                    if minv[j] is None or cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if delta is None or minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    row_to_col = [0] * n
    for j in range(1, n + 1):
        row_to_col[match[j] - 1] = j - 1
    return row_to_col


def min_cost_assignment(cost: Sequence[Sequence]) -> tuple[int, ...]:
    """Row-to-column assignment of minimum total cost.

    Among optimal assignments the lexicographically smallest row-to-column
    sequence is returned: an exact tie-break term, too small to change the
    order of distinct totals, is added to every cost.
    """
    n = len(cost)
    if n == 0:
        return ()
    if any(len(r) != n for r in cost):
        raise ValueError("cost matrix must be square")
    c = [[Fraction(x) for x in r] for r in cost]
    den = 1
    for r in c:
        for x in r:
            den = den * x.denominator // _gcd(den, x.denominator)
    base = n + 1
    weight = [base ** (n - 1 - i) for i in range(n)]
    # Tie-break totals stay below n * base**n, so this step keeps any two
    # different true totals (which differ by at least 1/den) in order.
    step = Fraction(1, den * (n * base ** n + 1))
    perturbed = [[c[i][j] + step * j * weight[i] for j in range(n)] for i in range(n)]
    return tuple(_hungarian(perturbed))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
