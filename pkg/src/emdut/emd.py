"""Exact Earth Mover's Distance at a fixed translation.

Three routes with one contract (minimum total matched distance of an
injective blue-to-red matching):

* ``emd_1d_monotone``  -- 1D dynamic program over sorted orders; an
  optimal matching always exists that is monotone, so the DP is exact.
* ``emd_hungarian``    -- general-dimension mincost matching via shortest
  augmenting paths with exact rational potentials.
* ``emd_bruteforce``   -- factorial enumeration, the test oracle.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .core import Matching, Metric, PointSet, lp_distance

_INF = float("inf")  # comparison-only sentinel; never mixed into results


def _sorted_1d(ps: PointSet) -> list[tuple[Fraction, int]]:
    # Stable: equal coordinates keep index order.
    return sorted(((p[0], i) for i, p in enumerate(ps.points)), key=lambda t: (t[0], t[1]))


def emd_1d_monotone(blue: PointSet, red: PointSet) -> tuple[Fraction, Matching]:
    """Exact 1D EMD with a monotone witness matching.

    Sorts copies of both sets, runs the O(|B|*|R|) match-or-skip dynamic
    program, and reconstructs greedily from the left so the witness is
    the lexicographically smallest monotone matching (in sorted order).
    The returned matching is expressed over the original indices.
    """
    if blue.dim != 1 or red.dim != 1:
        raise ValueError("emd_1d_monotone requires 1-dimensional point sets")
    m, n = len(blue), len(red)
    if m > n:
        raise ValueError(f"|B| = {m} exceeds |R| = {n}")
    if m == 0:
        return Fraction(0), ()
    bs = _sorted_1d(blue)
    rs = _sorted_1d(red)
    # cost[i][j] = min cost matching blues i.. into reds j.. monotonically.
    cost: list[list] = [[None] * (n + 1) for _ in range(m + 1)]
    for j in range(n + 1):
        cost[m][j] = Fraction(0)
    for i in range(m - 1, -1, -1):
        bi = bs[i][0]
        row = cost[i]
        nxt = cost[i + 1]
        # reds j < i can never host blue i monotonically when m blues remain
        for j in range(n - (m - i), -1, -1):
            take = abs(bi - rs[j][0]) + nxt[j + 1]
            skip = row[j + 1]
            row[j] = take if (skip is None or take <= skip) else skip
    value = cost[0][0]
    assignment = [0] * m
    j = 0
    for i in range(m):
        bi = bs[i][0]
        while abs(bi - rs[j][0]) + cost[i + 1][j + 1] != cost[i][j]:
            j += 1
        assignment[bs[i][1]] = rs[j][1]
        j += 1
    return value, tuple(assignment)


def _min_cost_assignment(cost: Sequence[Sequence]) -> tuple[Fraction, list[int]]:
    """Rectangular (m <= n) mincost assignment by shortest augmenting paths.

    Potentials and reduced costs stay exact rationals (or ints); float
    infinity appears only as an untouched-column sentinel in comparisons.
    Unmatched columns behave like zero-cost dummy rows, which is exactly
    the padding semantics the EMD contract asks for.
    """
    m = len(cost)
    n = len(cost[0]) if m else 0
    assert m <= n
    u = [0] * (m + 1)
    v = [0] * (n + 1)
    match_row = [0] * (n + 1)  # 1-based column -> 1-based row, 0 = free
    way = [0] * (n + 1)
    for i in range(1, m + 1):
        match_row[0] = i
        j0 = 0
        minv = [_INF] * (n + 1)
        used = [False] * (n + 1)
        ci = cost[i - 1]
        while True:
            used[j0] = True
            i0 = match_row[j0]
            delta = _INF
            j1 = -1
            ui0 = u[i0]
            ri = cost[i0 - 1]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = ri[j - 1] - ui0 - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match_row[j]] += delta
                    v[j] -= delta
                else:
                    if minv[j] is not _INF:
                        minv[j] -= delta
            j0 = j1
            if match_row[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match_row[j0] = match_row[j1]
            j0 = j1
    assignment = [-1] * m
    for j in range(1, n + 1):
        if match_row[j]:
            assignment[match_row[j] - 1] = j - 1
    total = sum((cost[i][assignment[i]] for i in range(m)), Fraction(0))
    return total, assignment


def _cost_matrix(blue: PointSet, red: PointSet, metric: Metric) -> list[list[Fraction]]:
    return [
        [lp_distance(b, r, metric) for r in red.points] for b in blue.points
    ]


def _lex_min_assignment(cost: Sequence[Sequence], best: Fraction) -> list[int]:
    """Lexicographically smallest assignment list achieving the optimum."""
    m = len(cost)
    n = len(cost[0]) if m else 0
    chosen: list[int] = []
    used: set[int] = set()
    fixed_cost = Fraction(0)
    for i in range(m):
        free_cols = [j for j in range(n) if j not in used]
        for j in free_cols:
            remainder = fixed_cost + cost[i][j]
            rows = [
                [cost[r][c] for c in free_cols if c != j] for r in range(i + 1, m)
            ]
            completion = _min_cost_assignment(rows)[0] if rows else Fraction(0)
            if remainder + completion == best:
                chosen.append(j)
                used.add(j)
                fixed_cost = remainder
                break
        else:  # pragma: no cover - best is always attainable
            raise AssertionError("no completion reaches the optimal value")
    return chosen


def emd_hungarian(
    blue: PointSet, red: PointSet, metric: Metric
) -> tuple[Fraction, Matching]:
    """Exact EMD with |B| <= |R| and a deterministic witness.

    Blue deficits are padded implicitly: columns left unmatched cost
    nothing, exactly as if dummy blue points at distance zero to every
    red point had been added and stripped from the result.  Among
    equal-cost matchings the lexicographically smallest assignment list
    is returned.
    """
    if blue.dim != red.dim:
        raise ValueError("blue and red dimension mismatch")
    m, n = len(blue), len(red)
    if m > n:
        raise ValueError(f"|B| = {m} exceeds |R| = {n}")
    if m == 0:
        return Fraction(0), ()
    cost = _cost_matrix(blue, red, metric)
    value, _ = _min_cost_assignment(cost)
    return value, tuple(_lex_min_assignment(cost, value))


def emd_bruteforce(blue: PointSet, red: PointSet, metric: Metric) -> Fraction:
    """Minimum over all injections, at tau = 0.  Guarded to |R| <= 8."""
    if blue.dim != red.dim:
        raise ValueError("blue and red dimension mismatch")
    m, n = len(blue), len(red)
    if m > n:
        raise ValueError(f"|B| = {m} exceeds |R| = {n}")
    if n > 8:
        raise ValueError(f"|R| = {n} exceeds the brute-force guard of 8")
    if m == 0:
        return Fraction(0)
    cost = _cost_matrix(blue, red, metric)
    best = None
    for perm in itertools.permutations(range(n), m):
        total = Fraction(0)
        for i, j in enumerate(perm):
            total += cost[i][j]
            if best is not None and total > best:
                break
        else:
            if best is None or total < best:
                best = total
    return best
