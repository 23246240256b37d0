"""Translation-optimal 1D matching: median algorithm and event sweep.

``emdut_1d_symmetric`` handles |B| = |R|: with both sets sorted, the
identity matching is optimal for every translation, so the best
translation is a median of the pairwise differences.

``emdut_1d_sweep`` handles |B| <= |R| by sweeping the translation from
below the first blue/red alignment to above the last one while
maintaining the current optimal monotone matching (as runs of
consecutive blues matched to consecutive reds), the linear piece of the
cost function, and one suffix-cost lower envelope per run.  Two event
kinds drive the sweep: alignment events (a blue meets a red, changing a
slope) and reassignment events (a run suffix shifts to the next reds,
triggered by a root of the run's envelope).

Internally the sweep rescales all coordinates by the common denominator
and works in integers; alignment events then have integer keys and only
envelope roots can be proper fractions.  Results are scaled back, so the
output is exact.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .core import PointSet
from .emd import emd_1d_monotone
from .envelope import NaiveEnvelope, TreeEnvelope

ORACLE_PAIR_LIMIT = 10_000
_TREE_CUTOFF = 64  # runs smaller than this are cheaper with the list envelope


class SweepStats(NamedTuple):
    events: int
    alignment_events: int
    reassignment_events: int
    pieces: Optional[list]  # (tau_lo, tau_hi, slope, intercept), descaled
    moves: Optional[list]   # (run_bs, run_bt, first_moved_blue), check mode only


def _sorted_scaled(ps: PointSet, scale: int) -> tuple[list[int], list[int]]:
    """Sort 1D points by (coordinate, index); return scaled coords and indices."""
    order = sorted(range(len(ps)), key=lambda i: (ps.points[i][0], i))
    coords = []
    for i in order:
        c = ps.points[i][0] * scale
        coords.append(int(c))
    return coords, order


def emdut_1d_symmetric(blue: PointSet, red: PointSet):
    """Minimum EMD over translations for equal-size 1D sets.

    Returns (value, tau, matching); tau is the lower median of the
    sorted pairwise differences, which is also the smallest optimal
    translation.
    """
    if blue.dim != 1 or red.dim != 1:
        raise ValueError("1-dimensional point sets required")
    if len(blue) != len(red):
        raise ValueError(f"size mismatch: |B| = {len(blue)}, |R| = {len(red)}")
    n = len(blue)
    if n == 0:
        return Fraction(0), Fraction(0), ()
    border = sorted(range(n), key=lambda i: (blue.points[i][0], i))
    rorder = sorted(range(n), key=lambda i: (red.points[i][0], i))
    diffs = sorted(
        red.points[rorder[i]][0] - blue.points[border[i]][0] for i in range(n)
    )
    tau = diffs[(n - 1) // 2]
    value = sum((abs(tau - d) for d in diffs), Fraction(0))
    assignment = [0] * n
    for i in range(n):
        assignment[border[i]] = rorder[i]
    return value, tau, tuple(assignment)


def emdut_1d_alignment_oracle(blue: PointSet, red: PointSet) -> Fraction:
    """Exhaustive reference: try every translation aligning a blue with a red.

    For any fixed monotone matching the cost is convex piecewise linear
    in tau and is minimized at a median of the matched differences, so
    some optimal translation aligns at least one pair.  Minimizing the
    1D EMD over all pairwise differences is therefore exact.
    """
    if blue.dim != 1 or red.dim != 1:
        raise ValueError("1-dimensional point sets required")
    m, n = len(blue), len(red)
    if m > n:
        raise ValueError(f"|B| = {m} exceeds |R| = {n}")
    if m * n > ORACLE_PAIR_LIMIT:
        raise ValueError(
            f"|B|*|R| = {m * n} exceeds the oracle guard of {ORACLE_PAIR_LIMIT}"
        )
    if m == 0:
        return Fraction(0)
    candidates = sorted({r[0] - b[0] for b in blue.points for r in red.points})
    best = None
    for tau in candidates:
        value, _ = emd_1d_monotone(blue.translate((tau,)), red)
        if best is None or value < best:
            best = value
    return best


@dataclass
class _Run:
    rid: int
    bs: int            # first blue (sorted order)
    bt: int            # last blue
    anchor: int        # red matched to bt
    env: object = None     # suffix-cost envelope, None when anchor is the last red
    epoch: int = 0
    event: object = None   # cached (tau, blue) for the scheduled reassignment


class _Sweep:
    """One sweep execution over integer-scaled coordinates."""

    def __init__(self, bc, rc, envelope_kind: str, check: bool):
        self.bc = bc
        self.rc = rc
        self.m = len(bc)
        self.n = len(rc)
        self.check = check
        if envelope_kind == "auto":
            envelope_kind = "naive" if self.m <= _TREE_CUTOFF else "tree"
        self.envelope_kind = envelope_kind
        self.phi = list(range(self.m))
        self.blue_run = [0] * self.m
        self.runs: dict[int, _Run] = {}
        self.next_rid = 0
        self.heap: list = []
        self.fs = -self.m
        self.fi = sum(rc[j] - bc[j] for j in range(self.m))
        self.events = 0
        self.align_events = 0
        self.move_events = 0
        self.move_log: Optional[list] = [] if check else None

    # -- envelope helpers ---------------------------------------------------

    def _new_env(self, lines):
        if self.envelope_kind == "tree":
            env = TreeEnvelope(seed=0xABCD + self.next_rid)
        else:
            env = NaiveEnvelope()
        for i, (a, b, tag) in enumerate(lines):
            env.insert(i, a, b, tag)
        return env

    def _delta_prime(self, j, tau):
        # current linear piece of the cost change when blue j switches from
        # its red to the next one; caller guarantees the next red exists
        v = self.phi[j]
        r, rp = self.rc[v], self.rc[v + 1]
        x = self.bc[j] + tau
        if x < r:
            return 0, rp - r
        if x < rp:
            return -2, r + rp - 2 * self.bc[j]
        return 0, r - rp

    def _run_lines(self, bs, bt, tau):
        # suffix sums of the per-blue switch costs, last blue's alone at the end
        acc_a = acc_b = 0
        out = []
        for j in range(bt, bs - 1, -1):
            da, db = self._delta_prime(j, tau)
            acc_a += da
            acc_b += db
            out.append((acc_a, acc_b, j))
        out.reverse()
        return out

    def _make_run(self, bs, bt, anchor, tau) -> _Run:
        rid = self.next_rid
        self.next_rid += 1
        run = _Run(rid, bs, bt, anchor)
        if anchor < self.n - 1:
            run.env = self._new_env(self._run_lines(bs, bt, tau))
        self.runs[rid] = run
        for j in range(bs, bt + 1):
            self.blue_run[j] = rid
        return run

    def _reschedule(self, run: _Run, tau):
        run.epoch += 1
        run.event = None
        if run.env is None or len(run.env) == 0:
            return
        got = run.env.root_piece(tau)
        if got is not None:
            root, tag = got
            if isinstance(root, Fraction) and root.denominator == 1:
                root = root.numerator
            run.event = (root, tag)
            heapq.heappush(self.heap, (root, 1, run.rid, run.epoch))

    def _verify_run_envelopes(self, tau):
        # check-mode only: stored suffix-cost lines must equal pieces
        # recomputed from scratch strictly inside the current interval
        for run in self.runs.values():
            if run.env is None:
                continue
            want = [(a, b) for a, b, _ in self._run_lines(run.bs, run.bt, tau)]
            got = [(a, b) for a, b, _ in run.env.lines()]
            assert got == want, (run.rid, got, want)

    # -- event handlers -------------------------------------------------------

    def _handle_alignment(self, j, v, tau):
        w = self.phi[j]
        if v == w:
            self.fs += 2
            self.fi += 2 * (self.bc[j] - self.rc[v])
            run = self.runs[self.blue_run[j]]
            if run.env is not None:
                run.env.add_range(0, j - run.bs + 1, -2, 2 * (self.rc[v] - self.bc[j]))
                self._reschedule(run, tau)
        elif v == w + 1:
            run = self.runs[self.blue_run[j]]
            if run.env is not None:
                run.env.add_range(0, j - run.bs + 1, 2, -2 * (self.rc[v] - self.bc[j]))
                self._reschedule(run, tau)

    def _handle_move(self, run: _Run, tau):
        root, j = run.event
        pos = j - run.bs
        line_a, line_b, _ = run.env.get(pos)
        if self.check:
            assert run.env.value_at(tau) == 0 == line_a * tau + line_b
            assert run.bs <= j <= run.bt
            self.move_log.append((run.bs, run.bt, j))
        self.fs += line_a
        self.fi += line_b
        bt = run.bt
        for k in range(j, bt + 1):
            self.phi[k] += 1
        new_anchor = run.anchor + 1
        # shrink or delete the source run
        if pos > 0:
            for _ in range(len(run.env) - pos):
                run.env.remove(pos)
            run.env.add_range(0, pos, -line_a, -line_b)
            run.bt = j - 1
            run.anchor = self.phi[j - 1]
            self._reschedule(run, tau)
        else:
            del self.runs[run.rid]
            run.epoch += 1  # invalidate any queued event
        # attach the moved suffix: merge with the next run when the red
        # indices become consecutive, otherwise start a fresh run
        nxt = self.runs[self.blue_run[bt + 1]] if bt + 1 < self.m else None
        if nxt is not None and self.phi[nxt.bs] == new_anchor + 1:
            if nxt.env is not None:
                base_a, base_b, _ = nxt.env.get(0)
                acc_a, acc_b = base_a, base_b
                for k in range(nxt.bs - 1, j - 1, -1):
                    da, db = self._delta_prime(k, tau)
                    acc_a += da
                    acc_b += db
                    nxt.env.insert(0, acc_a, acc_b, k)
            nxt.bs = j
            for k in range(j, bt + 1):
                self.blue_run[k] = nxt.rid
            self._reschedule(nxt, tau)
        else:
            moved = self._make_run(j, bt, new_anchor, tau)
            self._reschedule(moved, tau)

    # -- main loop -------------------------------------------------------------

    def run(self, collect_pieces: bool):
        m, n, bc, rc = self.m, self.n, self.bc, self.rc
        heap = self.heap
        for j in range(m):
            heapq.heappush(heap, (rc[0] - bc[j], 0, j, 0))
        start = heap[0][0] - 1
        self._make_run(0, m - 1, m - 1, start)
        run0 = self.runs[0]
        self._reschedule(run0, start)

        best_v = None
        best_tau = None
        best_runs = None
        pieces = [] if collect_pieces else None
        prev_tau = None
        while heap:
            tau, kind, x, y = heapq.heappop(heap)
            if kind == 1:
                run = self.runs.get(x)
                if run is None or run.epoch != y:
                    continue
            if prev_tau is not None and tau > prev_tau:
                if pieces is not None:
                    pieces.append((prev_tau, tau, self.fs, self.fi))
                if self.check:
                    self._verify_run_envelopes(Fraction(prev_tau + tau, 2))
            prev_tau = tau
            value = self.fs * tau + self.fi
            if best_v is None or value < best_v:
                best_v = value
                best_tau = tau
                best_runs = sorted(
                    (r.bs, r.bt, r.anchor) for r in self.runs.values()
                )
            self.events += 1
            if kind == 0:
                self.align_events += 1
                self._handle_alignment(x, y, tau)
                if y + 1 < n:
                    heapq.heappush(heap, (rc[y + 1] - bc[x], 0, x, y + 1))
            else:
                self.move_events += 1
                self._handle_move(self.runs[x], tau)
        return best_v, best_tau, best_runs, pieces


def emdut_1d_sweep(
    blue: PointSet,
    red: PointSet,
    *,
    envelope: str = "auto",
    return_stats: bool = False,
    collect_pieces: bool = False,
    check: bool = False,
):
    """Exact minimum 1D EMD over all translations, |B| <= |R|.

    Returns (value, tau, matching) where tau is the smallest optimal
    translation; with ``return_stats=True`` a :class:`SweepStats` is
    appended.  ``check`` enables internal invariant assertions.
    """
    if blue.dim != 1 or red.dim != 1:
        raise ValueError("1-dimensional point sets required")
    m, n = len(blue), len(red)
    if m > n:
        raise ValueError(f"|B| = {m} exceeds |R| = {n}")
    if m == 0:
        out = Fraction(0), Fraction(0), ()
        if return_stats:
            return (*out, SweepStats(0, 0, 0, [] if collect_pieces else None,
                                     [] if check else None))
        return out

    denom = 1
    for ps in (blue, red):
        for p in ps.points:
            denom = math.lcm(denom, p[0].denominator)
    bc, border = _sorted_scaled(blue, denom)
    rc, rorder = _sorted_scaled(red, denom)

    sweep = _Sweep(bc, rc, envelope, check)
    best_v, best_tau, best_runs, pieces = sweep.run(collect_pieces)

    value = Fraction(best_v, denom)
    tau = Fraction(best_tau, denom)
    assignment = [0] * m
    for bs, bt, anchor in best_runs:
        first_red = anchor - (bt - bs)
        for k in range(bt - bs + 1):
            assignment[border[bs + k]] = rorder[first_red + k]
    result = (value, tau, tuple(assignment))
    if return_stats:
        descaled = None
        if pieces is not None:
            descaled = [
                (Fraction(lo, denom), Fraction(hi, denom), fs, Fraction(fi, denom))
                for lo, hi, fs, fi in pieces
            ]
        stats = SweepStats(sweep.events, sweep.align_events, sweep.move_events,
                           descaled, sweep.move_log)
        return (*result, stats)
    return result
