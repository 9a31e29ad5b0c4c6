"""Named colorings: the base-10 interval coloring, the 42-vertex table on
``[0, 43)``, the stitched piecewise coloring, the base-s coloring, and
zero-padding below a base point."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from ..arith import ilog, pair_encode
from ..hierarchy import Schedule, beta_of
from .base import Coloring
from .ramsey42 import load_graph

BASE10_LO = 43
BASE10_HI = 10**4


def base10_color(m: int, n: int) -> int:
    """``Pr(d1, d2 + 1)`` where ``10**d1`` is the largest power of ten
    (exponent at most 3) strictly below ``|n - m|``, or ``d1 = 0`` when the
    difference is 1, and ``d2`` is the decimal digit of ``|n - m|`` at
    position ``d1``."""
    delta = abs(n - m)
    if not 1 <= delta < 10**4:
        raise ValueError(f"difference {delta} outside 1..9999")
    d1 = sum(1 for p in (1, 2, 3) if 10**p < delta)
    d2 = (delta // 10**d1) % 10
    return pair_encode(d1, d2 + 1)


def _base10_row(deltas: np.ndarray) -> np.ndarray:
    d1 = (deltas > 10).astype(np.int64) + (deltas > 100) + (deltas > 1000)
    d2 = (deltas // 10**d1) % 10
    s = d1 + d2 + 1
    return s * (s + 1) // 2 + d2 + 1


def base10_interval_coloring(lo: int = BASE10_LO, hi: int = BASE10_HI) -> Coloring:
    if not 0 <= lo < hi <= BASE10_HI:
        raise ValueError(f"base-10 coloring needs 0 <= lo < hi <= {BASE10_HI}")
    return Coloring(
        lo, hi, base10_color, "base10_interval", {},
        row_fn=lambda m: _base10_row(np.arange(1, hi - m, dtype=np.int64)),
        translation_invariant=True,
    )


def small_interval_coloring(adj=None) -> Coloring:
    """The 42-vertex table placed on ``[0, 43)``.

    Vertex ``v`` of the graph sits at element ``v + 1``; a pair of elements
    gets color 1 iff the vertices are adjacent.  Pairs whose minimum is 0 or
    1 get color 0 so the coloring is regressive for any bound with
    ``g(0) >= 0`` and ``g(1) >= 0``."""
    graph = load_graph() if adj is None else np.asarray(adj, dtype=np.int64)
    if graph.shape != (42, 42):
        raise ValueError("the small-interval table needs a 42-vertex graph")
    mat = np.zeros((43, 43), dtype=np.int64)
    mat[1:, 1:] = graph
    mat[:2, :] = 0

    return Coloring(0, 43, lambda m, n: int(mat[m, n]), "small_interval", {"graph": "ramsey42"},
                    row_fn=lambda m: mat[m, m + 1:])


def stitched_coloring(schedule: Schedule, per_interval: Sequence[Coloring]) -> Coloring:
    """Interval ``t`` of the schedule is colored by ``per_interval[t]``; pairs
    straddling two intervals get color 0."""
    bounds = schedule.intervals
    if len(per_interval) != len(bounds):
        raise ValueError(f"schedule has {len(bounds)} intervals, got {len(per_interval)} colorings")
    for (a, b), col in zip(bounds, per_interval):
        if not (col.lo <= a and b <= col.hi):
            raise ValueError(f"coloring on [{col.lo}, {col.hi}) does not cover interval [{a}, {b})")
    end = schedule.end

    def color_of(m: int, n: int) -> int:
        t = beta_of(schedule, m)
        if t != beta_of(schedule, n):
            return 0
        return per_interval[t - 1].color_of(m, n)

    def row_fn(m: int) -> np.ndarray:
        t = beta_of(schedule, m)
        hi = bounds[t - 1][1]
        out = np.zeros(end - m - 1, dtype=np.int64)
        out[: hi - m - 1] = per_interval[t - 1].row(m)[: hi - m - 1]
        return out

    return Coloring(0, end, color_of, "stitched",
                    {"mu": list(schedule.mu), "intervals": [c.name for c in per_interval]},
                    row_fn=row_fn)


def base_s_color(s: int, m: int, n: int) -> int:
    """``ilog_s(m)`` when ``m`` and ``n`` have different numbers of base-s
    digits, else the least index (least significant digit = 0) where their
    digits differ."""
    if m > n:
        m, n = n, m
    if m < 1 or m == n:
        raise ValueError("base-s coloring needs 1 <= m < n")
    lm = ilog(m, s)
    if lm != ilog(n, s):
        return lm
    i = 0
    while m % s == n % s:
        m //= s
        n //= s
        i += 1
    return i


def base_s_coloring(s: int, hi: int, lo: int = 1) -> Coloring:
    if s < 2:
        raise ValueError("base-s coloring needs s >= 2")
    if not 1 <= lo < hi:
        raise ValueError("base-s coloring needs 1 <= lo < hi")
    powers = [1]
    while powers[-1] <= hi:
        powers.append(powers[-1] * s)
    pw = np.asarray(powers, dtype=np.int64)

    def row_fn(m: int) -> np.ndarray:
        ns = np.arange(m + 1, hi, dtype=np.int64)
        lm = ilog(m, s)
        ln = np.searchsorted(pw, ns, side="right") - 1
        out = np.full(ns.size, -1, dtype=np.int64)
        out[ln != lm] = lm
        a = np.full(ns.size, m, dtype=np.int64)
        b = ns.copy()
        i = 0
        while (out < 0).any():
            hit = (out < 0) & (a % s != b % s)
            out[hit] = i
            a //= s
            b //= s
            i += 1
        return out

    return Coloring(lo, hi, lambda m, n: base_s_color(s, m, n), "base_s", {"s": s}, row_fn=row_fn)


def zero_padded(coloring: Coloring, lo: int = 0) -> Coloring:
    """Extend ``coloring`` down to ``lo``, coloring every pair with minimum
    below the original domain by 0."""
    if lo > coloring.lo:
        raise ValueError("padding can only extend the domain downwards")
    base_lo, hi = coloring.lo, coloring.hi

    def color_of(m: int, n: int) -> int:
        return 0 if m < base_lo else coloring.color_of(m, n)

    def row_fn(m: int) -> np.ndarray:
        if m < base_lo:
            return np.zeros(hi - m - 1, dtype=np.int64)
        return coloring.row(m)

    return Coloring(lo, hi, color_of, coloring.name + "+pad", dict(coloring.params, padded_from=lo),
                    row_fn=row_fn)
