"""Exact small regressive Ramsey numbers by backtracking.

``nu_g(k)`` is the least ``N`` such that every g-regressive coloring of the
pairs of ``[0, N)`` has a min-homogeneous k-set.  For ``N = k, k+1, ...`` the
search tries to build a bad coloring, filling column ``n`` (all pairs
``(m, n)``) for increasing ``n`` and, inside a column, ``m`` from ``n - 1``
down to 0.  When ``(m, n)`` is set, every pair inside ``[m, n]`` is known, so
any min-homogeneous k-set with least element ``m`` and largest ``n`` is
detected right then.

A k-set ``h_1 < ... < h_k = n`` with ``h_1 = m`` is min-homogeneous iff
``color(h_i, h_j) = color(h_i, n)`` for all ``i < j``.  With
``P[a] = {b in (a, n) : color(a, b) = color(a, n)}`` that is a chain
``m, h_2, ..., h_{k-1}`` where each later element lies in ``P`` of every
earlier one.

Colors at a fixed minimum are interchangeable, so row ``m`` is kept in
first-appearance order: ``color(m, n)`` is at most one more than the largest
color used so far in that row.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .outcome import SearchBudget


class _Stop(Exception):
    pass


@dataclass
class NuResult:
    """``value`` is ``nu_g(k)`` when ``exhaustive``; otherwise ``None`` and
    every ``N`` below ``not_found_below`` has a bad coloring (the largest
    one is kept in ``bad_coloring``)."""

    k: int
    value: int | None
    not_found_below: int | None
    exhaustive: bool
    nodes_explored: int
    wall_time_ms: int
    bad_coloring: list[list[int]] | None = None
    per_N: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "value": self.value,
            "not_found_below": self.not_found_below,
            "exhaustive": self.exhaustive,
            "nodes_explored": self.nodes_explored,
            "wall_time_ms": self.wall_time_ms,
            "bad_coloring": self.bad_coloring,
            "per_N": self.per_N,
        }


class _Search:
    def __init__(self, g: Callable[[int], int], k: int, N: int, meter):
        self.k = k
        self.N = N
        self.gmax = [g(m) for m in range(N)]
        self.color = [[-1] * N for _ in range(N)]
        # E[a][c]: bitset of b > a already assigned with color(a, b) = c
        self.E = [dict() for _ in range(N)]
        self.rowmax = [-1] * N
        self.meter = meter

    def _chain(self, cand: int, need: int, P: list[int]) -> bool:
        if need == 0:
            return True
        while cand:
            if cand.bit_count() < need:
                return False
            bit = cand & -cand
            b = bit.bit_length() - 1
            cand ^= bit
            if self._chain(cand & P[b], need - 1, P):
                return True
        return False

    def _forms_min_hom(self, m: int, n: int) -> bool:
        k = self.k
        if n - m + 1 < k:
            return False
        below_n = (1 << n) - 1
        P = [0] * n
        for a in range(m, n):
            P[a] = self.E[a].get(self.color[a][n], 0) & below_n
        if k == 2:
            return True
        return self._chain(P[m], k - 2, P)

    def run(self) -> list[list[int]] | None:
        pairs = [(m, n) for n in range(1, self.N) for m in range(n - 1, -1, -1)]
        if self._extend(pairs, 0):
            return [row[:] for row in self.color]
        return None

    def _extend(self, pairs, idx: int) -> bool:
        if idx == len(pairs):
            return True
        m, n = pairs[idx]
        top = min(self.gmax[m], self.rowmax[m] + 1)
        prev_max = self.rowmax[m]
        for c in range(top + 1):
            self.meter()
            self.color[m][n] = c
            self.E[m][c] = self.E[m].get(c, 0) | (1 << n)
            self.rowmax[m] = max(prev_max, c)
            if not self._forms_min_hom(m, n) and self._extend(pairs, idx + 1):
                return True
            self.E[m][c] ^= 1 << n
            self.rowmax[m] = prev_max
        self.color[m][n] = -1
        return False


def has_bad_coloring(g: Callable[[int], int], k: int, N: int,
                     budget: SearchBudget | None = None) -> tuple[list[list[int]] | None, int, bool]:
    """Search a g-regressive coloring of ``[0, N)`` with no min-homogeneous
    k-set.  Returns ``(coloring or None, nodes, complete)``; the coloring is a
    matrix with ``-1`` on and below the diagonal."""
    budget = budget or SearchBudget()
    deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit
    count = [0]

    def meter():
        count[0] += 1
        if budget.max_nodes is not None and count[0] > budget.max_nodes:
            raise _Stop
        if deadline is not None and not count[0] & 1023 and time.monotonic() > deadline:
            raise _Stop

    search = _Search(g, k, N, meter)
    try:
        return search.run(), count[0], True
    except _Stop:
        return None, count[0], False


def nu_exact(g: Callable[[int], int], k: int, N_limit: int, budget: SearchBudget | None = None,
             checkpoint: str | Path | None = None) -> NuResult:
    """Least ``N <= N_limit`` at which no bad coloring exists.

    The budget applies to the whole run.  With ``checkpoint``, progress
    (the last ``N`` shown to have a bad coloring) is saved after each ``N``
    and a matching checkpoint is resumed from."""
    if k < 2:
        raise ValueError("nu_exact needs k >= 2")
    budget = budget or SearchBudget()
    start = time.monotonic()
    desc = getattr(g, "describe", None)
    g_desc = desc() if desc else repr(g)
    N = k
    nodes = 0
    bad = None
    per_N: list[dict] = []
    ck = Path(checkpoint) if checkpoint is not None else None
    if ck is not None and ck.exists():
        state = json.loads(ck.read_text())
        if state.get("g") == g_desc and state.get("k") == k:
            N = state["next_N"]
            bad = state.get("bad_coloring")
            per_N = state.get("per_N", [])
            nodes = state.get("nodes", 0)

    def elapsed() -> float:
        return time.monotonic() - start

    while N <= N_limit:
        left = None if budget.time_limit is None else budget.time_limit - elapsed()
        if left is not None and left <= 0:
            break
        sub = SearchBudget(None if budget.max_nodes is None else max(0, budget.max_nodes - nodes), left)
        coloring, used, complete = has_bad_coloring(g, k, N, sub)
        nodes += used
        if not complete:
            break
        per_N.append({"N": N, "bad_coloring_exists": coloring is not None, "nodes": used})
        if coloring is None:
            return NuResult(k, N, None, True, nodes, int(elapsed() * 1000), bad, per_N)
        bad = coloring
        N += 1
        if ck is not None:
            ck.write_text(json.dumps({"g": g_desc, "k": k, "next_N": N, "bad_coloring": bad,
                                      "per_N": per_N, "nodes": nodes}))
    return NuResult(k, None, N, False, nodes, int(elapsed() * 1000), bad, per_N)
