"""Orbit semi-metrics ``d_i``, the statistics ``I`` and ``D``, and the
lower-bound coloring ``c_g = Pr(I, D)``.

For a base point ``mu`` and the g-hierarchy ``(f_g)_i``, ``d_i(m, n)`` counts
the level-i orbit points ``(f_g)_i^(l)(mu)`` lying in ``(m, n]``.  Orbits are
tabulated once per level up to the end of the working interval.  Level ``i+1``
is read off level ``i`` by index jumps: from the orbit point at index ``p``,
one application of ``(f_g)_{i+1}`` lands on index ``p + step(x)``.
"""
from __future__ import annotations

from bisect import bisect_right
from typing import Callable

import numpy as np

from ..arith import default_cap, pair_encode
from ..hierarchy import GStep, fg_eval, mu_g
from .base import Coloring


class SemiMetricContext:
    """Tabulated orbits of the g-hierarchy from ``mu`` inside ``[mu, end)``.

    Levels are added until one has a single orbit point below ``end``; every
    higher level then has ``d = 0`` on the interval.  The step
    ``isqrt(g(x)) // 2`` must be positive at every orbit point visited,
    otherwise an orbit stalls and ``d_i`` would be infinite.
    """

    def __init__(self, g: Callable[[int], int], mu: int, end: int, max_levels: int = 64):
        if not 0 <= mu < end:
            raise ValueError(f"need 0 <= mu < end, got mu={mu}, end={end}")
        self.g = g
        self.mu = mu
        self.end = end
        self.step = GStep(g)
        orbits = [list(range(mu, end))]
        while len(orbits[-1]) > 1:
            if len(orbits) >= max_levels:
                raise ValueError(f"more than {max_levels} levels needed")
            prev = orbits[-1]
            nxt = []
            pos = 0
            while pos < len(prev):
                x = prev[pos]
                nxt.append(x)
                s = self.step(x)
                if s < 1:
                    raise ValueError(f"step isqrt(g({x}))//2 is 0; orbit from {mu} stalls")
                pos += s
            orbits.append(nxt)
        self._orbits = [tuple(o) for o in orbits]
        self._arrays = [np.asarray(o, dtype=np.int64) for o in orbits]

    @property
    def levels(self) -> int:
        return len(self._orbits)

    def orbit(self, i: int) -> tuple[int, ...]:
        """Level-i orbit points below ``end``, in increasing order."""
        if not 1 <= i:
            raise ValueError("levels start at 1")
        if i > self.levels:
            return (self.mu,)
        return self._orbits[i - 1]

    def _check(self, m: int, n: int) -> None:
        if not (self.mu <= m <= n < self.end):
            raise ValueError(f"need {self.mu} <= m <= n < {self.end}, got ({m}, {n})")

    def d(self, i: int, m: int, n: int) -> int:
        self._check(m, n)
        orb = self.orbit(i)
        return bisect_right(orb, n) - bisect_right(orb, m)

    def I_and_D(self, m: int, n: int) -> tuple[int, int]:
        self._check(m, n)
        if m == n:
            raise ValueError("I and D need m < n")
        for i in range(self.levels, 0, -1):
            dist = self.d(i, m, n)
            if dist > 0:
                return i, dist
        raise AssertionError("d_1 is n - m > 0")

    def color(self, m: int, n: int) -> int:
        return pair_encode(*self.I_and_D(m, n))

    def row_ID(self, m: int) -> tuple[np.ndarray, np.ndarray]:
        """``(I, D)`` arrays for the pairs ``(m, n)``, ``n = m+1 .. end-1``."""
        self._check(m, m)
        ns = np.arange(m + 1, self.end, dtype=np.int64)
        big_i = np.zeros(ns.size, dtype=np.int64)
        big_d = np.zeros(ns.size, dtype=np.int64)
        for i in range(self.levels, 0, -1):
            arr = self._arrays[i - 1]
            base = np.searchsorted(arr, m, side="right")
            dist = np.searchsorted(arr, ns, side="right") - base
            fill = (big_i == 0) & (dist > 0)
            big_i[fill] = i
            big_d[fill] = dist[fill]
        return big_i, big_d

    def row(self, m: int) -> np.ndarray:
        big_i, big_d = self.row_ID(m)
        s = big_i + big_d
        return s * (s + 1) // 2 + big_d

    def coloring(self, name: str = "c_g", params: dict | None = None) -> Coloring:
        return Coloring(self.mu, self.end, self.color, name,
                        params if params is not None else {"mu": self.mu, "end": self.end},
                        row_fn=self.row)


def cg_context(g: Callable[[int], int], k: int, limit: int = 10**6, cap: int | None = None) -> SemiMetricContext:
    """Context on ``[mu_g(k), (f_g)_k(mu_g(k)))``.

    ``limit`` bounds the search for ``mu_g(k)``; the interval end must be
    finite under ``cap``."""
    mu = mu_g(g, k, limit)
    if mu is None:
        raise ValueError(f"mu_g({k}) not found below {limit}")
    end = fg_eval(g, k, mu, cap if cap is not None else default_cap())
    if end.is_top:
        raise OverflowError(f"(f_g)_{k}({mu}) exceeds the cap")
    return SemiMetricContext(g, mu, end.value)


def cg_coloring(g: Callable[[int], int], k: int, limit: int = 10**6, cap: int | None = None) -> Coloring:
    """``c_g`` on ``[mu_g(k), (f_g)_k(mu_g(k)))``."""
    ctx = cg_context(g, k, limit, cap)
    desc = getattr(g, "describe", None)
    return ctx.coloring("c_g", {"g": desc() if desc else repr(g), "k": k, "mu": ctx.mu, "end": ctx.end})
