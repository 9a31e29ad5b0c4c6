"""Exact branch-and-bound for the largest min-homogeneous or homogeneous set.

Min-homogeneous: for a candidate set ``S`` (a bitset), the best chain is
``max over y in S`` of ``y`` followed by the best chain inside
``{n in S : n > y, color(y, n) = q}`` for the best color ``q``.  The value of
a set is memoized, keyed by the set itself or, for translation-invariant
colorings, by the set shifted down to bit 0.

Homogeneous: for each color ``q``, a maximum clique search in the graph of
``q``-colored pairs, bounded by ``|chain| + |candidates|``.

Both searches are split into top-level tasks (an element, or a color and an
element) taken in a fixed order.  The answer is the longest chain, ties going
to the earliest task; when a target is given, the earliest task reaching it.
Worker processes take interleaved slices of the task list and the merge
applies the same rule, so the answer does not depend on ``parallelism``.
"""
from __future__ import annotations

import multiprocessing
import sys
import threading
import time
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..colorings.base import Coloring
from .outcome import Mode, NoneUpTo, SearchBudget, SearchOutcome, Witness
from .tables import ClassTables


COMPILED_MIN_SIZE = 256


class BudgetExceeded(Exception):
    pass


class _Meter:
    __slots__ = ("nodes", "max_nodes", "deadline")

    def __init__(self, budget: SearchBudget):
        self.nodes = 0
        self.max_nodes = budget.max_nodes
        self.deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded
        if self.deadline is not None and not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise BudgetExceeded


def _lowest(bits: int) -> int:
    return (bits & -bits).bit_length() - 1


class _MinHomSolver:
    def __init__(self, tables: ClassTables):
        self.t = tables
        self.memo: dict[int, tuple[int, ...]] = {}
        self.meter: _Meter | None = None

    def tasks(self) -> list:
        return list(range(self.t.size))

    def run_task(self, y: int, best_len: int, target: int | None) -> tuple[int, ...] | None:
        above = self.t.full >> (y + 1) << (y + 1)
        if 1 + above.bit_count() <= best_len:
            return None
        self.meter.tick()
        res = (y,) if best_len < 1 else None
        for _, _, sub in self._options(y, above, best_len):
            if 1 + sub.bit_count() <= best_len:
                break
            chain = self.best(sub)
            if 1 + len(chain) > best_len:
                res = (y,) + chain
                best_len = len(res)
        return res

    def _options(self, y: int, rest: int, best_len: int) -> list[tuple[int, int, int]]:
        opts = []
        for q, cls in self.t.classes(y).items():
            sub = rest & cls
            if sub:
                cnt = sub.bit_count()
                if 1 + cnt > best_len:
                    opts.append((-cnt, q, sub))
        opts.sort()
        return opts

    def best(self, s: int) -> tuple[int, ...]:
        if not s:
            return ()
        low = _lowest(s) if self.t.translation_invariant else 0
        key = s >> low
        hit = self.memo.get(key)
        if hit is not None:
            return tuple(i + low for i in hit)
        best: tuple[int, ...] = (_lowest(s),)
        rest = s
        while rest:
            if rest.bit_count() <= len(best):
                break
            bit = rest & -rest
            y = bit.bit_length() - 1
            rest ^= bit
            self.meter.tick()
            for negcnt, _, sub in self._options(y, rest, len(best)):
                if 1 - negcnt <= len(best):
                    break
                chain = self.best(sub)
                if 1 + len(chain) > len(best):
                    best = (y,) + chain
        self.memo[key] = tuple(i - low for i in best)
        return best


class _TargetReached(Exception):
    pass


class _HomogeneousSolver:
    def __init__(self, tables: ClassTables, compiled: bool = False):
        self.t = tables
        self.meter: _Meter | None = None
        self._colors: list[int] | None = None
        self.compiled = compiled
        self._adj_color: int | None = None
        self._adj = None

    def tasks(self) -> list:
        if self._colors is None:
            self._colors = self.t.colors()
        return [(q, y) for q in self._colors for y in range(self.t.size)]

    def run_task(self, task: tuple[int, int], best_len: int, target: int | None) -> tuple[int, ...] | None:
        q, y = task
        cand = self.t.neighbours(y, q)
        if 1 + cand.bit_count() <= best_len:
            return None
        self.meter.tick()
        found: list[tuple[int, ...]] = [()]
        floor = best_len
        nb = self.t.neighbours
        meter = self.meter

        def rec(chain: tuple[int, ...], cand: int) -> None:
            if len(chain) > max(floor, len(found[0])):
                found[0] = chain
                if target is not None and len(chain) >= target:
                    raise _TargetReached
            while cand:
                if len(chain) + cand.bit_count() <= max(floor, len(found[0])):
                    return
                bit = cand & -cand
                z = bit.bit_length() - 1
                cand ^= bit
                meter.tick()
                rec(chain + (z,), cand & nb(z, q))

        try:
            rec((y,), cand)
        except _TargetReached:
            pass
        return found[0] or None

    def _rows(self, q: int):
        from ._kernels import bitset_rows
        if self._adj_color != q:
            self._adj = None
            self._adj = bitset_rows([self.t.neighbours(y, q) for y in range(self.t.size)], self.t.size)
            self._adj_color = q
        return self._adj

    def run_slice(self, tasks: Sequence, indices: Sequence[int], target: int | None,
                  best: tuple[int, ...], best_idx: int | None) -> tuple[tuple[int, ...], int | None]:
        """Compiled path: consecutive tasks of one color go to the kernel in
        chunks, so the time budget is checked between chunks."""
        from ._kernels import clique_search

        meter = self.meter
        idx = list(indices)
        pos = 0
        while pos < len(idx):
            q = tasks[idx[pos]][0]
            end = pos
            while end < len(idx) and tasks[idx[end]][0] == q and end - pos < 512:
                end += 1
            group = idx[pos:end]
            ys = np.fromiter((tasks[ti][1] for ti in group), dtype=np.int64, count=len(group))
            left = -1 if meter.max_nodes is None else max(0, meter.max_nodes - meter.nodes)
            chain, blen, bt, nodes, status = clique_search(self._rows(q), ys, len(best),
                                                           target or 0, left)
            meter.nodes += int(nodes)
            if bt >= 0 and blen > len(best):
                best = tuple(int(v) for v in chain[:blen])
                best_idx = group[bt]
            if status == 2:
                raise _PartialResult(best, best_idx)
            if status == 1:
                break
            if meter.deadline is not None and time.monotonic() > meter.deadline:
                raise _PartialResult(best, best_idx)
            pos = end
        return best, best_idx


class _PartialResult(BudgetExceeded):
    def __init__(self, best, best_idx):
        super().__init__()
        self.best = best
        self.best_idx = best_idx


@dataclass
class _SliceResult:
    task_index: int | None
    chain: tuple[int, ...]
    nodes: int
    complete: bool


def _run_slice(solver, tasks: Sequence, indices: Sequence[int], target: int | None,
               budget: SearchBudget) -> _SliceResult:
    solver.meter = _Meter(budget)
    best: tuple[int, ...] = ()
    best_idx = None
    complete = True
    try:
        if getattr(solver, "compiled", False):
            best, best_idx = solver.run_slice(tasks, indices, target, best, best_idx)
            return _SliceResult(best_idx, best, solver.meter.nodes, True)
        for ti in indices:
            r = solver.run_task(tasks[ti], len(best), target)
            if r is not None and len(r) > len(best):
                best, best_idx = r, ti
            if target is not None and len(best) >= target:
                break
    except _PartialResult as part:
        best, best_idx = part.best, part.best_idx
        complete = False
    except BudgetExceeded:
        complete = False
    return _SliceResult(best_idx, best, solver.meter.nodes, complete)


def _deep(fn: Callable, *args):
    """Run ``fn`` on a thread with a large stack; chains can be long."""
    out: list = []
    err: list = []

    def target():
        try:
            out.append(fn(*args))
        except BaseException as exc:  # re-raised in the caller
            err.append(exc)

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 200_000))
    old_stack = threading.stack_size()
    try:
        threading.stack_size(512 * 1024 * 1024)
        th = threading.Thread(target=target)
        th.start()
    finally:
        threading.stack_size(old_stack)
    th.join()
    sys.setrecursionlimit(old_limit)
    if err:
        raise err[0]
    return out[0]


_WORKER_STATE: tuple | None = None


def _worker(args: tuple[int, int]) -> _SliceResult:
    w, p = args
    solver, tasks, target, budget = _WORKER_STATE
    return _deep(_run_slice, solver, tasks, range(w, len(tasks), p), target, budget)


def _merge(results: list[_SliceResult], target: int | None) -> tuple[tuple[int, ...], int | None]:
    hits = [r for r in results if r.task_index is not None]
    if not hits:
        return (), None
    if target is not None:
        reached = [r for r in hits if len(r.chain) >= target]
        if reached:
            r = min(reached, key=lambda r: r.task_index)
            return r.chain, r.task_index
    r = min(hits, key=lambda r: (-len(r.chain), r.task_index))
    return r.chain, r.task_index


def _search(mode: Mode, coloring: Coloring, interval: tuple[int, int] | None,
            target_k: int | None, budget: SearchBudget | None, engine: str = "auto") -> SearchOutcome:
    global _WORKER_STATE
    budget = budget or SearchBudget()
    lo, hi = interval if interval is not None else (coloring.lo, coloring.hi)
    if target_k is not None and target_k < 1:
        raise ValueError("target must be at least 1")
    start = time.monotonic()
    tables = ClassTables(coloring, lo, hi)
    if engine not in ("auto", "python", "compiled"):
        raise ValueError("engine must be auto, python or compiled")
    if mode is Mode.MIN_HOMOGENEOUS:
        solver = _MinHomSolver(tables)
    else:
        compiled = engine == "compiled" or (engine == "auto" and tables.size >= COMPILED_MIN_SIZE)
        solver = _HomogeneousSolver(tables, compiled)
    tasks = solver.tasks()
    p = max(1, min(budget.parallelism, len(tasks)))
    if p == 1:
        results = [_deep(_run_slice, solver, tasks, range(len(tasks)), target_k, budget)]
    else:
        _WORKER_STATE = (solver, tasks, target_k, budget)
        try:
            with multiprocessing.get_context("fork").Pool(p) as pool:
                results = pool.map(_worker, [(w, p) for w in range(p)])
        finally:
            _WORKER_STATE = None
    chain, _ = _merge(results, target_k)
    if not chain and hi > lo:
        chain = (0,)  # a single element is trivially homogeneous
    complete = all(r.complete for r in results)
    elements = tuple(lo + i for i in chain)
    cid = coloring.name
    witness = Witness(elements, mode, cid) if elements else None
    if witness is not None:
        witness.verify(coloring)
    if witness is not None and (target_k is None or len(witness) >= target_k):
        result: Witness | NoneUpTo = witness
    else:
        result = NoneUpTo(target_k if target_k is not None else 1, witness)
    return SearchOutcome(
        result=result,
        exhaustive=complete,
        nodes_explored=sum(r.nodes for r in results),
        wall_time_ms=int((time.monotonic() - start) * 1000),
        mode=mode,
        interval=(lo, hi),
        target=target_k,
        coloring=coloring.header(),
    )


def max_min_homogeneous(coloring: Coloring, interval: tuple[int, int] | None = None,
                        target_k: int | None = None, budget: SearchBudget | None = None) -> SearchOutcome:
    """Largest min-homogeneous subset of ``interval`` (default: the domain).

    With ``target_k`` the search stops at the first witness of that size and
    otherwise certifies ``NoneUpTo(target_k)``; without it the exact maximum
    is returned as a witness.  A budget overrun gives ``exhaustive=False``
    and never a false certificate."""
    return _search(Mode.MIN_HOMOGENEOUS, coloring, interval, target_k, budget)


def max_homogeneous(coloring: Coloring, interval: tuple[int, int] | None = None,
                    target_k: int | None = None, budget: SearchBudget | None = None,
                    engine: str = "auto") -> SearchOutcome:
    """Largest homogeneous (single-color) subset; same contract as
    :func:`max_min_homogeneous`.

    ``engine="compiled"`` runs the clique search in a numba kernel with the
    same branch order and answer as ``engine="python"``; ``auto`` picks the
    kernel for intervals of at least ``COMPILED_MIN_SIZE`` elements."""
    return _search(Mode.HOMOGENEOUS, coloring, interval, target_k, budget, engine)
