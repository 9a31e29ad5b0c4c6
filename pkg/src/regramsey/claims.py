"""Registry of finitely checkable claims, each behind a stable identifier.

Every check returns a :class:`ClaimReport` with a status and the evidence
(counterexamples, witnesses, exact maxima) as plain JSON data.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Callable

import numpy as np

from .bounds import ScheduleRoot, parse_bound
from .colorings import (base10_interval_coloring, base_s_coloring, cg_context, from_matrix,
                        load_graph, small_interval_coloring, stitched_coloring, verify_regressive)
from .hierarchy import Status, check_growth_inequalities
from .search import SearchBudget, max_homogeneous, max_min_homogeneous


@dataclass
class ClaimReport:
    claim: str
    params: dict
    status: Status
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"claim": self.claim, "params": self.params, "status": self.status.value,
                "details": self.details}


@dataclass(frozen=True)
class Claim:
    id: str
    summary: str
    defaults: dict
    run: Callable[..., ClaimReport]


def _budget(p: dict) -> SearchBudget:
    return SearchBudget(p.get("max_nodes"), p.get("time_limit"), int(p.get("jobs", 1)))


def _search_status(outcome) -> Status:
    if not outcome.exhaustive and not outcome.found:
        return Status.INDETERMINATE
    return Status.FAIL if outcome.found else Status.PASS


def check_small_dg(g="id", k=3, **_) -> ClaimReport:
    """``D(m, n) <= isqrt(g(m)) // 2`` for every pair of the c_g interval."""
    gb = parse_bound(g) if isinstance(g, str) else g
    ctx = cg_context(gb, int(k))
    worst = None
    for m in range(ctx.mu, ctx.end - 1):
        _, big_d = ctx.row_ID(m)
        bound = isqrt(gb(m)) // 2
        bad = np.flatnonzero(big_d > bound)
        if bad.size:
            n = m + 1 + int(bad[0])
            worst = {"m": m, "n": n, "D": int(big_d[bad[0]]), "bound": bound}
            break
    params = {"g": str(g), "k": int(k)}
    details = {"interval": [ctx.mu, ctx.end], "levels": ctx.levels, "counterexample": worst}
    return ClaimReport("smallDg", params, Status.FAIL if worst else Status.PASS, details)


def check_g_regressive(g="id", k=3, **_) -> ClaimReport:
    """``c_g(m, n) <= g(m)`` on the c_g interval; also reports the strict form
    ``c_g(m, n) < g(m)`` where ``isqrt(g(m)) // 2 > 2``."""
    gb = parse_bound(g) if isinstance(g, str) else g
    ctx = cg_context(gb, int(k))
    col = ctx.coloring()
    v = verify_regressive(col, gb)
    strict = None
    for m in range(ctx.mu, ctx.end - 1):
        if isqrt(gb(m)) // 2 > 2:
            row = ctx.row(m)
            bad = np.flatnonzero(row >= gb(m))
            if bad.size:
                strict = {"m": m, "n": m + 1 + int(bad[0]), "color": int(row[bad[0]]), "bound": gb(m)}
                break
    details = {"interval": [ctx.mu, ctx.end], "counterexample": None if v is None else v.to_json(),
               "strict_counterexample": strict}
    status = Status.PASS if v is None and strict is None else Status.FAIL
    return ClaimReport("g-regressive", {"g": str(g), "k": int(k)}, status, details)


def check_no_min_hom(g="id", k=3, **p) -> ClaimReport:
    """No min-homogeneous set of size ``k + 1`` for c_g on its interval."""
    gb = parse_bound(g) if isinstance(g, str) else g
    col = cg_context(gb, int(k)).coloring()
    out = max_min_homogeneous(col, target_k=int(k) + 1, budget=_budget(p))
    return ClaimReport("noMinHom", {"g": str(g), "k": int(k)}, _search_status(out), out.to_json())


def _blocks(s: int, N: int) -> list[tuple[int, int]]:
    out = []
    b = 0
    while s**b <= N:
        out.append((s**b, min(s ** (b + 1), N + 1)))
        b += 1
    return out


def check_svalues(s=2, N=10**4, **p) -> ClaimReport:
    """Every homogeneous (s+1)-set of the base-s coloring on ``[1, N]`` has
    its least and largest elements in different ``ilog_s`` blocks, checked as:
    no block ``[s^b, s^(b+1))`` contains a homogeneous (s+1)-set."""
    s, N = int(s), int(N)
    col = base_s_coloring(s, N + 1)
    per_block = []
    status = Status.PASS
    for lo, hi in _blocks(s, N):
        if hi - lo < s + 1:
            per_block.append({"block": [lo, hi], "max": hi - lo, "exhaustive": True})
            continue
        out = max_homogeneous(col, (lo, hi), target_k=s + 1, budget=_budget(p))
        per_block.append({"block": [lo, hi], "found": out.found, "exhaustive": out.exhaustive,
                          "witness": list(out.best.elements) if out.found else None})
        if out.found:
            status = Status.FAIL
        elif not out.exhaustive and status is Status.PASS:
            status = Status.INDETERMINATE
    return ClaimReport("svalues", {"s": s, "N": N}, status, {"blocks": per_block})


def check_reg_hom2(s=2, N=10**4, **p) -> ClaimReport:
    """No homogeneous set of size ``2s + 1`` for the base-s coloring on ``[1, N]``."""
    s, N = int(s), int(N)
    out = max_homogeneous(base_s_coloring(s, N + 1), target_k=2 * s + 1, budget=_budget(p))
    return ClaimReport("regHom2", {"s": s, "N": N}, _search_status(out), out.to_json())


def _growth(name: str) -> Callable[..., ClaimReport]:
    def run(t=1, i=None, k=None, n=3, cap=None, **_) -> ClaimReport:
        level = int(i if i is not None else (k if k is not None else 1))
        checks = [c for c in check_growth_inequalities(int(t), level, int(n), cap) if c.name == name]
        statuses = {c.status for c in checks}
        if Status.FAIL in statuses:
            status = Status.FAIL
        elif Status.INDETERMINATE in statuses:
            status = Status.INDETERMINATE
        elif statuses == {Status.NOT_APPLICABLE}:
            status = Status.NOT_APPLICABLE
        else:
            status = Status.PASS
        return ClaimReport(name, {"t": int(t), "i": level, "n": int(n)}, status,
                           {"checks": [c.to_json() for c in checks]})
    run.__doc__ = f"Growth inequality ``{name}`` at ``(t, i, n)``."
    return run


def check_base10(target=6, lo=43, hi=10**4, **p) -> ClaimReport:
    """No min-homogeneous set of size ``target`` for the base-10 coloring;
    the report carries the exact maximum when the search completes."""
    col = base10_interval_coloring(int(lo), int(hi))
    out = max_min_homogeneous(col, target_k=int(target), budget=_budget(p))
    return ClaimReport("base10-nominhom", {"target": int(target), "lo": int(lo), "hi": int(hi)},
                       _search_status(out), out.to_json())


def check_table42(target=5, **p) -> ClaimReport:
    """The shipped 42-vertex graph has no homogeneous set of size ``target``."""
    col = from_matrix(load_graph(), 0, "ramsey42")
    out = max_homogeneous(col, target_k=int(target), budget=_budget(p))
    return ClaimReport("table42-nohom", {"target": int(target)}, _search_status(out), out.to_json())


def check_stitched(hi=10**4, **_) -> ClaimReport:
    """The table on ``[0, 43)`` stitched to the base-10 coloring on
    ``[43, hi)`` is regressive for ``n -> iroot(n, beta(n))``."""
    from .registry import toy_schedule
    from .hierarchy import Schedule
    sched = toy_schedule() if int(hi) == 10**4 else Schedule((0, 43, int(hi)))
    col = stitched_coloring(sched, [small_interval_coloring(), base10_interval_coloring(43, sched.mu[2])])
    v = verify_regressive(col, ScheduleRoot(sched))
    return ClaimReport("stitched-regressive", {"mu": list(sched.mu)},
                       Status.PASS if v is None else Status.FAIL,
                       {"counterexample": None if v is None else v.to_json()})


REGISTRY: dict[str, Claim] = {
    c.id: c for c in [
        Claim("smallDg", "D(m,n) <= isqrt(g(m))//2 on the c_g interval", {"g": "id", "k": 3}, check_small_dg),
        Claim("g-regressive", "c_g is g-regressive on its interval", {"g": "id", "k": 3}, check_g_regressive),
        Claim("noMinHom", "c_g has no min-homogeneous (k+1)-set", {"g": "id", "k": 3}, check_no_min_hom),
        Claim("svalues", "homogeneous (s+1)-sets of the base-s coloring span two log_s blocks",
              {"s": 2, "N": 10**4}, check_svalues),
        Claim("regHom2", "base-s coloring has no homogeneous (2s+1)-set", {"s": 2, "N": 10**4}, check_reg_hom2),
        Claim("obs-prei1", "(f_t)_k(n) >= n + iroot(n,t)^(k-1)", {"t": 2, "k": 3, "n": 16}, _growth("obs-prei1")),
        Claim("obs-i1", "(f_{t+1})_{2t+3}(n^2) > n^2+2n+1 for n > 2^t", {"t": 1, "n": 3}, _growth("obs-i1")),
        Claim("induction-step", "(f_{t+1})_{i+2t+2}(n^2) > ((f_t)_i(n))^2 for n > 2^t",
              {"t": 1, "i": 1, "n": 3}, _growth("induction-step")),
        Claim("monotonicity", "iterated form of induction-step", {"t": 1, "i": 1, "n": 3}, _growth("monotonicity")),
        Claim("base10-nominhom", "base-10 coloring has no min-homogeneous set of the target size",
              {"target": 6}, check_base10),
        Claim("table42-nohom", "the 42-vertex graph has no homogeneous 5-set", {"target": 5}, check_table42),
        Claim("stitched-regressive", "stitched toy coloring is regressive for iroot(n, beta(n))",
              {"hi": 10**4}, check_stitched),
    ]
}


def run_claim(claim_id: str, **params) -> ClaimReport:
    if claim_id not in REGISTRY:
        raise KeyError(f"unknown claim {claim_id!r}; known: {', '.join(REGISTRY)}")
    claim = REGISTRY[claim_id]
    merged = dict(claim.defaults)
    merged.update({k: v for k, v in params.items() if v is not None})
    return claim.run(**merged)


__all__ = ["REGISTRY", "Claim", "ClaimReport", "run_claim"]
