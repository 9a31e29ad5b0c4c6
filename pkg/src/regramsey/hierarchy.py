"""Fast-growing hierarchies, the threshold index, and interval schedules.

A hierarchy is fixed by its step rule ``s``: level 1 is the successor and
``f_{i+1}(n) = f_i^{(s(n))}(n)``.  Three rules are provided:

* :class:`AckermannStep` -- ``s(n) = n``, giving the Ackermann approximations.
* :class:`RootStep` -- ``s(n) = iroot(n, t)``.
* :class:`GStep` -- ``s(n) = isqrt(g(n)) // 2`` for a bound function ``g``.

Evaluation saturates at a cap (see :class:`~regramsey.arith.CappedNat`) and
can be interrupted through a cancellation token (anything with ``is_set()``,
e.g. :class:`threading.Event`).
"""
from __future__ import annotations

import bisect
import enum
import json
from dataclasses import dataclass, field
from math import isqrt
from pathlib import Path
from typing import Callable, Iterator, Protocol

from .arith import CappedNat, default_cap, iroot


class CancelToken(Protocol):
    def is_set(self) -> bool: ...


class EvaluationCancelled(RuntimeError):
    """The cancellation token fired (or the work budget ran out) mid-evaluation."""


@dataclass(frozen=True)
class AckermannStep:
    monotone = True

    def __call__(self, n: int) -> int:
        return n

    def describe(self) -> str:
        return "ack"


@dataclass(frozen=True)
class RootStep:
    t: int
    monotone = True

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("RootStep needs t >= 1")

    def __call__(self, n: int) -> int:
        return iroot(n, self.t)

    def describe(self) -> str:
        return f"ft:t={self.t}"


@dataclass(frozen=True)
class GStep:
    g: Callable[[int], int]

    @property
    def monotone(self) -> bool:
        return bool(getattr(self.g, "monotone", False))

    def __call__(self, n: int) -> int:
        return isqrt(self.g(n)) // 2

    def describe(self) -> str:
        desc = getattr(self.g, "describe", None)
        return f"fg:g={desc() if desc else self.g!r}"


StepRule = AckermannStep | RootStep | GStep


class _Evaluator:
    """Exact evaluation of one hierarchy under a cap.  Internal values are
    plain ints; ``None`` stands for TOP."""

    CHECK_EVERY = 256

    def __init__(self, step: StepRule, cap: int, cancel: CancelToken | None = None,
                 max_work: int | None = None):
        self.step = step
        self.cap = cap
        self.cancel = cancel
        self.max_work = max_work
        self.work = 0

    def _tick(self, amount: int = 1) -> None:
        self.work += amount
        if self.max_work is not None and self.work > self.max_work:
            raise EvaluationCancelled(f"work budget {self.max_work} exhausted")
        if (self.cancel is not None and (self.work <= amount or self.work % self.CHECK_EVERY < amount)
                and self.cancel.is_set()):
            raise EvaluationCancelled("cancelled")

    def eval(self, i: int, x: int) -> int | None:
        if i == 1:
            return x + 1 if x + 1 <= self.cap else None
        s = self.step(x)
        if s > self.cap:
            return None
        return self.iterate(i - 1, s, x)

    def iterate(self, i: int, count: int, x: int) -> int | None:
        """``f_i^{(count)}(x)``."""
        if count == 0:
            return x
        if i == 1:
            return x + count if x + count <= self.cap else None
        if i == 2:
            return self._iterate_level2(count, x)
        for _ in range(count):
            self._tick()
            y = self.eval(i, x)
            if y is None:
                return None
            if y == x:
                # fixed point: every later application is the identity too
                return x
            x = y
        return x

    def _iterate_level2(self, count: int, x: int) -> int | None:
        # f_2(x) = x + s(x)
        step = self.step
        if isinstance(step, AckermannStep) or (isinstance(step, RootStep) and step.t == 1):
            return self._doubling(count, x)
        if isinstance(step, RootStep) and step.t == 2:
            return self._add_isqrt(count, x)
        if step.monotone:
            return self._block_jump(count, x)
        for _ in range(count):
            self._tick()
            s = step(x)
            if s == 0:
                return x
            x += s
            if x > self.cap:
                return None
        return x

    def _doubling(self, count: int, x: int) -> int | None:
        if x == 0:
            return 0
        if x.bit_length() - 1 + count > self.cap.bit_length():
            return None
        y = x << count
        return y if y <= self.cap else None

    def _add_isqrt(self, count: int, x: int) -> int | None:
        # Write x = r^2 + a with 0 <= a <= 2r.  For 1 <= a <= r two steps take
        # (r, a) to (r+1, a-1); from a = 0 one step reaches (r, r).  So r
        # doubles every 2r+1 steps and the loop runs O(log) times.
        while count > 0:
            self._tick()
            r = isqrt(x)
            if r == 0:
                return x
            a = x - r * r
            if a == 0 or a > r:
                x += r
                count -= 1
            else:
                j = min(a, count // 2)
                if j == 0:
                    x += r
                    count -= 1
                else:
                    r += j
                    x = r * r + (a - j)
                    count -= 2 * j
            if x > self.cap:
                return None
        return x

    def _block_jump(self, count: int, x: int) -> int | None:
        # While s(x) stays constant the orbit is arithmetic; find where the
        # step changes by galloping plus bisection, then jump.
        step, cap = self.step, self.cap
        while count > 0:
            self._tick()
            s = step(x)
            if s == 0:
                return x
            if s > cap:
                return None
            lo, width = x, 1
            while True:
                probe = x + width
                if probe > cap or step(probe) != s:
                    hi = probe
                    break
                lo = probe
                width *= 2
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if mid <= cap and step(mid) == s:
                    lo = mid
                else:
                    hi = mid
            # step(y) == s on [x, hi)
            jumps = min(count, -(-(hi - x) // s))
            x += jumps * s
            count -= jumps
            if x > cap:
                return None
        return x


@dataclass(frozen=True)
class HierarchySpec:
    """A hierarchy given by its step rule; level 1 is always ``n + 1``."""

    step_rule: StepRule

    def step(self, n: int) -> int:
        return self.step_rule(n)

    def eval(self, i: int, n: int, cap: int | None = None, *,
             cancel: CancelToken | None = None, max_work: int | None = None) -> CappedNat:
        if i < 1:
            raise ValueError("hierarchy levels start at 1")
        if n < 0:
            raise ValueError("hierarchies are evaluated on naturals")
        cap = default_cap() if cap is None else cap
        if n > cap:
            return CappedNat.top(cap)
        return CappedNat(_Evaluator(self.step_rule, cap, cancel, max_work).eval(i, n), cap)

    def iterate(self, i: int, count: int, n: int, cap: int | None = None, *,
                cancel: CancelToken | None = None, max_work: int | None = None) -> CappedNat:
        """``f_i^{(count)}(n)``; ``count == 0`` is the identity."""
        if i < 1:
            raise ValueError("hierarchy levels start at 1")
        cap = default_cap() if cap is None else cap
        if n > cap:
            return CappedNat.top(cap)
        return CappedNat(_Evaluator(self.step_rule, cap, cancel, max_work).iterate(i, count, n), cap)

    def describe(self) -> str:
        return self.step_rule.describe()


ACKERMANN = HierarchySpec(AckermannStep())


def ack_approx(i: int, n: int, cap: int | None = None, **kw) -> CappedNat:
    """``A_i(n)``: ``A_1`` is successor and ``A_{i+1}(n) = A_i^{(n)}(n)``."""
    return ACKERMANN.eval(i, n, cap, **kw)


def ft_eval(t: int, i: int, n: int, cap: int | None = None, **kw) -> CappedNat:
    """Level ``i`` of the hierarchy stepping ``iroot(n, t)`` times."""
    if t < 1:
        raise ValueError("ft_eval needs t >= 1")
    return HierarchySpec(RootStep(t)).eval(i, n, cap, **kw)


def fg_eval(g: Callable[[int], int], i: int, n: int, cap: int | None = None, **kw) -> CappedNat:
    """Level ``i`` of the hierarchy stepping ``isqrt(g(n)) // 2`` times."""
    return HierarchySpec(GStep(g)).eval(i, n, cap, **kw)


def mu_g(g: Callable[[int], int], k: int, limit: int) -> int | None:
    """Least ``t <= limit`` with ``k <= isqrt(g(t)) // 2``; ``None`` if there is none."""
    def ok(t: int) -> bool:
        return k <= isqrt(g(t)) // 2

    if getattr(g, "monotone", False):
        if not ok(limit):
            return None
        return bisect.bisect_left(range(limit + 1), True, key=ok)
    for t in range(limit + 1):
        if ok(t):
            return t
    return None


@dataclass(frozen=True)
class Schedule:
    """Interval boundaries ``mu[0] = 0 < mu[1] < ...`` and the per-interval
    forbidden min-homogeneous sizes ``k`` (one per interval)."""

    mu: tuple[int, ...]
    k: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(int(x) for x in self.mu))
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        if len(self.mu) < 2 or self.mu[0] != 0:
            raise ValueError("schedule needs mu[0] = 0 and at least one interval")
        if any(a >= b for a, b in zip(self.mu, self.mu[1:])):
            raise ValueError("schedule mu must be strictly increasing")
        if self.k and len(self.k) != len(self.mu) - 1:
            raise ValueError("schedule needs one k per interval")

    @property
    def end(self) -> int:
        return self.mu[-1]

    @property
    def intervals(self) -> list[tuple[int, int]]:
        return list(zip(self.mu, self.mu[1:]))

    def beta(self, n: int) -> int:
        return beta_of(self, n)

    def to_json(self) -> dict:
        return {"mu": list(self.mu), "k": list(self.k)}

    @classmethod
    def from_json(cls, data: dict) -> "Schedule":
        return cls(tuple(data["mu"]), tuple(data.get("k", ())))

    @classmethod
    def load(cls, path: str | Path) -> "Schedule":
        return cls.from_json(json.loads(Path(path).read_text()))


def beta_of(schedule: Schedule, n: int) -> int:
    """``t + 1`` for the interval ``mu[t] <= n < mu[t+1]`` containing ``n``."""
    if n < 0 or n >= schedule.end:
        raise ValueError(f"{n} is outside the schedule range [0, {schedule.end})")
    return bisect.bisect_right(schedule.mu, n)


def beta_inverse(beta: Callable[[int], int], t: int, limit: int) -> int | None:
    """Least ``n <= limit`` with ``beta(n) >= t`` for weakly increasing ``beta``."""
    if beta(limit) < t:
        return None
    return bisect.bisect_left(range(limit + 1), True, key=lambda n: beta(n) >= t)


def ackermann_schedule_terms(levels: int, cap: int | None = None) -> Iterator[tuple[int, CappedNat, CappedNat]]:
    """Yield ``(t, mu_t, k_t)`` for ``t = 1..levels`` of the Ackermannian schedule:
    ``mu_1 = 10^4``, ``k_1 = 18``, then ``k_t = isqrt(iroot(mu_{t-1}, t-1)) // 2``
    and ``mu_t = Ack(t+3)``.  Values beyond the cap come out as TOP."""
    cap = default_cap() if cap is None else cap
    mu_prev = CappedNat(10**4, cap)
    yield 1, mu_prev, CappedNat(18, cap)
    for t in range(2, levels + 1):
        if mu_prev.is_top:
            k_t = CappedNat.top(cap)
        else:
            k_t = CappedNat(isqrt(iroot(mu_prev.value, t - 1)) // 2, cap)
        mu_t = ack_approx(t + 3, t + 3, cap)
        yield t, mu_t, k_t
        mu_prev = mu_t


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INDETERMINATE = "INDETERMINATE"
    NOT_APPLICABLE = "NOT_APPLICABLE"


@dataclass(frozen=True)
class InequalityCheck:
    """One evaluated inequality ``lhs > rhs`` (or ``>=``).

    ``lhs`` is evaluated only as far as needed to decide the comparison: it is
    capped at the decision threshold, so ``lhs.is_top`` means "exceeds rhs"."""

    name: str
    params: dict
    relation: str
    lhs: CappedNat | None
    rhs: CappedNat
    status: Status

    def to_json(self) -> dict:
        if self.lhs is None:
            lhs = None
        elif self.lhs.is_top:
            lhs = f">{self.lhs.cap}"
        else:
            lhs = self.lhs.value
        return {
            "name": self.name,
            "params": self.params,
            "relation": self.relation,
            "lhs": lhs,
            "rhs": None if self.rhs.is_top else self.rhs.value,
            "status": self.status.value,
        }


def _decide(name: str, params: dict, relation: str, rhs: CappedNat,
            lhs_fn: Callable[[int], CappedNat]) -> InequalityCheck:
    if rhs.is_top:
        return InequalityCheck(name, params, relation, None, rhs, Status.INDETERMINATE)
    threshold = rhs.value if relation == ">" else rhs.value - 1
    if threshold < 0:
        return InequalityCheck(name, params, relation, None, rhs, Status.PASS)
    # the left side is evaluated with the threshold as its cap, so TOP means
    # it exceeds the threshold
    lhs = lhs_fn(threshold)
    if not lhs.is_top:
        return InequalityCheck(name, params, relation, lhs, rhs, Status.FAIL)
    # one retry at twice the threshold often gives the exact value for the report
    wider = lhs_fn(min(rhs.cap, 2 * threshold + 2))
    return InequalityCheck(name, params, relation, lhs if wider.is_top else wider, rhs, Status.PASS)


def check_growth_inequalities(t: int, i: int, n: int, cap: int | None = None, *,
                              iterations: int = 3, cancel: CancelToken | None = None,
                              max_work: int | None = None) -> list[InequalityCheck]:
    """Spot-check the inequalities behind the root-hierarchy growth argument.

    Checks, at the given ``(t, i, n)``:

    ``obs-prei1``       ``(f_t)_i(n) >= n + iroot(n, t)^(i-1)``
    ``obs-i1``          ``(f_{t+1})_{2t+3}(n^2) > n^2 + 2n + 1``      (n > 2^t)
    ``induction-step``  ``(f_{t+1})_{i+2t+2}(n^2) > ((f_t)_i(n))^2``  (n > 2^t)
    ``monotonicity``    the same with both level functions iterated j times,
                        for ``j = 1..iterations``                        (n > 2^t)

    The right side is evaluated exactly under ``cap``; if it saturates the
    result is INDETERMINATE.  Otherwise the left side is evaluated with the
    right side as its ceiling, which decides the comparison exactly.
    """
    if t < 1 or i < 1 or n < 1:
        raise ValueError("growth checks need t, i, n >= 1")
    cap = default_cap() if cap is None else cap
    kw = {"cancel": cancel, "max_work": max_work}
    lower = HierarchySpec(RootStep(t))
    upper = HierarchySpec(RootStep(t + 1))
    checks: list[InequalityCheck] = []

    rhs = CappedNat(n, cap) + CappedNat(iroot(n, t), cap) ** (i - 1)
    checks.append(_decide("obs-prei1", {"t": t, "k": i, "n": n}, ">=", rhs,
                          lambda th: lower.eval(i, n, th, **kw)))

    hyp = n > 2**t
    sq = n * n
    if not hyp:
        na = {"t": t, "i": i, "n": n}
        for name in ("obs-i1", "induction-step", "monotonicity"):
            checks.append(InequalityCheck(name, na, ">", None, CappedNat(0, cap), Status.NOT_APPLICABLE))
        return checks

    rhs = CappedNat(sq + 2 * n + 1, cap)
    checks.append(_decide("obs-i1", {"t": t, "n": n}, ">", rhs,
                          lambda th: upper.eval(2 * t + 3, sq, th, **kw)))

    base = lower.eval(i, n, cap, **kw)
    checks.append(_decide("induction-step", {"t": t, "i": i, "n": n}, ">", base * base,
                          lambda th: upper.eval(i + 2 * t + 2, sq, th, **kw)))

    for j in range(1, iterations + 1):
        inner = lower.iterate(i, j, n, cap, **kw)
        checks.append(_decide("monotonicity", {"t": t, "i": i, "n": n, "j": j}, ">", inner * inner,
                              lambda th, j=j: upper.iterate(i + 2 * t + 2, j, sq, th, **kw)))
    return checks
