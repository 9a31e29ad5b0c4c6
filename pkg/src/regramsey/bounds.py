"""Regressiveness bounds ``g``: a coloring is g-regressive when every pair
``m < n`` gets a color ``<= g(m)``.

Bounds are small frozen dataclasses; each is callable on naturals, knows
whether it is weakly increasing, and round-trips through the flag
mini-language::

    const:C   id   root:t   pow:j   logq:f=logstar   logq:f=3   sched:@file.json
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .arith import ilog, iroot, log_star
from .hierarchy import Schedule, beta_of


class BoundFn:
    monotone: bool = False

    def __call__(self, n: int) -> int:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class Constant(BoundFn):
    value: int
    monotone = True

    def __call__(self, n: int) -> int:
        return self.value

    def describe(self) -> str:
        return f"const:{self.value}"


@dataclass(frozen=True)
class Identity(BoundFn):
    monotone = True

    def __call__(self, n: int) -> int:
        return n

    def describe(self) -> str:
        return "id"


@dataclass(frozen=True)
class RootPower(BoundFn):
    """``n -> iroot(n, t)``."""

    t: int
    monotone = True

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("root:t needs t >= 1")

    def __call__(self, n: int) -> int:
        return iroot(n, self.t)

    def describe(self) -> str:
        return f"root:{self.t}"


@dataclass(frozen=True)
class Power(BoundFn):
    j: int
    monotone = True

    def __call__(self, n: int) -> int:
        return n**self.j

    def describe(self) -> str:
        return f"pow:{self.j}"


def _logstar_positive(n: int) -> int:
    return max(1, log_star(n))


@dataclass(frozen=True)
class LogQuotient(BoundFn):
    """``n -> lg n // (f(n) * floor(lg lg n))`` for ``n >= 4``, else 0.

    ``f`` must map naturals to positive naturals; ``f_name`` is only used to
    describe it (``logstar`` or a positive integer constant)."""

    f_name: str = "logstar"

    def __post_init__(self):
        self.f  # validates the name

    @property
    def f(self) -> Callable[[int], int]:
        if self.f_name == "logstar":
            return _logstar_positive
        if self.f_name.isdigit() and int(self.f_name) > 0:
            c = int(self.f_name)
            return lambda n: c
        raise ValueError(f"logq: unknown f {self.f_name!r}; use logstar or a positive integer")

    def __call__(self, n: int) -> int:
        if n < 4:
            return 0
        lg = ilog(n, 2)
        return lg // (self.f(n) * ilog(lg, 2))

    def describe(self) -> str:
        return f"logq:f={self.f_name}"


@dataclass(frozen=True)
class ScheduleRoot(BoundFn):
    """``n -> iroot(n, beta(n))`` with ``beta`` read off a schedule."""

    schedule: Schedule
    source: str | None = None

    def __call__(self, n: int) -> int:
        return iroot(n, beta_of(self.schedule, n))

    def describe(self) -> str:
        return f"sched:@{self.source}" if self.source else f"sched:{self.schedule.to_json()}"


def parse_bound(text: str, base_dir: str | Path | None = None) -> BoundFn:
    """Parse the flag mini-language into a :class:`BoundFn`."""
    s = text.strip()
    head, _, arg = s.partition(":")
    try:
        if s == "id":
            return Identity()
        if head == "const":
            return Constant(int(arg))
        if head == "root":
            return RootPower(int(arg))
        if head == "pow":
            return Power(int(arg))
        if head == "logq":
            key, _, val = arg.partition("=")
            if key != "f" or not val:
                raise ValueError
            return LogQuotient(val)
        if head == "sched":
            if not arg.startswith("@"):
                raise ValueError
            path = Path(arg[1:])
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            return ScheduleRoot(Schedule.load(path), arg[1:])
    except ValueError as exc:
        raise ValueError(f"bad bound {text!r}: {exc}") from None
    raise ValueError(
        f"bad bound {text!r}; expected const:C, id, root:t, pow:j, logq:f=logstar or sched:@file.json"
    )
