"""Result types shared by the searches."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations

from ..colorings.base import Coloring


class Mode(str, enum.Enum):
    MIN_HOMOGENEOUS = "min_homogeneous"
    HOMOGENEOUS = "homogeneous"


class InvalidWitness(AssertionError):
    pass


def is_min_homogeneous(coloring: Coloring, elements) -> bool:
    xs = list(elements)
    for i, m in enumerate(xs[:-2]):
        c = coloring.color_of(m, xs[i + 1])
        if any(coloring.color_of(m, n) != c for n in xs[i + 2:]):
            return False
    return True


def is_homogeneous(coloring: Coloring, elements) -> bool:
    colors = {coloring.color_of(m, n) for m, n in combinations(elements, 2)}
    return len(colors) <= 1


@dataclass(frozen=True)
class Witness:
    elements: tuple[int, ...]
    mode: Mode
    coloring_id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(int(x) for x in self.elements))
        object.__setattr__(self, "mode", Mode(self.mode))

    def __len__(self) -> int:
        return len(self.elements)

    def verify(self, coloring: Coloring) -> None:
        """Re-check every pair against ``coloring``; raise on failure."""
        xs = self.elements
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise InvalidWitness(f"elements not strictly increasing: {xs}")
        if xs and not (coloring.lo <= xs[0] and xs[-1] < coloring.hi):
            raise InvalidWitness(f"elements outside [{coloring.lo}, {coloring.hi})")
        ok = is_homogeneous if self.mode is Mode.HOMOGENEOUS else is_min_homogeneous
        if not ok(coloring, xs):
            raise InvalidWitness(f"{xs} is not {self.mode.value} for {coloring.name}")

    def to_json(self) -> dict:
        return {"mode": self.mode.value, "elements": list(self.elements), "coloring_id": self.coloring_id}


@dataclass(frozen=True)
class NoneUpTo:
    """No witness of size ``k`` (certified when the outcome is exhaustive).
    ``best`` is the largest witness seen."""

    k: int
    best: Witness | None = None

    def to_json(self) -> dict:
        return {"none_up_to": self.k, "best": None if self.best is None else self.best.to_json()}


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int | None = None
    time_limit: float | None = None
    parallelism: int = 1


@dataclass
class SearchOutcome:
    result: Witness | NoneUpTo
    exhaustive: bool
    nodes_explored: int
    wall_time_ms: int
    mode: Mode
    interval: tuple[int, int]
    target: int | None
    coloring: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return isinstance(self.result, Witness)

    @property
    def best(self) -> Witness | None:
        return self.result if isinstance(self.result, Witness) else self.result.best

    @property
    def maximum(self) -> int | None:
        """The exact maximum size, when the search proves it."""
        if not self.exhaustive:
            return None
        if isinstance(self.result, NoneUpTo):
            return 0 if self.result.best is None else len(self.result.best)
        if self.target is None:
            return len(self.result)
        return None

    def to_json(self) -> dict:
        best = self.best
        return {
            "mode": self.mode.value,
            "elements": [] if best is None else list(best.elements),
            "found": self.found,
            "target": self.target,
            "none_up_to": self.result.k if isinstance(self.result, NoneUpTo) else None,
            "maximum": self.maximum,
            "interval": list(self.interval),
            "coloring": self.coloring,
            "exhaustive": self.exhaustive,
            "nodes_explored": self.nodes_explored,
            "wall_time_ms": self.wall_time_ms,
        }
