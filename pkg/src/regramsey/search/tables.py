"""Per-element color classes as int bitsets.

Bit ``j`` of a bitset stands for the element ``lo + j`` of the searched
interval.  ``classes(y)`` maps each color ``q`` to the set of ``n > y`` with
``color(y, n) = q``.  For translation-invariant colorings one row is tabulated
and shifted; otherwise rows are computed on first use and cached.
"""
from __future__ import annotations

import numpy as np

from ..colorings.base import Coloring


def mask_to_int(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def int_to_indices(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def _group(row: np.ndarray) -> dict[int, int]:
    classes = {}
    for c in np.unique(row).tolist():
        classes[int(c)] = mask_to_int(row == c)
    return classes


class ClassTables:
    def __init__(self, coloring: Coloring, lo: int | None = None, hi: int | None = None):
        lo = coloring.lo if lo is None else lo
        hi = coloring.hi if hi is None else hi
        if not (coloring.lo <= lo <= hi <= coloring.hi):
            raise ValueError(f"interval [{lo}, {hi}) not inside the domain [{coloring.lo}, {coloring.hi})")
        self.coloring = coloring
        self.lo = lo
        self.hi = hi
        self.size = hi - lo
        self.full = (1 << self.size) - 1
        self.translation_invariant = coloring.translation_invariant
        self._rel: dict[int, int] | None = None
        self._cache: dict[int, dict[int, int]] = {}
        if self.translation_invariant and self.size > 1:
            self._rel = _group(coloring.row(lo)[: self.size - 1])

    def element(self, idx: int) -> int:
        return self.lo + idx

    def classes(self, y: int) -> dict[int, int]:
        """``{color: bitset of n > y}`` for the element with index ``y``."""
        if self._rel is not None:
            shift = y + 1
            full = self.full
            return {c: (bits << shift) & full for c, bits in self._rel.items()}
        got = self._cache.get(y)
        if got is None:
            m = self.lo + y
            row = self.coloring.row(m)[: self.hi - m - 1]
            got = {c: bits << (y + 1) for c, bits in _group(row).items()} if row.size else {}
            self._cache[y] = got
        return got

    def neighbours(self, y: int, color: int) -> int:
        if self._rel is not None:
            return (self._rel.get(color, 0) << (y + 1)) & self.full
        return self.classes(y).get(color, 0)

    def colors(self) -> list[int]:
        if self._rel is not None:
            return sorted(self._rel)
        seen: set[int] = set()
        for y in range(self.size - 1):
            seen.update(self.classes(y))
        return sorted(seen)
