"""The ``Coloring`` type, regressivity checking, and matrix export."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

ColorFn = Callable[[int, int], int]
RowFn = Callable[[int], np.ndarray]


@dataclass(frozen=True, eq=False)
class Coloring:
    """A pair coloring on the half-open domain ``[lo, hi)``.

    ``color_of(m, n)`` is called with ``lo <= m < n < hi``.  ``row_fn(m)``, if
    given, returns the colors of ``(m, n)`` for ``n = m+1 .. hi-1`` as an int64
    array and is used by the bulk operations (search tables, verification,
    export).  ``translation_invariant`` promises that the color depends only
    on ``n - m``; the search uses it to share work between shifted subsets.
    """

    lo: int
    hi: int
    color_of: ColorFn
    name: str = "coloring"
    params: dict = field(default_factory=dict)
    row_fn: RowFn | None = None
    translation_invariant: bool = False

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"bad domain [{self.lo}, {self.hi})")

    @property
    def size(self) -> int:
        return self.hi - self.lo

    def __call__(self, m: int, n: int) -> int:
        if m > n:
            m, n = n, m
        if not (self.lo <= m < n < self.hi):
            raise ValueError(f"pair ({m}, {n}) outside domain [{self.lo}, {self.hi})")
        return self.color_of(m, n)

    def row(self, m: int) -> np.ndarray:
        if not self.lo <= m < self.hi:
            raise ValueError(f"{m} outside domain [{self.lo}, {self.hi})")
        if self.row_fn is not None:
            return np.asarray(self.row_fn(m), dtype=np.int64)
        return np.fromiter((self.color_of(m, n) for n in range(m + 1, self.hi)),
                           dtype=np.int64, count=self.hi - m - 1)

    def pairs(self) -> Iterator[tuple[int, int, int]]:
        for m in range(self.lo, self.hi):
            for off, c in enumerate(self.row(m).tolist()):
                yield m, m + 1 + off, c

    def restrict(self, lo: int, hi: int) -> "Coloring":
        if not (self.lo <= lo <= hi <= self.hi):
            raise ValueError(f"[{lo}, {hi}) is not inside [{self.lo}, {self.hi})")
        row_fn = None
        if self.row_fn is not None:
            parent = self.row_fn
            row_fn = lambda m: parent(m)[: hi - m - 1]  # noqa: E731
        return Coloring(lo, hi, self.color_of, self.name, dict(self.params, restricted=[lo, hi]),
                        row_fn, self.translation_invariant)

    def header(self, bound=None) -> dict:
        return {
            "domain": [self.lo, self.hi],
            "bound": None if bound is None else str(bound),
            "construction": self.name,
            "parameters": _jsonable(self.params),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    return str(obj)


def from_matrix(matrix, lo: int = 0, name: str = "matrix", params: dict | None = None) -> Coloring:
    """Coloring whose color of ``(m, n)`` is ``matrix[m - lo][n - lo]`` (upper triangle)."""
    mat = np.asarray(matrix, dtype=np.int64)
    size = mat.shape[0]
    return Coloring(
        lo, lo + size,
        lambda m, n: int(mat[m - lo, n - lo]),
        name, params or {},
        row_fn=lambda m: mat[m - lo, m - lo + 1:],
    )


def constant_coloring(lo: int, hi: int, color: int = 0) -> Coloring:
    return Coloring(lo, hi, lambda m, n: color, "constant", {"color": color},
                    row_fn=lambda m: np.full(hi - m - 1, color, dtype=np.int64),
                    translation_invariant=True)


@dataclass(frozen=True)
class Violation:
    m: int
    n: int
    color: int
    bound: int

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "color": self.color, "bound": self.bound}


def verify_regressive(coloring: Coloring, g: Callable[[int], int]) -> Violation | None:
    """Check ``color(m, n) <= g(m)`` on every domain pair.

    Returns ``None`` when the coloring is g-regressive, else the first
    violating pair in (m, n) order."""
    for m in range(coloring.lo, coloring.hi - 1):
        row = coloring.row(m)
        bound = g(m)
        bad = np.flatnonzero(row > bound) if bound < 2**62 else np.empty(0, dtype=np.int64)
        if bad.size:
            off = int(bad[0])
            return Violation(m, m + 1 + off, int(row[off]), bound)
    return None


def export_coloring(coloring: Coloring, path: str | Path, fmt: str = "csv", bound=None) -> tuple[Path, Path]:
    """Write the color matrix and its JSON header.

    ``csv``: lines ``m,n,color`` for every pair in (m, n) order.
    ``bin``: the same colors as little-endian uint64, upper triangle, row-major.
    Returns ``(header_path, data_path)``."""
    path = Path(path)
    if fmt not in ("csv", "bin"):
        raise ValueError("format must be csv or bin")
    data_path = path.with_suffix("." + fmt)
    header_path = path.with_suffix(".json")
    header = coloring.header(bound)
    header.update({
        "format": fmt,
        "layout": "upper triangle, row-major: (m, n) for lo <= m < n < hi",
        "pairs": coloring.size * (coloring.size - 1) // 2,
        "data": data_path.name,
    })
    if fmt == "csv":
        with data_path.open("w") as fh:
            fh.write("m,n,color\n")
            for m in range(coloring.lo, coloring.hi - 1):
                row = coloring.row(m)
                fh.writelines(f"{m},{m + 1 + off},{c}\n" for off, c in enumerate(row.tolist()))
    else:
        header["dtype"] = "<u8"
        with data_path.open("wb") as fh:
            for m in range(coloring.lo, coloring.hi - 1):
                row = coloring.row(m)
                if row.size and row.min() < 0:
                    raise ValueError("colors must be naturals")
                fh.write(row.astype("<u8").tobytes())
    header_path.write_text(json.dumps(header, indent=2) + "\n")
    return header_path, data_path


def load_coloring(header_path: str | Path) -> Coloring:
    """Load a coloring written by :func:`export_coloring`."""
    header_path = Path(header_path)
    header = json.loads(header_path.read_text())
    lo, hi = header["domain"]
    size = hi - lo
    data_path = header_path.with_name(header["data"])
    mat = np.zeros((size, size), dtype=np.int64)
    if header["format"] == "csv":
        raw = np.loadtxt(data_path, delimiter=",", skiprows=1, dtype=np.int64, ndmin=2)
        if raw.size:
            mat[raw[:, 0] - lo, raw[:, 1] - lo] = raw[:, 2]
    else:
        flat = np.fromfile(data_path, dtype="<u8").astype(np.int64)
        iu = np.triu_indices(size, k=1)
        mat[iu] = flat
    return from_matrix(mat, lo, header["construction"], header.get("parameters") or {})
