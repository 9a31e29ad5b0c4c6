"""Loader for the shipped 42-vertex graph with no 5-clique and no independent 5-set."""
from __future__ import annotations

import hashlib
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

DATA_NAME = "ramsey42.hex"


class ChecksumError(ValueError):
    pass


def parse_hex_graph(text: str) -> np.ndarray:
    """Parse the hex adjacency format into a symmetric 0/1 matrix.

    Verifies the checksum, the vertex count, symmetry and an empty diagonal."""
    rows: list[str] = []
    meta: dict[str, str] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if ":" in line:
            key, _, val = line.partition(":")
            meta[key.strip()] = val.strip()
        else:
            rows.append(line.lower())
    n = int(meta.get("vertices", len(rows)))
    if len(rows) != n:
        raise ValueError(f"expected {n} rows, found {len(rows)}")
    digest = hashlib.sha256("".join(r + "\n" for r in rows).encode()).hexdigest()
    if "sha256" in meta and meta["sha256"].lower() != digest:
        raise ChecksumError(f"checksum mismatch: file says {meta['sha256']}, rows hash to {digest}")
    adj = np.zeros((n, n), dtype=np.int64)
    for i, r in enumerate(rows):
        bits = int(r, 16)
        if bits >> n:
            raise ValueError(f"row {i} has bits beyond vertex {n - 1}")
        for j in range(n):
            adj[i, j] = (bits >> j) & 1
    if not np.array_equal(adj, adj.T):
        raise ValueError("adjacency is not symmetric")
    if adj.diagonal().any():
        raise ValueError("adjacency has loops")
    return adj


def format_hex_graph(adj, comment: str = "") -> str:
    adj = np.asarray(adj, dtype=np.int64)
    n = adj.shape[0]
    width = -(-n // 4)
    rows = [format(sum(int(adj[i, j]) << j for j in range(n)), f"0{width}x") for i in range(n)]
    body = "".join(r + "\n" for r in rows)
    head = "".join(f"# {c}\n" for c in comment.splitlines())
    return f"{head}vertices: {n}\nsha256: {hashlib.sha256(body.encode()).hexdigest()}\n{body}"


def load_graph(path: str | Path | None = None) -> np.ndarray:
    if path is not None:
        return parse_hex_graph(Path(path).read_text())
    return _shipped().copy()


@lru_cache(maxsize=1)
def _shipped() -> np.ndarray:
    text = resources.files("regramsey.data").joinpath(DATA_NAME).read_text()
    return parse_hex_graph(text)
