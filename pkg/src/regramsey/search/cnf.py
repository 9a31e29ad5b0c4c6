"""DIMACS CNF for "a g-regressive coloring of [0, N) with no min-homogeneous
k-set exists".

Variables: pair ``(m, n)`` owns a block of ``g(m) + 1`` variables, one per
color; ``var(m, n, c) = offset(m, n) + c + 1`` with blocks laid out in
``(m, n)`` lexicographic order.  Clauses: at least one and at most one color
per pair, and for every k-subset ``h_1 < ... < h_k`` and every pattern
``(a_1, ..., a_{k-1})`` with ``a_i <= g(h_i)`` the blocking clause
``OR_{i<j} -var(h_i, h_j, a_i)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb, prod
from typing import Callable, Iterator, TextIO

DEFAULT_MAX_N = 64
DEFAULT_MAX_CLAUSES = 20_000_000


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class VarMap:
    N: int
    colors: tuple[int, ...]  # colors[m] = g(m) + 1
    offsets: dict[tuple[int, int], int]

    @classmethod
    def build(cls, g: Callable[[int], int], N: int) -> "VarMap":
        colors = tuple(g(m) + 1 for m in range(N))
        offsets = {}
        off = 0
        for m in range(N):
            for n in range(m + 1, N):
                offsets[(m, n)] = off
                off += colors[m]
        return cls(N, colors, offsets)

    @property
    def num_vars(self) -> int:
        return sum(self.colors[m] * (self.N - 1 - m) for m in range(self.N))

    def var(self, m: int, n: int, c: int) -> int:
        return self.offsets[(m, n)] + c + 1


def estimate_clauses(g: Callable[[int], int], k: int, N: int) -> int:
    colors = [g(m) + 1 for m in range(N)]
    one_hot = sum((N - 1 - m) * (1 + comb(colors[m], 2)) for m in range(N))
    if N < k:
        return one_hot
    # sum over k-subsets of the product of the colors of its first k-1 elements
    # computed by a small DP over elements
    dp = [1] + [0] * k
    for m in range(N):
        for j in range(k, 0, -1):
            w = colors[m] if j <= k - 1 else 1
            dp[j] += dp[j - 1] * w
    return one_hot + dp[k]


def clauses(g: Callable[[int], int], k: int, N: int, vm: VarMap | None = None) -> Iterator[list[int]]:
    vm = vm or VarMap.build(g, N)
    for m in range(N):
        for n in range(m + 1, N):
            block = [vm.var(m, n, c) for c in range(vm.colors[m])]
            yield block
            for a, b in combinations(block, 2):
                yield [-a, -b]
    for h in combinations(range(N), k):
        ranges = [range(vm.colors[x]) for x in h[:-1]]
        for pattern in product(*ranges):
            yield [-vm.var(h[i], h[j], pattern[i]) for i in range(k - 1) for j in range(i + 1, k)]


def export_cnf(g: Callable[[int], int], k: int, N: int, out: TextIO, max_N: int = DEFAULT_MAX_N,
               max_clauses: int = DEFAULT_MAX_CLAUSES) -> tuple[int, int]:
    """Write the instance to ``out``; returns ``(num_vars, num_clauses)``.

    Refuses (``InstanceTooLarge``) when ``N > max_N`` or the estimated
    clause count exceeds ``max_clauses``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if N > max_N:
        raise InstanceTooLarge(f"N={N} exceeds the exporter limit {max_N}")
    est = estimate_clauses(g, k, N)
    if est > max_clauses:
        raise InstanceTooLarge(f"about {est} clauses, over the limit {max_clauses}")
    vm = VarMap.build(g, N)
    desc = getattr(g, "describe", None)
    out.write("c regramsey min-homogeneous instance\n")
    out.write(f"c g={desc() if desc else repr(g)} k={k} N={N}\n")
    out.write("c satisfiable iff a g-regressive coloring of [0,N) with no min-homogeneous k-set exists\n")
    out.write("c var(m,n,c) = offset(m,n) + c + 1, colors c = 0..g(m)\n")
    out.write("c pair m n offset ncolors\n")
    for (m, n), off in vm.offsets.items():
        out.write(f"c pair {m} {n} {off} {vm.colors[m]}\n")
    out.write(f"p cnf {vm.num_vars} {est}\n")
    count = 0
    for cl in clauses(g, k, N, vm):
        out.write(" ".join(map(str, cl)) + " 0\n")
        count += 1
    if count != est:
        raise AssertionError(f"clause estimate {est} != written {count}")
    return vm.num_vars, count


def read_dimacs(text: str) -> tuple[int, list[list[int]]]:
    nvars = 0
    cls: list[list[int]] = []
    cur: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            nvars = int(line.split()[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                cls.append(cur)
                cur = []
            else:
                cur.append(lit)
    return nvars, cls


def decode_model(g: Callable[[int], int], N: int, model) -> list[list[int]]:
    """Coloring matrix from a solver model (positive literals are true);
    the smallest true color is taken for each pair."""
    vm = VarMap.build(g, N)
    true = {lit for lit in model if lit > 0}
    mat = [[-1] * N for _ in range(N)]
    for (m, n) in vm.offsets:
        for c in range(vm.colors[m]):
            if vm.var(m, n, c) in true:
                mat[m][n] = c
                break
        else:
            raise ValueError(f"model assigns no color to ({m}, {n})")
    return mat
