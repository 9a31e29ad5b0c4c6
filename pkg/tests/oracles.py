"""Slow, definitional reference implementations used as test oracles."""
from __future__ import annotations

from itertools import combinations, product
from math import isqrt

import numpy as np


def ackermann(i: int, n: int) -> int:
    """A_1 = successor, A_{i+1}(n) = A_i applied n times to n."""
    if i == 1:
        return n + 1
    x = n
    for _ in range(n):
        x = ackermann(i - 1, x)
    return x


def hierarchy(step, i: int, n: int, bound: int | None = None) -> int:
    """Level 1 is successor; level i+1 at n applies level i step(n) times to n.

    With ``bound``, stops early once the value passes it (levels are
    nondecreasing), returning some value above ``bound``."""
    if i == 1:
        return n + 1
    x = n
    for _ in range(step(n)):
        x = hierarchy(step, i - 1, x, bound)
        if bound is not None and x > bound:
            return x
    return x


def iroot(n: int, t: int) -> int:
    r = 0
    while (r + 1) ** t <= n:
        r += 1
    return r


def g_step(g):
    return lambda n: isqrt(g(n)) // 2


def orbit_count(step, i: int, mu: int, m: int, n: int) -> int:
    """Number of points mu, f_i(mu), f_i(f_i(mu)), ... in (m, n]."""
    count, x = 0, mu
    while x <= n:
        if x > m:
            count += 1
        y = hierarchy(step, i, x, n)
        if y == x:
            break
        x = y
    return count


def is_min_hom(color, xs) -> bool:
    for a in range(len(xs)):
        cs = {color(xs[a], xs[b]) for b in range(a + 1, len(xs))}
        if len(cs) > 1:
            return False
    return True


def is_hom(color, xs) -> bool:
    return len({color(a, b) for a, b in combinations(xs, 2)}) <= 1


def max_min_hom_upto(color, lo: int, hi: int, limit: int) -> int:
    """Largest min-homogeneous size, capped at ``limit``, by growing every
    min-homogeneous set one element at a time (subsets of such sets are
    min-homogeneous too)."""
    if hi - lo == 0:
        return 0
    level = [(x,) for x in range(lo, hi)]
    size = 1
    while size < limit:
        nxt = [s + (y,) for s in level for y in range(s[-1] + 1, hi) if is_min_hom(color, s + (y,))]
        if not nxt:
            break
        level, size = nxt, size + 1
    return size


def max_hom_brute(color, lo: int, hi: int) -> int:
    best = min(1, hi - lo)
    for r in range(2, hi - lo + 1):
        if any(is_hom(color, xs) for xs in combinations(range(lo, hi), r)):
            best = r
        else:
            break
    return best


def has_min_hom(mat, k: int) -> bool:
    N = len(mat)
    return any(is_min_hom(lambda a, b: mat[a][b], xs) for xs in combinations(range(N), k))


def nu_brute(g, k: int, N_limit: int) -> int | None:
    """Least N such that every g-regressive coloring of [0, N) has a
    min-homogeneous k-set, by enumerating all colorings."""
    for N in range(k, N_limit + 1):
        pairs = [(m, n) for m in range(N) for n in range(m + 1, N)]
        ranges = [range(g(m) + 1) for m, _ in pairs]
        bad = False
        for colors in product(*ranges):
            mat = [[-1] * N for _ in range(N)]
            for (m, n), c in zip(pairs, colors):
                mat[m][n] = c
            if not has_min_hom(mat, k):
                bad = True
                break
        if not bad:
            return N
    return None


def random_matrix(rng: np.random.Generator, size: int, colors: int) -> np.ndarray:
    mat = np.triu(rng.integers(0, colors, size=(size, size)), k=1)
    return mat


def random_regressive(rng: np.random.Generator, size: int, g) -> np.ndarray:
    mat = np.zeros((size, size), dtype=np.int64)
    for m in range(size):
        mat[m, m + 1:] = rng.integers(0, g(m) + 1, size=size - m - 1)
    return mat
