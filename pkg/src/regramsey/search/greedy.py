"""Greedy extraction of min-homogeneous and homogeneous sets, and the
matching guarantees."""
from __future__ import annotations

from collections import Counter
from typing import Callable

import numpy as np

from ..arith import iroot
from ..colorings.base import Coloring
from ..hierarchy import beta_inverse
from .outcome import Mode, Witness


def _pre_homogeneous(coloring: Coloring, lo: int, hi: int, C: int | None) -> tuple[list[int], list[int]]:
    """Take the least remaining element, keep the largest color group of the
    rest (ties to the smallest color), repeat.  Returns the chosen elements
    and the color each one has to all later chosen elements."""
    remaining = np.arange(lo, hi, dtype=np.int64)
    chosen: list[int] = []
    colors: list[int] = []
    while remaining.size:
        x = int(remaining[0])
        chosen.append(x)
        rest = remaining[1:]
        if not rest.size:
            break
        row = coloring.row(x)[rest - x - 1]
        values, counts = np.unique(row, return_counts=True)
        if C is not None and values.size > C:
            raise ValueError(f"element {x} sees {values.size} colors, more than C={C}")
        q = int(values[int(np.argmax(counts))])  # argmax takes the first, i.e. smallest color
        colors.append(q)
        remaining = rest[row == q]
    return chosen, colors


def greedy_min_hom(coloring: Coloring, N: int | None = None, C: int | None = None) -> Witness:
    """Greedy min-homogeneous chain on ``[lo, lo + N)`` (default: the domain).

    Each step keeps at least ``(r - 1) / C`` of the ``r`` remaining elements,
    so the chain has length at least ``k`` whenever ``N >= C**k``.  If ``C``
    is given, seeing more than ``C`` colors from one element is an error."""
    lo = coloring.lo
    hi = coloring.hi if N is None else lo + N
    if hi > coloring.hi:
        raise ValueError("N exceeds the coloring's domain")
    chosen, _ = _pre_homogeneous(coloring, lo, hi, C)
    return Witness(tuple(chosen), Mode.MIN_HOMOGENEOUS, coloring.name)


def greedy_homogeneous(coloring: Coloring, N: int | None = None, C: int | None = None) -> Witness:
    """Pre-homogeneous chain, then the elements whose recorded color is the
    most frequent one (ties to the smallest), plus the last element.

    With ``C`` colors and ``N >= C**(k*C)`` the chain has at least ``k*C``
    elements, so the result has at least ``k`` elements."""
    lo = coloring.lo
    hi = coloring.hi if N is None else lo + N
    if hi > coloring.hi:
        raise ValueError("N exceeds the coloring's domain")
    chosen, colors = _pre_homogeneous(coloring, lo, hi, C)
    if len(chosen) <= 2:
        return Witness(tuple(chosen), Mode.HOMOGENEOUS, coloring.name)
    counts = Counter(colors)
    q = min(counts, key=lambda c: (-counts[c], c))
    picked = [x for x, c in zip(chosen, colors) if c == q] + [chosen[-1]]
    return Witness(tuple(picked), Mode.HOMOGENEOUS, coloring.name)


def greedy_guarantee(g: Callable[[int], int], N: int) -> int:
    """Length the greedy chain is guaranteed to reach on ``[0, N)`` for every
    g-regressive coloring, ``g`` weakly increasing.

    With ``r`` elements left, the current minimum is at most ``N - r`` and
    sees at most ``g(N - r) + 1`` colors, so at least
    ``ceil((r - 1) / (g(N - r) + 1))`` elements survive the step."""
    r = N
    steps = 0
    while r > 0:
        steps += 1
        colors = g(N - r) + 1
        r = -(-(r - 1) // colors)
    return steps


def certified_N(g: Callable[[int], int], k: int, limit: int) -> int | None:
    """Least ``N <= limit`` with ``greedy_guarantee(g, N) >= k``, an upper
    bound on ``nu_g(k)`` for weakly increasing ``g``; ``None`` if none."""
    for n in range(limit + 1):
        if greedy_guarantee(g, n) >= k:
            return n
    return None


class PreconditionViolation(ValueError):
    pass


def upper_bound_N(g: Callable[[int], int], beta: Callable[[int], int], k: int, limit: int,
                  sample: range | None = None) -> int:
    """``beta_inverse(beta, k)``, after checking ``g(n) <= iroot(n, beta(n))``
    on ``sample`` (default ``1 .. min(N, 10**4)``).

    Raises :class:`PreconditionViolation` naming the first failing ``n``, and
    ``ValueError`` if ``beta`` never reaches ``k`` below ``limit``.  For a
    certified bound use :func:`certified_N` or :func:`greedy_guarantee`."""
    n_bound = beta_inverse(beta, k, limit)
    if n_bound is None:
        raise ValueError(f"beta does not reach {k} below {limit}")
    if sample is None:
        sample = range(1, min(n_bound, 10**4) + 1)
    for n in sample:
        b = beta(n)
        if b < 1 or g(n) > iroot(n, b):
            raise PreconditionViolation(f"g({n}) = {g(n)} exceeds iroot({n}, beta({n}) = {b})")
    return n_bound


def homogeneous_guarantee_N(C: int, k: int) -> int:
    """``C**(k*C)``: every C-coloring of that many points has a homogeneous
    k-set, realized by :func:`greedy_homogeneous`."""
    return C ** (k * C)
