"""Compiled clique search over uint64 bitset rows (one color class graph).

Semantics match the pure-Python search in ``exact.py`` node for node: tasks
are tried in order, a branch is cut when ``len(chain) + |candidates| <= best``,
and a chain replaces the best only when strictly longer.
"""
from __future__ import annotations

import numba as nb
import numpy as np

MAX_DEPTH = 256


@nb.njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@nb.njit(cache=True, inline="always")
def _ctz(x):
    n = 0
    while not (x >> np.uint64(n)) & np.uint64(1):
        n += 1
    return n


@nb.njit(cache=True)
def _count(row, start):
    c = 0
    for w in range(start, row.shape[0]):
        if row[w]:
            c += _popcount(row[w])
    return c


@nb.njit(cache=True)
def clique_search(adj, ys, best_len, target, max_nodes):
    """Search cliques whose least element is ``ys[j]``, in order.

    ``adj[v]`` holds the neighbours of ``v`` greater than ``v``.  Returns
    ``(best_chain, best_len, best_task, nodes, status)`` where ``best_task``
    is the index into ``ys`` that produced the returned chain (-1 if none
    beat the incoming ``best_len``) and ``status`` is 0 when done, 1 when the
    target was reached and 2 when the node budget ran out."""
    words = adj.shape[1]
    cand = np.zeros((MAX_DEPTH + 1, words), dtype=np.uint64)
    first = np.zeros(MAX_DEPTH + 1, dtype=np.int64)
    chain = np.zeros(MAX_DEPTH + 1, dtype=np.int64)
    best_chain = np.zeros(MAX_DEPTH + 1, dtype=np.int64)
    best_task = -1
    nodes = 0
    for j in range(ys.shape[0]):
        y = ys[j]
        start = y >> 6
        if 1 + _count(adj[y], start) <= best_len:
            continue
        nodes += 1
        if max_nodes >= 0 and nodes > max_nodes:
            return best_chain, best_len, best_task, nodes, 2
        chain[0] = y
        for w in range(words):
            cand[1, w] = adj[y, w]
        first[1] = start
        if 1 > best_len:
            best_len = 1
            best_chain[0] = y
            best_task = j
            if target > 0 and best_len >= target:
                return best_chain, best_len, best_task, nodes, 1
        d = 1
        while d >= 1:
            # advance the first-word pointer past empty words
            w = first[d]
            while w < words and cand[d, w] == 0:
                w += 1
            first[d] = w
            if w == words or d + _count(cand[d], w) <= best_len:
                d -= 1
                continue
            bit = cand[d, w] & (~cand[d, w] + np.uint64(1))
            z = (w << 6) + _ctz(bit)
            cand[d, w] ^= bit
            nodes += 1
            if max_nodes >= 0 and nodes > max_nodes:
                return best_chain, best_len, best_task, nodes, 2
            chain[d] = z
            if d >= MAX_DEPTH:
                continue
            nw = w
            for u in range(w, words):
                cand[d + 1, u] = cand[d, u] & adj[z, u]
            first[d + 1] = nw
            d += 1
            if d > best_len:
                best_len = d
                for u in range(d):
                    best_chain[u] = chain[u]
                best_task = j
                if target > 0 and best_len >= target:
                    return best_chain, best_len, best_task, nodes, 1
    return best_chain, best_len, best_task, nodes, 0


def bitset_rows(bitsets: list[int], size: int) -> np.ndarray:
    """Pack Python int bitsets (bit ``j`` = element ``j``) into uint64 rows."""
    words = max(1, -(-size // 64))
    out = np.zeros((len(bitsets), words), dtype=np.uint64)
    nbytes = words * 8
    for i, b in enumerate(bitsets):
        if b:
            out[i] = np.frombuffer(b.to_bytes(nbytes, "little"), dtype="<u8")
    return out
