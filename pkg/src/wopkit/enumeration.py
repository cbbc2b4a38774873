"""Exhaustive generation of the weak orders on [n].

Orders are emitted in ascending lexicographic order of their rank vectors.
Each bucket-size composition of n fixes a multiset of competition ranks;
the lexicographic permutations of every such multiset are merged into one
sorted stream.
"""
from __future__ import annotations

import heapq
import itertools
import os
from functools import lru_cache
from math import comb
from typing import Iterator

import numpy as np

from .core import Ranking, WeakOrder, _make, dimension, pairs, to_ranking
from .errors import ResourceLimitError

MAX_ENUMERATION_N = 9
DEFAULT_VERIFY_GUARD = 7
GUARD_ENV = "WOPKIT_GUARD_N"


def guard(default: int = DEFAULT_VERIFY_GUARD) -> int:
    """Largest n the exhaustive checks may enumerate (env override, capped at 9)."""
    raw = os.environ.get(GUARD_ENV)
    value = int(raw) if raw else default
    return min(value, MAX_ENUMERATION_N)


def check_guard(n: int, limit: int | None = None) -> None:
    limit = guard() if limit is None else limit
    if n > limit:
        raise ResourceLimitError(f"n={n} exceeds the enumeration guard ({limit})")


def count_weak_orders(n: int) -> int:
    """Ordered Bell (Fubini) number via a(n) = sum_k C(n,k) a(n-k)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    a = [1]
    for m in range(1, n + 1):
        a.append(sum(comb(m, k) * a[m - k] for k in range(1, m + 1)))
    return a[n]


def _compositions(n: int) -> Iterator[tuple[int, ...]]:
    for cuts in itertools.product((False, True), repeat=n - 1):
        sizes, run = [], 1
        for cut in cuts:
            if cut:
                sizes.append(run)
                run = 1
            else:
                run += 1
        sizes.append(run)
        yield tuple(sizes)


def _lex_permutations(items: list[int]) -> Iterator[Ranking]:
    a = sorted(items)
    while True:
        yield tuple(a)
        i = len(a) - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = len(a) - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1 :] = reversed(a[i + 1 :])


def iter_rankings(n: int) -> Iterator[Ranking]:
    """All competition rankings of [n] in ascending lexicographic order."""
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise ResourceLimitError(f"n={n} outside the supported range 1..{MAX_ENUMERATION_N}")
    streams = []
    for sizes in _compositions(n):
        ranks, start = [], 1
        for size in sizes:
            ranks.extend([start] * size)
            start += size
        streams.append(_lex_permutations(ranks))
    return heapq.merge(*streams)


def enumerate_weak_orders(n: int) -> Iterator[WeakOrder]:
    """Stream every weak order on [n] exactly once, in canonical order."""
    stream = iter_rankings(n)
    idx = pairs(n)
    for ranks in stream:
        bits = 0
        for k, (i, j) in enumerate(idx):
            if ranks[i - 1] <= ranks[j - 1]:
                bits |= 1 << k
        yield _make(n, bits)


@lru_cache(maxsize=8)
def ranking_matrix(n: int) -> np.ndarray:
    """Rank vectors of all weak orders on [n], one row each, canonical order."""
    out = np.array(list(iter_rankings(n)), dtype=np.int8)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=8)
def characteristic_matrix(n: int) -> np.ndarray:
    """0/1 characteristic vectors of all weak orders on [n] (rows in canonical order)."""
    ranks = ranking_matrix(n)
    x = np.empty((ranks.shape[0], dimension(n)), dtype=np.int8)
    for k, (i, j) in enumerate(pairs(n)):
        x[:, k] = ranks[:, i - 1] <= ranks[:, j - 1]
    x.setflags(write=False)
    return x


def weak_order_at(n: int, row: int) -> WeakOrder:
    x = characteristic_matrix(n)[row]
    bits = 0
    for k in np.flatnonzero(x):
        bits |= 1 << int(k)
    return _make(n, bits)


def row_of(w: WeakOrder) -> int:
    """Canonical enumeration index of ``w`` (binary search on rank vectors)."""
    target = to_ranking(w)
    ranks = ranking_matrix(w.n)
    lo, hi = 0, ranks.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if tuple(int(v) for v in ranks[mid]) < target:
            lo = mid + 1
        else:
            hi = mid
    return lo
