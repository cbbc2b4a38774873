"""Weak orders on [n] and their three representations.

A weak order is stored as its characteristic vector over the ordered pairs
``(i, j)``, ``i != j``, packed into a Python int.  Bit ``pair_index(i, j, n)``
is set iff ``i`` is preferred to or tied with ``j``.  Alternatives are
1-based everywhere in the public API.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import InvalidPairError, InvalidRankingError, InvariantError, MoveError

Ranking = tuple[int, ...]


def pair_index(i: int, j: int, n: int) -> int:
    """Position of the ordered pair ``(i, j)`` in the canonical coordinate layout.

    Row-major over ``i`` with the diagonal slot skipped, so ``(1, 2)`` is 0 and
    ``(n, n - 1)`` is ``n(n-1) - 1``.
    """
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise InvalidPairError(f"invalid pair ({i}, {j}) for n={n}")
    base = (i - 1) * (n - 1)
    return base + (j - 1 if j < i else j - 2)


@lru_cache(maxsize=None)
def pairs(n: int) -> tuple[tuple[int, int], ...]:
    """All ordered pairs of A_N in ``pair_index`` order."""
    return tuple((i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


def dimension(n: int) -> int:
    return n * (n - 1)


@lru_cache(maxsize=None)
def _transpose_perm(n: int) -> tuple[int, ...]:
    return tuple(pair_index(j, i, n) for i, j in pairs(n))


@dataclass(frozen=True)
class WeakOrder:
    """Characteristic vector of a weak order (reflexive pairs are not stored)."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvariantError("n must be positive")
        if self.bits < 0 or self.bits >> dimension(self.n):
            raise InvariantError("bit-vector longer than n(n-1)")
        _check_weak_order(self.n, self.bits)

    @classmethod
    def from_vector(cls, vector: Sequence[int], n: int) -> "WeakOrder":
        if len(vector) != dimension(n):
            raise InvariantError(f"expected {dimension(n)} entries, got {len(vector)}")
        bits = 0
        for k, v in enumerate(vector):
            if v not in (0, 1):
                raise InvariantError(f"entry {k} is {v!r}, not 0/1")
            if v:
                bits |= 1 << k
        return cls(n, bits)

    @classmethod
    def from_relation(cls, relation: Iterable[tuple[int, int]], n: int) -> "WeakOrder":
        bits = 0
        for i, j in relation:
            bits |= 1 << pair_index(i, j, n)
        return cls(n, bits)

    def prefers(self, i: int, j: int) -> bool:
        """True iff ``i`` is preferred to or tied with ``j``."""
        return bool(self.bits >> pair_index(i, j, self.n) & 1)

    def vector(self) -> tuple[int, ...]:
        return tuple((self.bits >> k) & 1 for k in range(dimension(self.n)))

    def relation(self) -> list[tuple[int, int]]:
        return [p for k, p in enumerate(pairs(self.n)) if self.bits >> k & 1]

    def __str__(self) -> str:
        return str(to_partition(self))


def _make(n: int, bits: int) -> WeakOrder:
    # Skips validation; callers guarantee the bits encode a weak order.
    w = object.__new__(WeakOrder)
    object.__setattr__(w, "n", n)
    object.__setattr__(w, "bits", bits)
    return w


def _check_weak_order(n: int, bits: int) -> None:
    def has(i: int, j: int) -> bool:
        return bool(bits >> pair_index(i, j, n) & 1)

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if not (has(i, j) or has(j, i)):
                raise InvariantError(f"totality fails for {{{i}, {j}}}")
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j or not has(i, j):
                continue
            for k in range(1, n + 1):
                if k != i and k != j and has(j, k) and not has(i, k):
                    raise InvariantError(f"transitivity fails for ({i}, {j}, {k})")


@dataclass(frozen=True)
class PreferencePartition:
    """Ordered buckets of tied alternatives; earlier buckets are preferred."""

    buckets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for b in self.buckets:
            if not b:
                raise InvariantError("empty bucket")
            if seen & b:
                raise InvariantError(f"alternatives {sorted(seen & b)} appear twice")
            seen |= b
        if seen != set(range(1, len(seen) + 1)):
            raise InvariantError(f"buckets do not cover [1..{len(seen)}]")

    @classmethod
    def of(cls, *buckets: Iterable[int]) -> "PreferencePartition":
        return cls(tuple(frozenset(b) for b in buckets))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.buckets)

    def __len__(self) -> int:
        return len(self.buckets)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.buckets)

    def __getitem__(self, k: int) -> frozenset[int]:
        return self.buckets[k]

    def bucket_of(self, alt: int) -> int:
        """0-based index of the bucket holding ``alt``."""
        for k, b in enumerate(self.buckets):
            if alt in b:
                return k
        raise InvariantError(f"alternative {alt} not in partition")

    def as_lists(self) -> list[list[int]]:
        return [sorted(b) for b in self.buckets]

    def __str__(self) -> str:
        return "|".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.buckets)


def to_characteristic(partition: PreferencePartition) -> WeakOrder:
    n = partition.n
    level = [0] * (n + 1)
    for k, b in enumerate(partition.buckets):
        for a in b:
            level[a] = k
    bits = 0
    for idx, (i, j) in enumerate(pairs(n)):
        if level[i] <= level[j]:
            bits |= 1 << idx
    return _make(n, bits)


def to_ranking(w: WeakOrder) -> Ranking:
    n = w.n
    wins = [0] * (n + 1)
    for idx, (i, _) in enumerate(pairs(n)):
        if w.bits >> idx & 1:
            wins[i] += 1
    return tuple(n - wins[i] for i in range(1, n + 1))


def to_partition(w: WeakOrder) -> PreferencePartition:
    return from_ranking(to_ranking(w))


def check_ranking(ranks: Sequence[int]) -> None:
    """Raise InvalidRankingError unless ``ranks`` is a competition ranking."""
    n = len(ranks)
    if n == 0:
        raise InvalidRankingError("empty ranking")
    counts: dict[int, int] = {}
    for r in ranks:
        if not isinstance(r, int) or not 1 <= r <= n:
            raise InvalidRankingError(f"rank {r!r} outside [1, {n}]")
        counts[r] = counts.get(r, 0) + 1
    expected = 1
    for value in sorted(counts):
        if value != expected:
            raise InvalidRankingError(
                f"rank {value} present but the next free position is {expected}"
            )
        expected = value + counts[value]


def from_ranking(ranks: Sequence[int]) -> PreferencePartition:
    check_ranking(ranks)
    groups: dict[int, set[int]] = {}
    for alt, r in enumerate(ranks, start=1):
        groups.setdefault(r, set()).add(alt)
    return PreferencePartition(tuple(frozenset(groups[r]) for r in sorted(groups)))


def ranking_to_weak_order(ranks: Sequence[int]) -> WeakOrder:
    return to_characteristic(from_ranking(ranks))


def transpose(w: WeakOrder) -> WeakOrder:
    """Mirror image: ``(i, j)`` is in the result iff ``(j, i)`` is in ``w``."""
    perm = _transpose_perm(w.n)
    bits = 0
    for k, src in enumerate(perm):
        if w.bits >> src & 1:
            bits |= 1 << k
    return _make(w.n, bits)


def reverse_partition(partition: PreferencePartition) -> PreferencePartition:
    return PreferencePartition(partition.buckets[::-1])


def relabel(w: WeakOrder, mapping: Sequence[int]) -> WeakOrder:
    """Rename alternative ``a`` to ``mapping[a - 1]`` (a permutation of [n])."""
    n = w.n
    if sorted(mapping) != list(range(1, n + 1)):
        raise InvariantError("mapping is not a permutation of [n]")
    bits = 0
    for idx, (i, j) in enumerate(pairs(n)):
        if w.bits >> idx & 1:
            bits |= 1 << pair_index(mapping[i - 1], mapping[j - 1], n)
    return _make(n, bits)


@dataclass(frozen=True)
class MoveSpec:
    """Move the tied set ``alts`` by ``q`` (half-)steps."""

    alts: frozenset[int]
    q: Fraction

    @classmethod
    def of(cls, alts: int | Iterable[int], q: int | str | Fraction) -> "MoveSpec":
        alts = frozenset([alts]) if isinstance(alts, int) else frozenset(alts)
        return cls(alts, Fraction(q))


def apply_move(
    partition: PreferencePartition, alts: int | Iterable[int], q: int | str | Fraction
) -> PreferencePartition:
    """Apply the move ``<alts, q, partition>``.

    Integer ``q`` merges ``alts`` into bucket ``k + q``; half-integer ``q``
    places them as a new bucket in the slot between buckets ``floor(k + q)``
    and ``floor(k + q) + 1``.  Bucket indices refer to the partition before
    ``alts`` is removed; an emptied source bucket is dropped afterwards.
    """
    spec = MoveSpec.of(alts, q)
    moving, q = spec.alts, spec.q
    if not moving:
        raise MoveError("empty move set")
    buckets = partition.buckets
    p = len(buckets)
    homes = {partition.bucket_of(a) for a in moving}
    if len(homes) != 1:
        raise MoveError(f"alternatives {sorted(moving)} span several buckets")
    k = homes.pop() + 1
    if q == 0:
        raise MoveError("q must be nonzero")
    if (2 * q).denominator != 1:
        raise MoveError(f"q={q} is not a multiple of 1/2")
    if not (-k < q < p - k + 1):
        raise MoveError(f"q={q} out of range for bucket {k} of {p}")

    out: list[frozenset[int]] = []
    if q.denominator == 1:
        target = k + int(q)
        for b, bucket in enumerate(buckets, start=1):
            if b == k:
                rest = bucket - moving
                if rest:
                    out.append(rest)
            elif b == target:
                out.append(bucket | moving)
            else:
                out.append(bucket)
    else:
        slot = (k + q).__floor__()
        for b, bucket in enumerate(buckets, start=1):
            if slot == b - 1:
                out.append(moving)
            rest = bucket - moving if b == k else bucket
            if rest:
                out.append(rest)
        if slot == p:
            out.append(moving)
    return PreferencePartition(tuple(out))
