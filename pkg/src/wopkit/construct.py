"""Merge-and-reverse shell and the construction procedures for T1 and T2-1..T2-4.

Procedures run directly on the caller's labels: the unfixed alternatives
``j_1 < j_2 < ...`` are taken in ascending order, which is the same as
relabeling the conventional layout (``i1 = 1``, ``j_k = k + 1``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import (
    PreferencePartition,
    WeakOrder,
    apply_move,
    dimension,
    to_characteristic,
    transpose,
)
from .errors import InvariantError, MoveError, ParameterError

HALF = Fraction(1, 2)
CPT_CLASSES = ("T1", "T2-1", "T2-2", "T2-3", "T2-4")


@dataclass
class VectorMatrix:
    """Ordered weak orders emitted by a construction, with per-row provenance.

    Provenance tags: ``merge`` and ``reverse`` for the shell's inner moves,
    ``outer`` for rows recorded by an outer step, ``seed`` for starting
    orders and ``step`` for the other appends of a procedure.
    """

    n: int
    rows: list[WeakOrder] = field(default_factory=list)
    provenance: list[str] = field(default_factory=list)
    partitions: list[PreferencePartition] = field(default_factory=list)
    status: str = "ok"

    def append(self, partition: PreferencePartition, tag: str) -> None:
        self.partitions.append(partition)
        self.rows.append(to_characteristic(partition))
        self.provenance.append(tag)

    def extend(self, other: "VectorMatrix") -> None:
        self.rows += other.rows
        self.provenance += other.provenance
        self.partitions += other.partitions

    def __len__(self) -> int:
        return len(self.rows)

    def vectors(self) -> list[tuple[int, ...]]:
        return [w.vector() for w in self.rows]

    def as_array(self) -> np.ndarray:
        return np.array(self.vectors(), dtype=np.int8).reshape(len(self.rows), dimension(self.n))


@dataclass
class MRState:
    """Mutable state handed to outer steps."""

    partition: PreferencePartition
    I0: frozenset[int]
    p: int
    out: VectorMatrix
    pinned: frozenset[int] = frozenset()

    def move(self, alts: int | Iterable[int], q: int | Fraction) -> None:
        alts = frozenset([alts]) if isinstance(alts, int) else frozenset(alts)
        if alts & self.pinned:
            raise MoveError(f"outer step moves pinned alternatives {sorted(alts & self.pinned)}")
        self.partition = apply_move(self.partition, alts, q)

    def record(self) -> None:
        self.out.append(self.partition, "outer")


OuterStep = Callable[[int, MRState], None]


def merge_and_reverse(
    P0: PreferencePartition,
    I0: int | Iterable[int],
    p_hat: int,
    outer_step: OuterStep | None = None,
    pinned: Iterable[int] = (),
) -> tuple[VectorMatrix, PreferencePartition]:
    """Run the shell; returns the recorded rows and the final partition.

    When ``p_hat`` exceeds the number of buckets nothing happens and the
    matrix carries ``status="empty"``.
    """
    I0 = frozenset([I0]) if isinstance(I0, int) else frozenset(I0)
    p = len(P0)
    out = VectorMatrix(P0.n)
    if p_hat > p:
        out.status = "empty"
        return out, P0
    state = MRState(P0, I0, p, out, frozenset(pinned))
    for j in range(1, p_hat + 1):
        I1 = state.partition[0]
        for _ in range(p - j):
            state.partition = apply_move(state.partition, I1, 1)
            out.append(state.partition, "merge")
            state.partition = apply_move(state.partition, I1, HALF)
            out.append(state.partition, "reverse")
        if outer_step is not None:
            outer_step(j, state)
    return out, state.partition


def front_step(j: int, state: MRState) -> None:
    """Move I0 back to the first bucket (a zero step is skipped)."""
    if j != state.p:
        state.move(state.I0, j - state.p)


def t21_step(i1: int, i2: int) -> OuterStep:
    def step(j: int, state: MRState) -> None:
        state.move(i2, Fraction(3, 2))
        state.move(i1, j - state.p)
        state.record()

    return step


def _check_n(n: int) -> None:
    if n < 4:
        raise ParameterError(f"construction needs n >= 4, got {n}")


def _check_alt(n: int, *alts: int) -> None:
    for a in alts:
        if not 1 <= a <= n:
            raise ParameterError(f"alternative {a} outside [1, {n}]")
    if len(set(alts)) != len(alts):
        raise ParameterError(f"fixed alternatives {list(alts)} must be distinct")


def _finish(X: VectorMatrix) -> VectorMatrix:
    if len(X) != dimension(X.n):
        raise InvariantError(f"procedure emitted {len(X)} rows, expected {dimension(X.n)}")
    return X


def cpt1(n: int, i1: int) -> VectorMatrix:
    """n(n-1) tight weak orders for T1 with fixed alternative ``i1``."""
    _check_n(n)
    _check_alt(n, i1)
    js = [a for a in range(1, n + 1) if a != i1]
    P0 = PreferencePartition.of([i1, js[0]], *([j] for j in js[1:]))
    p = len(P0)
    X, P1 = merge_and_reverse(P0, i1, p, front_step)
    X.append(P1, "step")
    for j in range(p - 1):
        P1 = apply_move(P1, P1[j], Fraction(3, 2))
        X.append(P1, "step")
    for _ in range(p - 1):
        P1 = apply_move(P1, i1, -1)
        X.append(P1, "step")
    X.append(P0, "seed")
    return _finish(X)


def _cpt21_core(n: int, i1: int, i2: int, variant: str) -> VectorMatrix:
    js = [a for a in range(1, n + 1) if a not in (i1, i2)]
    # The last two unfixed singletons start swapped.
    order = [[i1], [i2]] + [[j] for j in js[:-2]] + [[js[-1]], [js[-2]]]
    P0 = PreferencePartition.of(*order)
    X = VectorMatrix(n)
    X.append(P0, "seed")
    P0 = apply_move(P0, P0[n - 1], Fraction(-3, 2))
    X.append(P0, "step")
    if variant == "T2-1":
        P0 = apply_move(P0, i1, 1)
        X.append(P0, "step")
        P0 = apply_move(P0, P0[0], 1)
        P0 = apply_move(P0, i2, HALF)
        X.append(P0, "step")
    else:
        P0 = apply_move(P0, i2, 1)
        X.append(P0, "step")
        P0 = apply_move(P0, i2, HALF)
        P0 = apply_move(P0, i1, 1)
        X.append(P0, "step")
    p = len(P0)
    if p != n - 1:
        raise InvariantError(f"expected {n - 1} buckets before the shell, got {p}")
    M, P1 = merge_and_reverse(P0, i1, p - 2, t21_step(i1, i2))
    X.extend(M)
    P1 = apply_move(P1, i2, -1)
    X.append(P1, "step")
    P1 = apply_move(P1, i2, HALF)
    for j in range(p - 1):
        P1 = apply_move(P1, P1[j], Fraction(3, 2))
        X.append(P1, "step")
    return X


def _transposed(X: VectorMatrix) -> VectorMatrix:
    out = VectorMatrix(X.n, status=X.status)
    out.rows = [transpose(w) for w in X.rows]
    out.provenance = list(X.provenance)
    out.partitions = [PreferencePartition(P.buckets[::-1]) for P in X.partitions]
    return out


def cpt2(variant: str, n: int, i1: int, i2: int) -> VectorMatrix:
    """n(n-1) tight weak orders for a T2-1..T2-4 instance with fixed ``(i1, i2)``.

    T2-2 and T2-4 are the row-wise transposes of T2-1 and T2-3.
    """
    if variant not in ("T2-1", "T2-2", "T2-3", "T2-4"):
        raise ParameterError(f"no construction procedure for {variant!r}")
    _check_n(n)
    _check_alt(n, i1, i2)
    base = {"T2-2": "T2-1", "T2-4": "T2-3"}.get(variant, variant)
    X = _cpt21_core(n, i1, i2, base)
    if base != variant:
        X = _transposed(X)
    return _finish(X)


def construct(tag: str, n: int, fixed: Sequence[int]) -> VectorMatrix:
    """Dispatch to the procedure for ``tag``."""
    fixed = tuple(fixed)
    if tag == "T1":
        if len(fixed) != 1:
            raise ParameterError("T1 takes exactly one fixed alternative")
        return cpt1(n, fixed[0])
    if tag in ("T2-1", "T2-2", "T2-3", "T2-4"):
        if len(fixed) != 2:
            raise ParameterError(f"{tag} takes exactly two fixed alternatives")
        return cpt2(tag, n, *fixed)
    raise ParameterError(f"no construction procedure for {tag!r}")
