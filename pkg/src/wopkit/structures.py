"""Ranking structures: the rank patterns of weak orders tight for T1/T2 inequalities.

Each structure is a predicate on the competition-rank vector with the fixed
alternatives ``i1`` (and ``i2``) plugged in.  The remaining unfixed
alternatives must always be strictly ordered and avoid a set of positions
that depends on the structure and its witnesses.  T2-2 and T2-4 reuse the
T2-1 and T2-3 tables on the transposed order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .core import WeakOrder, to_ranking, transpose
from .errors import ParameterError

CLASSIFIED_TAGS = ("T1", "T2-0", "T2-1", "T2-2", "T2-3", "T2-4")
MIRRORS = {"T2-2": "T2-1", "T2-4": "T2-3"}


@dataclass(frozen=True)
class StructureId:
    tag: str
    number: int
    witnesses: dict[str, int] = field(default_factory=dict, compare=False)

    @property
    def key(self) -> str:
        return f"{self.tag}#{self.number}"

    def __str__(self) -> str:
        bound = ", ".join(f"{k}={v}" for k, v in self.witnesses.items())
        return f"{self.key}({bound})" if bound else self.key


class _View:
    """Rank lookups keyed by 1-based alternative."""

    def __init__(self, ranks: Sequence[int], fixed: Sequence[int]):
        self.r = (0,) + tuple(ranks)
        self.n = len(ranks)
        self.free = [a for a in range(1, self.n + 1) if a not in fixed]

    def rest_ok(self, used: Sequence[int], excluded: set[int]) -> bool:
        values = [self.r[j] for j in self.free if j not in used]
        return len(set(values)) == len(values) and not excluded.intersection(values)

    def tied(self, value: int, count: int) -> Iterator[tuple[int, ...]]:
        """Ordered tuples of distinct unfixed alternatives, all ranked ``value``."""
        pool = [j for j in self.free if self.r[j] == value]
        return itertools.combinations(pool, count)


Matcher = Callable[[_View, int, int], Iterator[dict[str, int]]]


def _t1_1(v: _View, i1: int, _: int):
    k = v.r[i1]
    for (j1,) in v.tied(k, 1):
        if v.rest_ok([j1], {k, k + 1}):
            yield {"k": k, "j1": j1}


def _t1_2(v: _View, i1: int, _: int):
    k = v.r[i1]
    for j1, j2 in v.tied(k, 2):
        if v.rest_ok([j1, j2], {k, k + 1, k + 2}):
            yield {"k": k, "j1": j1, "j2": j2}


def _t20_1(v, i1, i2):
    n = v.n
    if v.r[i1] == 1 and v.r[i2] == n and v.rest_ok([], {1, n}):
        yield {}


def _t20_2(v, i1, i2):
    n = v.n
    if v.r[i1] == 1 and v.r[i2] == n:
        for (j1,) in v.tied(1, 1):
            if v.rest_ok([j1], {1, 2, n}):
                yield {"j1": j1}


def _t20_3(v, i1, i2):
    n = v.n
    if v.r[i1] == 1 and v.r[i2] == n - 1:
        for (j2,) in v.tied(n - 1, 1):
            if v.rest_ok([j2], {1, n - 1, n}):
                yield {"j2": j2}


def _t20_4(v, i1, i2):
    n = v.n
    if v.r[i1] == 1 and v.r[i2] == n - 1:
        for (j1,) in v.tied(1, 1):
            for (j2,) in v.tied(n - 1, 1):
                if j1 != j2 and v.rest_ok([j1, j2], {1, 2, n - 1, n}):
                    yield {"j1": j1, "j2": j2}


def _t21_1(v, i1, i2):
    if v.r[i1] == 1 and v.r[i2] == 2 and v.rest_ok([], {1, 2}):
        yield {}


def _t21_2(v, i1, i2):
    if v.r[i1] == 1 and v.r[i2] == 1 and v.rest_ok([], {1, 2}):
        yield {}


def _t21_3(v, i1, i2):
    if v.r[i1] == 1 and v.r[i2] == 3:
        for (j1,) in v.tied(1, 1):
            if v.rest_ok([j1], {1, 2, 3}):
                yield {"j1": j1}


def _t21_4(v, i1, i2):
    if v.r[i1] == 1 and v.r[i2] == 1:
        for (j1,) in v.tied(1, 1):
            if v.rest_ok([j1], {1, 2, 3}):
                yield {"j1": j1}


def _t21_5(v, i1, i2):
    k = v.r[i1]
    if v.r[i2] == 1 and k != 1:
        for (j1,) in v.tied(k, 1):
            if v.rest_ok([j1], {1, k, k + 1}):
                yield {"k": k, "j1": j1}


def _t21_6(v, i1, i2):
    k = v.r[i1]
    if v.r[i2] == 1 and k != 1:
        for j1, j2 in v.tied(k, 2):
            if v.rest_ok([j1, j2], {1, k, k + 1, k + 2}):
                yield {"k": k, "j1": j1, "j2": j2}


def _t23_2(v, i1, i2):
    if v.r[i1] == 1 and v.r[i2] == 2:
        for (j1,) in v.tied(2, 1):
            if v.rest_ok([j1], {1, 2, 3}):
                yield {"j1": j1}


def _t23_4(v, i1, i2):
    if v.r[i1] == 1 and v.r[i2] == 3:
        for (j1,) in v.tied(1, 1):
            for (j2,) in v.tied(3, 1):
                if v.rest_ok([j1, j2], {1, 2, 3, 4}):
                    yield {"j1": j1, "j2": j2}


def _t23_6(v, i1, i2):
    if v.r[i1] == 1 and v.r[i2] == 1:
        for j1, j2 in v.tied(1, 2):
            if v.rest_ok([j1, j2], {1, 2, 3, 4}):
                yield {"j1": j1, "j2": j2}


def _t23_8(v, i1, i2):
    k = v.r[i1]
    if v.r[i2] == 1 and k not in (1, 2):
        for (j2,) in v.tied(1, 1):
            for (j1,) in v.tied(k, 1):
                if v.rest_ok([j1, j2], {1, 2, k, k + 1}):
                    yield {"k": k, "j1": j1, "j2": j2}


def _t23_10(v, i1, i2):
    # The unfixed alternative j3 sharing first place with i2 is a witness too,
    # so it is excluded from the strictly ordered remainder.
    k = v.r[i1]
    if v.r[i2] == 1 and k not in (1, 2):
        for (j3,) in v.tied(1, 1):
            for j1, j2 in v.tied(k, 2):
                if v.rest_ok([j1, j2, j3], {1, 2, k, k + 1, k + 2}):
                    yield {"k": k, "j1": j1, "j2": j2, "j3": j3}


TABLES: dict[str, tuple[Matcher, ...]] = {
    "T1": (_t1_1, _t1_2),
    "T2-0": (_t20_1, _t20_2, _t20_3, _t20_4),
    "T2-1": (_t21_1, _t21_2, _t21_3, _t21_4, _t21_5, _t21_6),
    "T2-3": (_t21_1, _t23_2, _t21_3, _t23_4, _t21_4, _t23_6, _t21_5, _t23_8, _t21_6, _t23_10),
}


def _resolve(tag: str, fixed: Sequence[int], w: WeakOrder) -> tuple[str, tuple[int, int], WeakOrder]:
    if tag not in CLASSIFIED_TAGS:
        raise ParameterError(f"no ranking-structure table for {tag!r}")
    fixed = tuple(fixed)
    i1 = fixed[0]
    i2 = fixed[1] if len(fixed) > 1 else 0
    if tag in MIRRORS:
        return MIRRORS[tag], (i1, i2), transpose(w)
    return tag, (i1, i2), w


def matching_structures(tag: str, fixed: Sequence[int], w: WeakOrder) -> list[StructureId]:
    """Every (structure, witness) match, in table order."""
    table_tag, (i1, i2), w = _resolve(tag, fixed, w)
    view = _View(to_ranking(w), fixed)
    out = []
    for number, matcher in enumerate(TABLES[table_tag], start=1):
        for wit in matcher(view, i1, i2):
            out.append(StructureId(tag, number, wit))
    return out


def classify_structure(tag: str, fixed: Sequence[int], w: WeakOrder) -> StructureId | None:
    """First matching structure in table order, or None."""
    table_tag, (i1, i2), w = _resolve(tag, fixed, w)
    view = _View(to_ranking(w), fixed)
    for number, matcher in enumerate(TABLES[table_tag], start=1):
        for wit in matcher(view, i1, i2):
            return StructureId(tag, number, wit)
    return None


def structure_count(tag: str) -> int:
    return len(TABLES[MIRRORS.get(tag, tag)])
