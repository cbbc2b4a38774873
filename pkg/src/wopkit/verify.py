"""Exhaustive validity checks, tight sets, exact affine rank and facet reports.

Inequalities are evaluated in ``<=`` form throughout: a ``>=`` row is
negated before maxima and right-hand sides are reported.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .core import WeakOrder, dimension
from .construct import VectorMatrix
from .enumeration import characteristic_matrix, check_guard, weak_order_at
from .errors import InvariantError, ParameterError
from .inequalities import (
    TAG_ORDER,
    Inequality,
    axiomatic_inequalities,
    instances,
)
from .structures import CLASSIFIED_TAGS, classify_structure

__all__ = [
    "FacetReport",
    "affine_rank",
    "check_validity",
    "evaluate",
    "facet_report",
    "lhs_values",
    "separate",
    "tight_rows",
    "tight_set",
]


def evaluate(q: Inequality, w: WeakOrder) -> int:
    """pi . x for the characteristic vector of ``w`` (coefficients as written)."""
    if q.n != w.n:
        raise ParameterError(f"inequality has n={q.n}, weak order has n={w.n}")
    return sum(c for k, c in enumerate(q.dense()) if w.bits >> k & 1)


def lhs_values(coeffs: Sequence[int], n: int, limit: int | None = None) -> np.ndarray:
    """pi . x for every weak order on [n], in canonical enumeration order."""
    if len(coeffs) != dimension(n):
        raise ParameterError(f"expected {dimension(n)} coefficients, got {len(coeffs)}")
    check_guard(n, limit)
    X = characteristic_matrix(n)
    return X.astype(np.int64) @ np.asarray(coeffs, dtype=np.int64)


def check_validity(q: Inequality, limit: int | None = None) -> tuple[int, list[int]]:
    """Maximum ``<=``-form LHS over all weak orders and the rows attaining it."""
    pi, _ = q.normalized()
    values = lhs_values(pi, q.n, limit)
    best = int(values.max())
    return best, [int(r) for r in np.flatnonzero(values == best)]


def tight_rows(q: Inequality, limit: int | None = None) -> list[int]:
    """Canonical enumeration indices of the weak orders with pi . x = pi_0."""
    pi, pi0 = q.normalized()
    values = lhs_values(pi, q.n, limit)
    return [int(r) for r in np.flatnonzero(values == pi0)]


def tight_set(q: Inequality, limit: int | None = None) -> list[WeakOrder]:
    return [weak_order_at(q.n, r) for r in tight_rows(q, limit)]


def _primitive(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
        if g == 1:
            return v
    return [x // g for x in v] if g > 1 else v


def affine_rank(
    points: VectorMatrix | np.ndarray | Iterable[Sequence[int]], limit: int | None = None
) -> int:
    """Number of affinely independent points: rank of ``[X | 1]`` over Q.

    Fraction-free elimination on Python ints, with rows kept primitive
    (content divided out) so entries stay small.  Stops early once the rank
    reaches ``limit``.
    """
    if isinstance(points, VectorMatrix):
        rows = points.vectors()
    elif isinstance(points, np.ndarray):
        rows = [tuple(int(v) for v in r) for r in points]
    else:
        rows = [tuple(int(v) for v in r) for r in points]
    if not rows:
        raise InvariantError("affine rank of an empty point set")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InvariantError("points have different lengths")
    cap = width + 1 if limit is None else min(limit, width + 1)

    basis: list[tuple[int, list[int]]] = []
    seen: set[tuple[int, ...]] = set()
    for r in rows:
        if r in seen:
            continue
        seen.add(r)
        v = list(r) + [1]
        for col, b in basis:
            a = v[col]
            if a:
                p = b[col]
                v = [p * x - a * y for x, y in zip(v, b)]
        if any(v):
            v = _primitive(v)
            col = next(i for i, x in enumerate(v) if x)
            basis.append((col, v))
            if len(basis) >= cap:
                break
    return len(basis)


@dataclass
class FacetReport:
    tag: str
    n: int
    fixed: tuple[int, ...]
    rhs: int
    max_lhs: int
    valid: bool
    tight_count: int
    affine_rank: int
    is_facet: bool
    structure_census: dict[str, int] = field(default_factory=dict)
    unclassified: int = 0
    origin: str | None = None

    def as_dict(self) -> dict:
        return {
            "class": self.tag,
            "n": self.n,
            "fixed": list(self.fixed),
            "origin": self.origin,
            "valid": self.valid,
            "max_lhs": self.max_lhs,
            "rhs": self.rhs,
            "tight_count": self.tight_count,
            "affine_rank": self.affine_rank,
            "dimension": dimension(self.n),
            "is_facet": self.is_facet,
            "structure_census": dict(self.structure_census),
            "unclassified": self.unclassified,
        }


def facet_report(q: Inequality, structures: bool = True, limit: int | None = None) -> FacetReport:
    """Validity, tight set, exact affine rank and structure census for ``q``."""
    pi, pi0 = q.normalized()
    values = lhs_values(pi, q.n, limit)
    best = int(values.max())
    tight = np.flatnonzero(values == pi0)
    X = characteristic_matrix(q.n)
    rank = affine_rank(X[tight]) if len(tight) else 0
    valid = best <= pi0
    census: dict[str, int] = {}
    unclassified = 0
    if structures and q.tag in CLASSIFIED_TAGS and q.fixed:
        for r in tight:
            sid = classify_structure(q.tag, q.fixed, weak_order_at(q.n, int(r)))
            if sid is None:
                unclassified += 1
            else:
                census[sid.key] = census.get(sid.key, 0) + 1
        census = dict(sorted(census.items(), key=lambda kv: int(kv[0].split("#")[1])))
    return FacetReport(
        tag=q.tag,
        n=q.n,
        fixed=q.fixed,
        rhs=pi0,
        max_lhs=best,
        valid=valid,
        tight_count=len(tight),
        affine_rank=rank,
        is_facet=valid and rank == dimension(q.n),
        structure_census=census,
        unclassified=unclassified,
        origin=q.origin,
    )


def _violation(q: Inequality, point: Sequence[Fraction]) -> Fraction:
    pi, pi0 = q.normalized()
    return sum((c * x for c, x in zip(pi, point) if c), Fraction(0)) - pi0


def separate(
    point: Sequence[int | float | Fraction], n: int, families: Iterable[str] = ()
) -> Inequality | None:
    """Most violated axiomatic or family inequality at ``point``, or None.

    Ties go to the earlier class in TAG_ORDER, then the lexicographically
    smaller fixed tuple.
    """
    if len(point) != dimension(n):
        raise ParameterError(f"point has {len(point)} entries, expected {dimension(n)}")
    x = [Fraction(v) for v in point]
    if any(not 0 <= v <= 1 for v in x):
        raise ParameterError("point entries must lie in [0, 1]")
    for tag in families:
        if tag not in TAG_ORDER:
            raise ParameterError(f"unknown class tag {tag!r}")
    candidates: list[Inequality] = sorted(
        axiomatic_inequalities(n), key=lambda q: (TAG_ORDER.index(q.tag), q.fixed)
    )
    for tag in sorted(set(families), key=TAG_ORDER.index):
        candidates.extend(instances(tag, n))
    best, best_q = Fraction(0), None
    for q in candidates:
        v = _violation(q, x)
        if v > best:
            best, best_q = v, q
    return best_q
