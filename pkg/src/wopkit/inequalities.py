"""Inequality families for the weak order polytope.

Every T-class inequality is built from the same ingredients: for each fixed
alternative ``i`` a pair of coefficients (on ``x_ij`` and on ``x_ji`` for all
unfixed ``j``), a coefficient pair for every pair of fixed alternatives, and
the coefficient shared by all arcs between unfixed alternatives.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Mapping, Sequence

from .core import pair_index, pairs
from .errors import ParameterError

Pair = tuple[int, int]

AXIOMATIC_TAGS = ("AX1", "AX2", "AX3")
T_TAGS = ("T1", "T2-0", "T2-1", "T2-2", "T2-3", "T2-4")
T3_TAGS = tuple(f"T3-{v}" for v in range(1, 9))
WO_TAGS = tuple(f"WO{v}" for v in range(1, 10))
TAG_ORDER = AXIOMATIC_TAGS + T_TAGS + T3_TAGS + WO_TAGS + ("LIFTED", "CUSTOM")

# |WO^4_i| from the n = 4 facet catalog.
WO4_CARDINALITIES = {"WO1": 12, "WO2": 6, "WO3": 24, "WO4": 4, "WO5": 12,
                     "WO6": 12, "WO7": 12, "WO8": 12, "WO9": 12}


@dataclass(frozen=True)
class Inequality:
    """``sum coeffs[(i, j)] * x_ij  (sense)  rhs`` over the pairs of [n]."""

    n: int
    coeffs: Mapping[Pair, int]
    rhs: int
    tag: str = "CUSTOM"
    fixed: tuple[int, ...] = ()
    sense: str = "<="
    origin: str | None = None
    _dense: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.sense not in ("<=", ">="):
            raise ParameterError(f"unknown sense {self.sense!r}")
        clean = {}
        for (i, j), c in self.coeffs.items():
            pair_index(i, j, self.n)
            if c:
                clean[(i, j)] = int(c)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items(), key=lambda kv: pair_index(*kv[0], self.n))))
        object.__setattr__(self, "fixed", tuple(self.fixed))
        object.__setattr__(self, "_dense", tuple(clean.get(p, 0) for p in pairs(self.n)))

    def __hash__(self) -> int:
        return hash((self.n, self._dense, self.rhs, self.sense, self.tag, self.fixed))

    def dense(self) -> tuple[int, ...]:
        """Coefficients in ``pair_index`` order, as written (no sense flip)."""
        return self._dense

    def normalized(self) -> tuple[tuple[int, ...], int]:
        """The same inequality in ``<=`` form."""
        if self.sense == "<=":
            return self._dense, self.rhs
        return tuple(-c for c in self._dense), -self.rhs

    def same_halfspace(self, other: "Inequality") -> bool:
        return self.n == other.n and self.normalized() == other.normalized()

    def __str__(self) -> str:
        terms = []
        for (i, j), c in self.coeffs.items():
            name = f"x{i}{j}" if self.n < 10 else f"x{i}_{j}"
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)} "
            terms.append(f"{sign} {mag}{name}")
        lhs = " ".join(terms).lstrip("+ ") or "0"
        if lhs.startswith("- "):
            lhs = "-" + lhs[2:]
        return f"{lhs} {self.sense} {self.rhs}"


def _check_fixed(n: int, fixed: Sequence[int], arity: int) -> tuple[int, ...]:
    fixed = tuple(fixed)
    if len(fixed) != arity:
        raise ParameterError(f"expected {arity} fixed indices, got {len(fixed)}")
    if len(set(fixed)) != arity:
        raise ParameterError(f"fixed indices {fixed} are not distinct")
    for i in fixed:
        if not 1 <= i <= n:
            raise ParameterError(f"fixed index {i} outside [1, {n}]")
    return fixed


def build_coefficients(
    n: int,
    fixed: Sequence[int],
    groups: Sequence[tuple[int, int]],
    fixed_pairs: Mapping[tuple[int, int], tuple[int, int]],
    unfixed: int = -1,
) -> dict[Pair, int]:
    """Coefficient map from per-group signs.

    ``groups[t] = (out, back)`` puts ``out`` on ``x_{i_t j}`` and ``back`` on
    ``x_{j i_t}`` for every unfixed ``j``.  ``fixed_pairs[(s, t)] = (fwd, bwd)``
    (positions ``s < t`` into ``fixed``) sets ``x_{i_s i_t}`` and ``x_{i_t i_s}``.
    """
    free = [j for j in range(1, n + 1) if j not in fixed]
    coeffs: dict[Pair, int] = {}
    for j, k in itertools.permutations(free, 2):
        coeffs[(j, k)] = unfixed
    for i, (out, back) in zip(fixed, groups):
        for j in free:
            coeffs[(i, j)] = out
            coeffs[(j, i)] = back
    for (s, t), (fwd, bwd) in fixed_pairs.items():
        coeffs[(fixed[s], fixed[t])] = fwd
        coeffs[(fixed[t], fixed[s])] = bwd
    return coeffs


def _tri(n: int, a: int) -> int:
    return (n - a) * (n - a - 1) // 2


# (groups, fixed-pair signs, rhs(n)) for the classes written out directly.
_T_RECIPES = {
    "T1": (((1, 1),), {}, lambda n: 2 - _tri(n, 2)),
    "T2-0": (((1, 0), (0, 1)), {(0, 1): (-1, 1)}, lambda n: 2 - _tri(n, 4)),
    "T2-1": (((1, 1), (0, -1)), {(0, 1): (1, 0)}, lambda n: 2 - _tri(n, 3)),
    "T2-3": (((1, 1), (1, 0)), {(0, 1): (0, -1)}, lambda n: 3 - _tri(n, 4)),
}
_TRANSPOSED = {"T2-2": "T2-1", "T2-4": "T2-3"}

_T3_A = lambda n: 4 - _tri(n, 5)  # noqa: E731
_T3_B = lambda n: 5 - _tri(n, 6)  # noqa: E731
P, M, Z = 1, -1, 0
_T3_RECIPES = {
    1: (((P, P), (Z, M), (P, P)), {(0, 1): (P, Z), (1, 2): (Z, P), (0, 2): (M, M)}, _T3_A),
    2: (((P, P), (M, Z), (P, P)), {(0, 1): (Z, P), (1, 2): (P, Z), (0, 2): (M, M)}, _T3_A),
    3: (((P, P), (P, P), (Z, M)), {(0, 2): (P, Z), (1, 2): (P, Z), (0, 1): (M, M)}, _T3_A),
    4: (((P, P), (P, P), (M, Z)), {(0, 2): (Z, P), (1, 2): (Z, P), (0, 1): (M, M)}, _T3_A),
    5: (((P, P), (Z, P), (P, P)), {(0, 1): (M, Z), (0, 2): (M, M), (1, 2): (Z, M)}, _T3_B),
    6: (((P, P), (P, Z), (P, P)), {(0, 1): (Z, M), (0, 2): (M, M), (1, 2): (M, Z)}, _T3_B),
    7: (((P, P), (P, P), (Z, P)), {(0, 1): (M, M), (0, 2): (M, Z), (1, 2): (M, Z)}, _T3_B),
    8: (((P, P), (P, P), (P, Z)), {(0, 1): (M, M), (0, 2): (Z, M), (1, 2): (Z, M)}, _T3_B),
}


def transpose_coefficients(coeffs: Mapping[Pair, int]) -> dict[Pair, int]:
    return {(j, i): c for (i, j), c in coeffs.items()}


def make_vi(tag: str, n: int, fixed: Sequence[int]) -> Inequality:
    """T1 or T2-* inequality on [n] with the given fixed alternatives."""
    if tag not in T_TAGS:
        raise ParameterError(f"unknown T class {tag!r}")
    if n < 4:
        raise ParameterError("T classes need n >= 4")
    fixed = _check_fixed(n, fixed, 1 if tag == "T1" else 2)
    if tag in _TRANSPOSED:
        base = make_vi(_TRANSPOSED[tag], n, fixed)
        return Inequality(n, transpose_coefficients(base.coeffs), base.rhs, tag, fixed)
    groups, fixed_pairs, rhs = _T_RECIPES[tag]
    return Inequality(n, build_coefficients(n, fixed, groups, fixed_pairs), rhs(n), tag, fixed)


def make_t3_vi(variant: int, n: int, fixed: Sequence[int]) -> Inequality:
    """One of the eight conjectured three-fixed-alternative inequalities."""
    if variant not in _T3_RECIPES:
        raise ParameterError(f"T3 variant must be 1..8, got {variant!r}")
    if n < 5:
        raise ParameterError("T3 classes need n >= 5")
    fixed = _check_fixed(n, fixed, 3)
    groups, fixed_pairs, rhs = _T3_RECIPES[variant]
    coeffs = build_coefficients(n, fixed, groups, fixed_pairs)
    return Inequality(n, coeffs, rhs(n), f"T3-{variant}", fixed)


def make_class(tag: str, n: int, fixed: Sequence[int]) -> Inequality:
    """Dispatch on any T1/T2-*/T3-* tag."""
    if tag in T3_TAGS:
        return make_t3_vi(int(tag[3:]), n, fixed)
    return make_vi(tag, n, fixed)


def fixed_arity(tag: str) -> int:
    if tag == "T1":
        return 1
    if tag in T_TAGS:
        return 2
    if tag in T3_TAGS:
        return 3
    raise ParameterError(f"{tag!r} has no fixed-index arity")


def min_n(tag: str) -> int:
    return 5 if tag in T3_TAGS else 4


def axiomatic_inequalities(n: int) -> list[Inequality]:
    """Bound, totality and transitivity rows (AX1, AX2, AX3)."""
    if n < 3:
        raise ParameterError("axiomatic inequalities need n >= 3")
    rows = [Inequality(n, {(i, j): 1}, 1, "AX1", (i, j)) for i, j in pairs(n)]
    rows += [
        Inequality(n, {(i, j): 1, (j, i): 1}, 1, "AX2", (i, j), ">=")
        for i, j in pairs(n)
        if i < j
    ]
    rows += [
        Inequality(n, {(i, j): 1, (i, k): -1, (k, j): -1}, -1, "AX3", (i, j, k), ">=")
        for i, j, k in itertools.permutations(range(1, n + 1), 3)
    ]
    return rows


def lift(q: Inequality, n_target: int) -> Inequality:
    """Zero-pad ``q`` to [n_target]; the right-hand side is unchanged."""
    if n_target <= q.n:
        raise ParameterError(f"lift target {n_target} must exceed n={q.n}")
    origin = q.origin or f"{q.tag}@n={q.n}"
    return Inequality(n_target, dict(q.coeffs), q.rhs, "LIFTED", q.fixed, q.sense, origin)


_WO4_COLUMNS = ((1, 2), (2, 1), (1, 3), (3, 1), (1, 4), (4, 1),
                (2, 3), (3, 2), (2, 4), (4, 2), (3, 4), (4, 3))
_WO4_ROWS = {
    "WO1": ((1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0), 1),
    "WO2": ((-1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0), -1),
    # Printed right-hand side is -1, which no weak order satisfies when 1>2>3;
    # these coefficients are the transitivity row x12 + x23 - x13 <= 1.
    "WO3": ((1, 0, -1, 0, 0, 0, 1, 0, 0, 0, 0, 0), 1),
    "WO4": ((1, 1, 1, 1, 1, 1, -1, -1, -1, -1, -1, -1), 1),
    "WO5": ((-1, 1, 1, 0, 1, 0, 0, 1, 0, 1, -1, -1), 2),
    "WO6": ((1, 0, 1, 1, 1, 1, 0, -1, 0, -1, -1, -1), 2),
    "WO7": ((0, 1, 1, 1, 1, 1, -1, 0, -1, 0, -1, -1), 2),
    "WO8": ((-1, 0, 1, 1, 1, 1, 0, 1, 0, 1, -1, -1), 3),
    "WO9": ((0, -1, 1, 1, 1, 1, 1, 0, 1, 0, -1, -1), 3),
}


def wo4_catalog() -> list[Inequality]:
    """The nine facet classes WO1..WO9 of the n = 4 polytope, labels j_k = k."""
    out = []
    for tag, (row, rhs) in _WO4_ROWS.items():
        coeffs = {p: c for p, c in zip(_WO4_COLUMNS, row) if c}
        out.append(Inequality(4, coeffs, rhs, tag))
    return out


def class_cardinality(tag: str, n: int) -> int:
    """Number of distinct inequalities a class contributes on [n].

    WO4..WO9 use C(n,4)|WO^4_i|; WO1..WO3 are the axiomatic row counts.  A
    T class with ``i`` fixed alternatives counts every instantiation on every
    sub-dimension: sum over m of C(n,m) C(m,i) i!, with m starting at 4
    (5 for the T3 family).  The i! orderings are divided by the number that
    give identical inequalities (2 for every T3 variant, 1 otherwise).
    """
    if tag in WO4_CARDINALITIES:
        if n < 4:
            raise ParameterError("WO classes need n >= 4")
        if tag == "WO1":
            return n * (n - 1)
        if tag == "WO2":
            return n * (n - 1) // 2
        if tag == "WO3":
            return n * (n - 1) * (n - 2)
        return comb(n, 4) * WO4_CARDINALITIES[tag]
    if tag in T_TAGS or tag in T3_TAGS:
        i = fixed_arity(tag)
        lo = min_n(tag)
        if n < lo:
            raise ParameterError(f"{tag} needs n >= {lo}")
        orderings = factorial(i) // _stabilizer_size(tag)
        return sum(comb(n, m) * comb(m, i) * orderings for m in range(lo, n + 1))
    raise ParameterError(f"unknown class tag {tag!r}")


def _stabilizer_size(tag: str) -> int:
    """Orderings of the fixed tuple that reproduce the same inequality."""
    arity, m = fixed_arity(tag), min_n(tag)
    base = tuple(range(1, arity + 1))
    ref = make_class(tag, m, base).dense()
    return sum(1 for perm in itertools.permutations(base) if make_class(tag, m, perm).dense() == ref)


def instances(tag: str, n: int) -> Iterator[Inequality]:
    """Every (fixed tuple) instantiation of a T class on exactly [n]."""
    arity = fixed_arity(tag)
    for fixed in itertools.permutations(range(1, n + 1), arity):
        yield make_class(tag, n, fixed)


def dominated_by(q: Inequality, other: Inequality) -> bool:
    """True if ``other`` dominates ``q``.

    Both are compared in ``<=`` form on the larger of the two dimensions:
    ``other`` dominates when some mu > 0 gives pi' >= mu pi and
    pi'_0 <= mu pi_0 with at least one strict inequality.
    """
    n = max(q.n, other.n)
    a = q if q.n == n else lift(q, n)
    b = other if other.n == n else lift(other, n)
    pi, pi0 = a.normalized()
    pj, pj0 = b.normalized()
    # Every condition reads have >= mu * base.
    constraints = list(zip(pj, pi)) + [(-pj0, -pi0)]
    lower, lower_open, upper = Fraction(0), True, None
    for have, base in constraints:
        if base == 0:
            if have < 0:
                return False
            continue
        bound = Fraction(have, base)
        if base > 0:
            upper = bound if upper is None else min(upper, bound)
        elif bound > 0 and bound >= lower:
            lower, lower_open = bound, False
    if upper is None:
        mu = lower + 1
    elif upper < lower or (upper == lower and lower_open):
        return False
    else:
        mu = (lower + upper) / 2
    return any(have != mu * base for have, base in constraints)
