"""Template search for new inequality classes.

A template assigns a sign/orientation symbol to each arc group of the
fixed-alternative digraph: the arcs between fixed alternative ``i_t`` and
every unfixed ``j`` (one group per fixed alternative), and the arcs between
each pair of fixed alternatives.  Arcs among unfixed alternatives share one
symbol, frozen to ``-<>`` during enumeration.

Symbols: ``+``/``-`` is the coefficient sign; ``>`` is the forward arc
(``x_{i j}`` for a group, ``x_{i_s i_t}`` with ``s < t`` for a fixed pair),
``<`` the backward arc, ``<>`` both.  Mixed fixed-pair symbols such as
``->+<`` give the two directions opposite signs.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .core import dimension, pairs
from .enumeration import characteristic_matrix, check_guard
from .errors import ParameterError
from .inequalities import Pair, build_coefficients, make_t3_vi, make_vi
from .verify import affine_rank, lhs_values

SYMBOLS: dict[str, tuple[int, int]] = {
    "+>": (1, 0),
    "+<": (0, 1),
    "+<>": (1, 1),
    "->": (-1, 0),
    "-<": (0, -1),
    "-<>": (-1, -1),
    "0": (0, 0),
    "+>-<": (1, -1),
    "->+<": (-1, 1),
}
_BY_SIGNS = {v: k for k, v in SYMBOLS.items()}
GROUP_SYMBOLS = ("+>", "+<", "+<>", "->", "-<", "-<>", "0")
PAIR_SYMBOLS = ("0", "+>", "+<", "->", "-<", "+>-<", "->+<")
UNFIXED_SYMBOLS = ("-<>", "0", "+<>")


@dataclass(frozen=True)
class Template:
    num_fixed: int
    groups: tuple[str, ...]
    pairs: tuple[str, ...] = ()
    unfixed: str = "-<>"

    def __post_init__(self) -> None:
        if self.num_fixed not in (1, 2, 3):
            raise ParameterError(f"num_fixed must be 1, 2 or 3, got {self.num_fixed}")
        npairs = self.num_fixed * (self.num_fixed - 1) // 2
        if len(self.groups) != self.num_fixed or len(self.pairs) != npairs:
            raise ParameterError("symbol counts do not match num_fixed")
        for s in self.groups + self.pairs:
            if s not in SYMBOLS:
                raise ParameterError(f"unknown arc symbol {s!r}")
        if self.unfixed not in UNFIXED_SYMBOLS:
            raise ParameterError(f"unfixed group must be one of {UNFIXED_SYMBOLS}")

    @property
    def label(self) -> str:
        parts = [f"A{t + 1}={s}" for t, s in enumerate(self.groups)]
        combos = itertools.combinations(range(1, self.num_fixed + 1), 2)
        parts += [f"P{s}{t}={sym}" for (s, t), sym in zip(combos, self.pairs)]
        return " ".join(parts + [f"U={self.unfixed}"])

    def __str__(self) -> str:
        return self.label


def _flip(symbol: str) -> str:
    fwd, bwd = SYMBOLS[symbol]
    return _BY_SIGNS[(bwd, fwd)]


def transpose_template(t: Template) -> Template:
    """Every arc reversed."""
    return Template(t.num_fixed, tuple(map(_flip, t.groups)), tuple(map(_flip, t.pairs)), t.unfixed)


def swap_template(t: Template) -> Template:
    """The two fixed alternatives exchanged (two-fixed templates only)."""
    if t.num_fixed != 2:
        raise ParameterError("swap is defined for two fixed alternatives")
    return Template(2, t.groups[::-1], (_flip(t.pairs[0]),), t.unfixed)


def enumerate_templates(num_fixed: int) -> list[Template]:
    """All 7 (one fixed) or 343 (two fixed) templates in a fixed order."""
    if num_fixed == 1:
        return [Template(1, (g,)) for g in GROUP_SYMBOLS]
    if num_fixed == 2:
        return [
            Template(2, (g1, g2), (p,))
            for g1, g2, p in itertools.product(GROUP_SYMBOLS, GROUP_SYMBOLS, PAIR_SYMBOLS)
        ]
    raise ParameterError("template enumeration covers 1 or 2 fixed alternatives; use the T3-* classes for 3")


def template_lhs(t: Template, n: int, fixed: Sequence[int] | None = None) -> dict[Pair, int]:
    """Coefficient map of ``t`` on [n]."""
    fixed = tuple(range(1, t.num_fixed + 1)) if fixed is None else tuple(fixed)
    if len(fixed) != t.num_fixed or len(set(fixed)) != len(fixed):
        raise ParameterError(f"need {t.num_fixed} distinct fixed alternatives")
    if any(not 1 <= i <= n for i in fixed):
        raise ParameterError(f"fixed alternatives {fixed} outside [1, {n}]")
    if n < t.num_fixed + 2:
        raise ParameterError(f"n must be at least {t.num_fixed + 2}")
    groups = [SYMBOLS[s] for s in t.groups]
    combos = itertools.combinations(range(t.num_fixed), 2)
    fixed_pairs = {st: SYMBOLS[s] for st, s in zip(combos, t.pairs)}
    coeffs = build_coefficients(n, fixed, groups, fixed_pairs, SYMBOLS[t.unfixed][0])
    return {p: c for p, c in coeffs.items() if c}


def template_from_coeffs(coeffs: Mapping[Pair, int], n: int, fixed: Sequence[int]) -> Template:
    """Read a coefficient map back into group symbols; rejects non-template maps."""
    fixed = tuple(fixed)
    free = [j for j in range(1, n + 1) if j not in fixed]
    if len(free) < 2:
        raise ParameterError("need at least two unfixed alternatives")

    def sym(a: int, b: int) -> str:
        key = (coeffs.get((a, b), 0), coeffs.get((b, a), 0))
        if key not in _BY_SIGNS:
            raise ParameterError(f"coefficients {key} on ({a},{b}) are not a template symbol")
        return _BY_SIGNS[key]

    def uniform(values: set[str], what: str) -> str:
        if len(values) != 1:
            raise ParameterError(f"{what} arcs are not uniform: {sorted(values)}")
        return values.pop()

    groups = tuple(uniform({sym(i, j) for j in free}, f"group {i}") for i in fixed)
    pair_syms = tuple(sym(fixed[s], fixed[t]) for s, t in itertools.combinations(range(len(fixed)), 2))
    unfixed = uniform({sym(j, k) for j, k in itertools.permutations(free, 2)}, "unfixed")
    return Template(len(fixed), groups, pair_syms, unfixed)


def _featured() -> dict[str, Template]:
    out = {"T1": template_from_coeffs(make_vi("T1", 4, (1,)).coeffs, 4, (1,))}
    for tag in ("T2-0", "T2-1", "T2-2", "T2-3", "T2-4"):
        out[tag] = template_from_coeffs(make_vi(tag, 4, (1, 2)).coeffs, 4, (1, 2))
    return out


FEATURED: dict[str, Template] = _featured()


def featured_name(t: Template) -> str | None:
    for name, f in FEATURED.items():
        if f == t:
            return name
    return None


def t3_template(variant: int) -> Template:
    """Template of a conjectured T3 class (not reachable by enumeration)."""
    q = make_t3_vi(variant, 5, (1, 2, 3))
    return template_from_coeffs(q.coeffs, 5, (1, 2, 3))


def max_over_weak_orders(coeffs: Mapping[Pair, int], n: int, limit: int | None = None) -> tuple[int, list[int]]:
    """Exact maximum of pi . x over all weak orders, with the attaining rows."""
    dense = [coeffs.get(p, 0) for p in pairs(n)]
    values = lhs_values(dense, n, limit)
    best = int(values.max())
    return best, [int(r) for r in (values == best).nonzero()[0]]


@dataclass
class RhsLaw:
    """rhs(n) = a + b n + c n^2 fitted exactly through observed maxima."""

    a: Fraction
    b: Fraction
    c: Fraction
    fit_range: tuple[int, ...]
    holdout: tuple[int, ...]
    observed: dict[int, int] = field(default_factory=dict)
    verdict: str = "confirmed"

    def __call__(self, n: int) -> Fraction:
        return self.a + self.b * n + self.c * n * n

    def __str__(self) -> str:
        return f"{self.a} + {self.b}*n + {self.c}*n^2"

    def as_dict(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "c": str(self.c),
            "fit_range": list(self.fit_range),
            "holdout": list(self.holdout),
            "observed": {str(k): v for k, v in self.observed.items()},
            "verdict": self.verdict,
        }


def _quadratic_through(points: Sequence[tuple[int, int]]) -> tuple[Fraction, Fraction, Fraction]:
    (x0, y0), (x1, y1), (x2, y2) = points
    a = b = c = Fraction(0)
    for xi, yi, others in ((x0, y0, (x1, x2)), (x1, y1, (x0, x2)), (x2, y2, (x0, x1))):
        u, v = others
        w = Fraction(yi, (xi - u) * (xi - v))
        c += w
        b -= w * (u + v)
        a += w * u * v
    return a, b, c


def infer_rhs(
    t: Template,
    fit_range: Sequence[int] = (4, 5, 6),
    holdout: Sequence[int] = (7,),
    limit: int | None = None,
) -> RhsLaw:
    """Fit the maximum as a quadratic in n and confirm it on held-out sizes."""
    fit_range, holdout = tuple(fit_range), tuple(holdout)
    if len(fit_range) < 3:
        raise ParameterError("need at least three fit points")
    if list(fit_range) != list(range(fit_range[0], fit_range[0] + len(fit_range))):
        raise ParameterError("fit range must be consecutive")
    observed = {}
    for n in fit_range + holdout:
        observed[n] = max_over_weak_orders(template_lhs(t, n), n, limit)[0]
    a, b, c = _quadratic_through([(n, observed[n]) for n in fit_range[:3]])
    law = RhsLaw(a, b, c, fit_range, holdout, observed)
    if any(law(n) != observed[n] for n in fit_range + holdout):
        law.verdict = "refuted"
    return law


@dataclass
class ScanRow:
    index: int
    template: Template
    featured: str | None
    max_lhs: int
    tight_count: int
    affine_rank: int
    is_facet: bool
    orbit: int

    def as_dict(self) -> dict:
        return {
            "index": self.index,
            "template": self.template.label,
            "featured": self.featured,
            "max_lhs": self.max_lhs,
            "tight_count": self.tight_count,
            "affine_rank": self.affine_rank,
            "is_facet": self.is_facet,
            "orbit": self.orbit,
        }


@dataclass
class ScanReport:
    num_fixed: int
    n: int
    rows: list[ScanRow]

    @property
    def facets(self) -> list[ScanRow]:
        return [r for r in self.rows if r.is_facet]

    def as_dict(self) -> dict:
        facets = self.facets
        return {
            "num_fixed": self.num_fixed,
            "n": self.n,
            "templates": len(self.rows),
            "facet_count": len(facets),
            "facet_templates": [r.index for r in facets],
            "featured_facets": sorted(r.featured for r in facets if r.featured),
            "non_featured_facets": sum(1 for r in facets if not r.featured),
            "facet_orbits": sorted({r.orbit for r in facets}),
            "rows": [r.as_dict() for r in self.rows],
        }


def orbits(templates: Sequence[Template]) -> list[int]:
    """Smallest index in each template's orbit under transpose (and fixed swap)."""
    index = {t: k for k, t in enumerate(templates)}
    out = []
    for t in templates:
        images = {t, transpose_template(t)}
        if t.num_fixed == 2:
            images |= {swap_template(s) for s in list(images)}
        out.append(min(index[s] for s in images if s in index))
    return out


def _scan_one(t: Template, n: int, limit: int | None) -> tuple[int, int, int]:
    best, rows = max_over_weak_orders(template_lhs(t, n), n, limit)
    rank = affine_rank(characteristic_matrix(n)[rows], limit=dimension(n) + 1)
    return best, len(rows), rank


def facet_scan(num_fixed: int, n: int, jobs: int = 1, limit: int | None = None) -> ScanReport:
    """Maximum, tight set size and tight-set affine rank for every template."""
    templates = enumerate_templates(num_fixed)
    if n < num_fixed + 2:
        raise ParameterError(f"n must be at least {num_fixed + 2}")
    check_guard(n, limit)
    work = [(t, n, limit) for t in templates]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda args: _scan_one(*args), work))
    else:
        results = [_scan_one(*args) for args in work]
    orbit = orbits(templates)
    rows = [
        ScanRow(k, t, featured_name(t), best, count, rank, rank == dimension(n), orbit[k])
        for k, (t, (best, count, rank)) in enumerate(zip(templates, results))
    ]
    return ScanReport(num_fixed, n, rows)
