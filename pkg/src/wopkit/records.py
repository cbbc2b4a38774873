"""JSON serialization of inequalities and reports."""
from __future__ import annotations

import json
from typing import Any

from . import __version__
from .core import pair_index
from .errors import InvalidPairError, ParameterError, RecordError
from .inequalities import Inequality
from .verify import FacetReport

INEQ_SCHEMA = "wop-ineq/1"
REPORT_SCHEMA = "wop-report/1"
SCAN_SCHEMA = "wop-scan/1"


def record_dict(q: Inequality) -> dict[str, Any]:
    out: dict[str, Any] = {
        "schema": INEQ_SCHEMA,
        "class": q.tag,
        "n": q.n,
        "fixed": list(q.fixed),
        "sense": q.sense,
        "rhs": q.rhs,
        "coeffs": [[i, j, c] for (i, j), c in q.coeffs.items()],
    }
    if q.origin is not None:
        out["origin"] = q.origin
    return out


def dumps_record(q: Inequality) -> str:
    return json.dumps(record_dict(q))


def _int(obj: dict, key: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise RecordError(f"field {key!r} must be an integer")
    return v


def parse_record(obj: Any) -> Inequality:
    """Build an Inequality from a decoded record, validating every field."""
    if not isinstance(obj, dict):
        raise RecordError("record is not a JSON object")
    if obj.get("schema") != INEQ_SCHEMA:
        raise RecordError(f"unsupported schema {obj.get('schema')!r}")
    tag = obj.get("class")
    if not isinstance(tag, str):
        raise RecordError("field 'class' must be a string")
    n, rhs = _int(obj, "n"), _int(obj, "rhs")
    if n < 2:
        raise RecordError("n must be at least 2")
    fixed = obj.get("fixed", [])
    if not isinstance(fixed, list) or not all(isinstance(i, int) and 1 <= i <= n for i in fixed):
        raise RecordError("field 'fixed' must list alternatives in [1, n]")
    sense = obj.get("sense", "<=")
    if sense not in ("<=", ">="):
        raise RecordError(f"unknown sense {sense!r}")
    raw = obj.get("coeffs")
    if not isinstance(raw, list):
        raise RecordError("field 'coeffs' must be a list")
    coeffs: dict[tuple[int, int], int] = {}
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 3 and all(isinstance(v, int) for v in entry)):
            raise RecordError(f"bad coefficient entry {entry!r}")
        i, j, c = entry
        try:
            pair_index(i, j, n)
        except InvalidPairError as exc:
            raise RecordError(str(exc)) from None
        if c == 0 or (i, j) in coeffs:
            raise RecordError(f"coefficient on ({i},{j}) is zero or repeated")
        coeffs[(i, j)] = c
    origin = obj.get("origin")
    if origin is not None and not isinstance(origin, str):
        raise RecordError("field 'origin' must be a string")
    try:
        return Inequality(n, coeffs, rhs, tag, tuple(fixed), sense, origin)
    except ParameterError as exc:
        raise RecordError(str(exc)) from None


def loads_records(text: str) -> list[Inequality]:
    """Parse JSON-lines text (blank lines ignored)."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RecordError(f"line {lineno}: {exc.msg}") from None
        out.append(parse_record(obj))
    if not out:
        raise RecordError("no records found")
    return out


def report_dict(q: Inequality, report: FacetReport, enumeration_size: int,
                structures: bool, timings: dict[str, float] | None = None) -> dict[str, Any]:
    body = report.as_dict()
    if not structures:
        body.pop("structure_census")
        body.pop("unclassified")
    out: dict[str, Any] = {
        "schema": REPORT_SCHEMA,
        "tool": "wopkit",
        "version": __version__,
        "record": record_dict(q),
        "enumeration_size": enumeration_size,
        **body,
    }
    if timings is not None:
        out["timings"] = timings
    return out
