"""JSON instance format and number encoding for reports."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

from .system import GainSystem, to_rational


class InstanceFormatError(ValueError):
    pass


def encode_rational(q: Fraction):
    """Integers stay integers; everything else becomes a ``"p/q"`` string."""
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def encode_number(value, exact=None, interval=None) -> dict:
    """Decimal form plus, when known, an exact rational or an isolating interval (as strings)."""
    return {
        "decimal": float(value),
        "exact": None if exact is None else rational_str(exact),
        "interval": None if interval is None else [rational_str(interval[0]), rational_str(interval[1])],
    }


def _parse_value(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float, str)):
        raise InstanceFormatError(f"gain at {where} is not a number or 'p/q' string: {v!r}")
    try:
        return to_rational(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceFormatError(f"gain at {where} is malformed: {v!r}") from exc


def _parse_matrix(rows, name):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InstanceFormatError(f"'{name}' must be a list of rows")
    return [[_parse_value(v, f"{name}[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(rows)]


def instance_from_dict(d: dict) -> GainSystem:
    if not isinstance(d, dict):
        raise InstanceFormatError("instance must be a JSON object")
    if "gains" in d:
        g = _parse_matrix(d["gains"], "gains")
        plus = [[v if v > 0 else Fraction(0) for v in r] for r in g]
        minus = [[-v if v < 0 else Fraction(0) for v in r] for r in g]
    elif "supporter_gains" in d and "repressor_gains" in d:
        plus = _parse_matrix(d["supporter_gains"], "supporter_gains")
        minus = _parse_matrix(d["repressor_gains"], "repressor_gains")
    else:
        raise InstanceFormatError("instance needs 'gains' or both 'supporter_gains' and 'repressor_gains'")
    if not plus:
        raise InstanceFormatError("instance has no entities")
    rows_m = {len(r) for r in plus + minus}
    if len(plus) != len(minus) or len(rows_m) != 1:
        raise InstanceFormatError("dimension mismatch: gain rows have different lengths")
    n, m = len(plus), rows_m.pop()
    if "n" in d and d["n"] != n:
        raise InstanceFormatError(f"dimension mismatch: n={d['n']} but there are {n} rows")
    if "m" in d and d["m"] != m:
        raise InstanceFormatError(f"dimension mismatch: m={d['m']} but rows have {m} entries")
    if m == 0:
        raise InstanceFormatError("instance has no affectors")
    return GainSystem(plus, minus)


def instance_to_dict(system: GainSystem) -> dict:
    return {
        "n": system.n,
        "m": system.m,
        "gains": [[encode_rational(v) for v in row] for row in system.signed()],
    }


def load_instance(path) -> tuple[GainSystem, bytes]:
    raw = Path(path).read_bytes()
    try:
        d = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"malformed JSON in {path}: {exc}") from exc
    return instance_from_dict(d), raw


def to_jsonable(obj):
    """Fractions become "p/q", tuples lists, frozensets sorted lists."""
    if isinstance(obj, Fraction):
        return encode_rational(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else repr(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(v) for v in obj)
    if hasattr(obj, "tolist"):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True) + "\n"
