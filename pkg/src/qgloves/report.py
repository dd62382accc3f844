"""Structured experiment reports: named checks plus a result payload."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from . import __version__


@dataclass
class Check:
    """One pass/fail record.

    ``comparison`` is ``"abs_diff"`` (pass iff ``|expected - actual| <=
    tolerance``), ``"greater_than"`` (pass iff ``actual > expected``) or
    ``"equals"`` (exact match of a set, tuple or verdict).
    """

    name: str
    expected: Any
    actual: Any
    tolerance: float | None
    passed: bool
    comparison: str = "abs_diff"

    def as_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return _jsonable(d)


def close(name: str, expected: float, actual: float, tolerance: float) -> Check:
    actual = float(actual)
    ok = math.isfinite(actual) and abs(expected - actual) <= tolerance
    return Check(name, float(expected), actual, tolerance, bool(ok))


def at_most(name: str, actual: float, bound: float) -> Check:
    """Deviation-style check: ``actual`` should be zero within ``bound``."""
    return close(name, 0.0, abs(actual), bound)


def greater_than(name: str, actual: float, bound: float) -> Check:
    return Check(name, float(bound), float(actual), None, bool(actual > bound), "greater_than")


def less_than(name: str, actual: float, bound: float) -> Check:
    return Check(name, float(bound), float(actual), None, bool(actual < bound), "less_than")


def equals(name: str, expected, actual) -> Check:
    return Check(name, expected, actual, None, bool(expected == actual), "equals")


@dataclass
class ExperimentReport:
    experiment: str
    parameters: dict
    results: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, *checks: Check) -> None:
        self.checks.extend(checks)

    def as_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "parameters": _jsonable(self.parameters),
            "results": _jsonable(self.results),
            "checks": [c.as_dict() for c in self.checks],
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def _jsonable(obj):
    """Convert numpy types and complex numbers into JSON-friendly values."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        if obj.imag == 0:
            return float(obj.real)
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj
