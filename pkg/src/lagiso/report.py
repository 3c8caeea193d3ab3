"""Named residual checks and the JSON/CSV emitters.

Floats are written with 17 significant digits so that output is a pure
function of the inputs, byte for byte.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from . import __version__

_RELATIONS = {
    "<=": lambda x, t: x <= t,
    "<": lambda x, t: x < t,
    ">=": lambda x, t: x >= t,
    ">": lambda x, t: x > t,
}


@dataclass
class Check:
    """One named residual check.

    `max_residual` is the worst value seen over the sample points: the largest
    residual for "<=" and "<" checks, the smallest value for ">=" and ">" checks.
    """

    name: str
    max_residual: float
    tol: float
    relation: str = "<="
    witness: tuple[float, float] | None = None
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.max_residual):
            return False
        return bool(_RELATIONS[self.relation](self.max_residual, self.tol))

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "max_residual": float(self.max_residual),
            "tol": float(self.tol),
            "relation": self.relation,
            "pass": self.passed,
            "witness": None if self.witness is None else [float(x) for x in self.witness],
        }
        if self.info:
            out["info"] = self.info
        return out


def worst(name: str, values, u, v, tol: float, relation: str = "<=", **info) -> Check:
    """Build a Check from per-point values, recording the worst point as witness."""
    values = np.asarray(values, dtype=float).ravel()
    u = np.broadcast_to(np.asarray(u, dtype=float), values.shape).ravel()
    v = np.broadcast_to(np.asarray(v, dtype=float), values.shape).ravel()
    bad = ~np.isfinite(values)
    if bad.any():
        k = int(np.argmax(bad))
        return Check(name, math.inf, tol, relation, (u[k], v[k]), dict(info))
    k = int(np.argmin(values)) if relation in (">=", ">") else int(np.argmax(values))
    return Check(name, float(values[k]), tol, relation, (float(u[k]), float(v[k])), dict(info))


@dataclass
class VerificationReport:
    family: str
    params: dict[str, float]
    grid: dict[str, Any]
    checks: list[Check] = field(default_factory=list)
    artifact_version: str = __version__

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "artifact_version": self.artifact_version,
            "family": self.family,
            "params": dict(self.params),
            "grid": self.grid,
            "checks": [c.to_dict() for c in self.checks],
            "overall_pass": self.overall_pass,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def format_float(x: float) -> str:
    return "%.17g" % x


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        # JSON has no inf/nan
        return format_float(x) if math.isfinite(x) else "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """json.dumps with fixed 17-significant-digit floats (the stdlib uses repr)."""
    return _encode(obj, indent, 0) + "\n"


def write_csv(stream, header: Sequence[str], rows: Iterable[Sequence[float]]) -> None:
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(format_float(float(x)) for x in row) + "\n")
