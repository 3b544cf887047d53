"""JSON run reports.

Complex numbers are written as ``[re, im]``.  Floats use Python's shortest
round-trip repr, so serialize -> parse -> serialize is byte-identical.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Any

import numpy as np

from . import __version__
from .certify import Certificate
from .kconstant import KEstimate, KSource
from .oracle import CollisionReport

SCHEMA_ID = "univalent.report/1"

_RESULT_TYPES = {
    Certificate: "certificate",
    KEstimate: "k_estimate",
    CollisionReport: "collision_report",
}


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(obj.real), to_jsonable(obj.imag)]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _provenance(obj: Any) -> str:
    if isinstance(obj, KEstimate):
        return obj.source.value
    if isinstance(obj, Certificate):
        return obj.k_source.value if obj.k_source is not None else KSource.GRID_REFINED.value
    return KSource.GRID_REFINED.value


def result_entry(obj: Any, label: str = "") -> dict:
    """A tagged result record: type, label, provenance and the payload fields."""
    if isinstance(obj, dict):
        entry = to_jsonable(obj)
        entry.setdefault("provenance", KSource.GRID_REFINED.value)
        label = label or entry.get("label", "")
    else:
        entry = to_jsonable(obj)
        entry["type"] = _RESULT_TYPES[type(obj)]
        entry["provenance"] = _provenance(obj)
    entry["label"] = label
    return entry


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    tool_version: str = __version__
    schema: str = SCHEMA_ID

    def add(self, obj: Any, label: str = "") -> None:
        self.results.append(result_entry(obj, label))

    def as_dict(self) -> dict:
        return {
            "schema": self.schema,
            "tool_version": self.tool_version,
            "command": self.command,
            "inputs": to_jsonable(self.inputs),
            "results": self.results,
            "warnings": list(self.warnings),
            "timings": {k: to_jsonable(v) for k, v in self.timings.items()},
        }


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def serialize(report: RunReport) -> str:
    return dumps(report.as_dict())


def digest(payload: dict) -> str:
    """SHA-256 of the report with the timings block removed."""
    stripped = {k: v for k, v in payload.items() if k != "timings"}
    return hashlib.sha256(dumps(stripped).encode("utf-8")).hexdigest()


def load_schema() -> dict:
    text = resources.files("univalent.schema").joinpath("report.schema.json").read_text()
    return json.loads(text)
