"""Report documents and their human / structured renderings."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

SCHEMA_VERSION = "1.0"


@dataclass
class Check:
    name: str
    holds: bool
    witness: Any = None
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "holds": bool(self.holds), "witness": self.witness, "detail": self.detail}


@dataclass
class ReportDocument:
    command: dict
    checks: list[Check] = field(default_factory=list)
    results: dict = field(default_factory=dict)
    timing_ms: float | None = None
    schema_version: str = SCHEMA_VERSION

    @property
    def all_passed(self) -> bool:
        return all(c.holds for c in self.checks)

    def add(self, name: str, holds: bool, witness=None, **detail) -> Check:
        check = Check(name, bool(holds), _plain(witness), _plain(detail))
        self.checks.append(check)
        return check

    def as_dict(self) -> dict:
        doc = {
            "schema_version": self.schema_version,
            "command": _plain(self.command),
            "checks": [c.as_dict() for c in self.checks],
            "results": _plain(self.results),
            "all_passed": self.all_passed,
        }
        if self.timing_ms is not None:
            doc["timing_ms"] = float(self.timing_ms)
        return doc


def _plain(obj):
    """Convert numpy scalars/arrays and tuples into JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "tolist"):
        return _plain(obj.tolist())
    return obj


def _float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    text = "%.17g" % x
    if not any(ch in text for ch in ".eE"):
        text += ".0"
    return text


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_encode(obj[k], indent, level + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, str, bool)) or v is None for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_structured(doc: ReportDocument) -> str:
    """JSON with sorted keys and floats at 17 significant digits."""
    return _encode(doc.as_dict(), 2, 0) + "\n"


def _witness_text(w) -> str:
    if w is None:
        return "-"
    return json.dumps(w, ensure_ascii=False)


def to_human(doc: ReportDocument) -> str:
    lines = [f"gyrokit report (schema {doc.schema_version})"]
    cmd = doc.command
    args = " ".join(f"{k}={cmd[k]}" for k in sorted(cmd) if k != "name" and cmd[k] is not None)
    lines.append(f"command: {cmd.get('name')} {args}".rstrip())
    lines.append("")
    width = max([len(c.name) for c in doc.checks] + [5])
    lines.append(f"{'check'.ljust(width)}  result  witness")
    for c in doc.checks:
        lines.append(f"{c.name.ljust(width)}  {'PASS' if c.holds else 'FAIL'}    {_witness_text(c.witness)}")
    for key in sorted(doc.results):
        lines.append("")
        lines.append(f"[{key}]")
        lines.extend(_human_block(doc.results[key]))
    lines.append("")
    if doc.all_passed:
        lines.append("ALL CHECKS PASSED")
    else:
        failed = sum(not c.holds for c in doc.checks)
        lines.append(f"SOME CHECKS FAILED ({failed} of {len(doc.checks)})")
    if doc.timing_ms is not None:
        lines.append(f"time: {doc.timing_ms:.1f} ms")
    return "\n".join(lines) + "\n"


def _human_block(value) -> list[str]:
    value = _plain(value)
    if isinstance(value, dict):
        width = max((len(str(k)) for k in value), default=0)
        return [f"{str(k).ljust(width)}  {_human_value(value[k])}" for k in sorted(value)]
    if isinstance(value, list):
        if all(isinstance(v, int) and not isinstance(v, bool) for v in value):
            return [_human_value(value)]
        return [_human_value(v) for v in value]
    return [_human_value(value)]


def _human_value(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, list) and all(isinstance(t, int) for t in v):
        return " ".join(map(str, v))
    if isinstance(v, str):
        return v
    return json.dumps(v, ensure_ascii=False, sort_keys=True)


def emit_report(doc: ReportDocument, fmt: str = "human") -> str:
    if fmt == "structured":
        return to_structured(doc)
    if fmt == "human":
        return to_human(doc)
    raise ValueError(f"unknown format {fmt!r}")


def load_schema() -> dict:
    return json.loads((resources.files("gyrokit") / "report.schema.json").read_text())
