"""Verification results and their deterministic serialization."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exactfield import Scalar
from .superspace import Element, PolyMonomial, SpinorMonomial

REPORT_VERSION = "1"

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class Check:
    """One named assertion with its outcome and supporting data."""

    name: str
    anchor: str
    status: str
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {"name": self.name, "paper_anchor": self.anchor, "status": self.status, "data": to_jsonable(self.data)}


def check(name: str, anchor: str, ok: bool, **data) -> Check:
    return Check(name, anchor, PASS if ok else FAIL, data)


@dataclass
class Report:
    params: dict
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if c.status == FAIL), None)

    def to_json(self) -> dict:
        return {
            "params": to_jsonable(self.params),
            "suite": self.suite,
            "checks": [c.to_json() for c in self.checks],
            "version": REPORT_VERSION,
        }

    def render(self, fmt: str = "json") -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["suite", "name", "paper_anchor", "status", "data"])
            for c in self.checks:
                w.writerow([self.suite, c.name, c.anchor, c.status, json.dumps(to_jsonable(c.data), sort_keys=True, ensure_ascii=False)])
            return buf.getvalue()
        if fmt == "text":
            lines = [f"suite {self.suite} {json.dumps(to_jsonable(self.params), sort_keys=True)}"]
            for c in self.checks:
                lines.append(f"  [{c.status.upper():4}] {c.name}  ({c.anchor})")
                for k in sorted(c.data):
                    v = to_jsonable(c.data[k])
                    s = json.dumps(v, sort_keys=True, ensure_ascii=False)
                    if len(s) > 160:
                        s = s[:157] + "..."
                    lines.append(f"         {k}: {s}")
            lines.append("PASS" if self.passed else "FAIL")
            return "\n".join(lines) + "\n"
        raise ValueError(f"unknown format {fmt!r}")


def to_jsonable(x: Any):
    if isinstance(x, Scalar):
        return x.to_json()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Element):
        return x.to_json()
    if isinstance(x, (PolyMonomial, SpinorMonomial)):
        return x.to_json()
    if hasattr(x, "to_json") and not isinstance(x, type):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-report-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
