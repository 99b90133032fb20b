"""Check records, experiment reports, and their JSON/CSV serialization.

Reports are deterministic for a fixed config and seed: keys are sorted,
all numerics are converted to plain Python types, and the only
run-dependent field (the timestamp) lives in a single provenance slot
that consumers may strip.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

SCHEMA_VERSION = 1
ARTIFACT_VERSION = "0.1.0"

__all__ = [
    "CheckRecord",
    "Sweep",
    "ExperimentReport",
    "check_upper",
    "check_lower",
    "check_flag",
    "check_info",
    "jsonable",
    "config_hash",
    "write_report",
    "write_sweeps",
]


@dataclass
class CheckRecord:
    name: str
    measured: float | None
    threshold: float | None
    verdict: str  # pass | fail | info
    margin: float | None
    code: str = "ok"
    note: str | None = None


@dataclass
class Sweep:
    """Tabular sweep destined for one CSV file."""

    name: str
    description: str
    columns: list[str]
    rows: list[list[float]] = field(default_factory=list)


def check_upper(name, measured, threshold, tol_scale=1.0, code="ok", note=None) -> CheckRecord:
    """measured <= threshold * tol_scale."""
    t = threshold * tol_scale
    ok = bool(np.isfinite(measured)) and measured <= t
    return CheckRecord(
        name=name,
        measured=float(measured),
        threshold=float(t),
        verdict="pass" if ok else "fail",
        margin=float(t - measured) if np.isfinite(measured) else None,
        code=code if ok else code if code != "ok" else "check_failed",
        note=note,
    )


def check_lower(name, measured, threshold, tol_scale=1.0, code="ok", note=None) -> CheckRecord:
    """measured >= threshold / tol_scale (lower bounds loosen downward)."""
    t = threshold / tol_scale
    ok = bool(np.isfinite(measured)) and measured >= t
    return CheckRecord(
        name=name,
        measured=float(measured),
        threshold=float(t),
        verdict="pass" if ok else "fail",
        margin=float(measured - t) if np.isfinite(measured) else None,
        code=code if ok else code if code != "ok" else "check_failed",
        note=note,
    )


def check_flag(name, ok: bool, code="ok", note=None) -> CheckRecord:
    return CheckRecord(
        name=name,
        measured=1.0 if ok else 0.0,
        threshold=1.0,
        verdict="pass" if ok else "fail",
        margin=0.0 if ok else -1.0,
        code=code if ok or code != "ok" else "check_failed",
        note=note,
    )


def check_info(name, measured, note=None) -> CheckRecord:
    return CheckRecord(
        name=name,
        measured=float(measured) if measured is not None else None,
        threshold=None,
        verdict="info",
        margin=None,
        note=note,
    )


def jsonable(obj):
    """Recursively convert to JSON-serializable plain Python values."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.complexfloating, complex)):
        return [float(np.real(obj)), float(np.imag(obj))]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    return obj


def config_hash(config: dict) -> str:
    canon = json.dumps(jsonable(config), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


@dataclass
class ExperimentReport:
    suite: str
    config: dict
    checks: list[CheckRecord]
    sweeps: list[Sweep] = field(default_factory=list)

    @property
    def failed(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.verdict == "fail"]

    def to_dict(self, timestamp: str | None = None) -> dict:
        names = [c.name for c in self.checks]
        if len(names) != len(set(names)):
            raise ValueError("duplicate check names in report")
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "config": jsonable(self.config),
            "checks": [
                {
                    "name": c.name,
                    "measured": jsonable(c.measured),
                    "threshold": jsonable(c.threshold),
                    "verdict": c.verdict,
                    "margin": jsonable(c.margin),
                    "code": c.code,
                    "note": c.note,
                }
                for c in self.checks
            ],
            "sweeps": [s.name for s in self.sweeps] or "no sweeps",
            "provenance": {
                "artifact_version": ARTIFACT_VERSION,
                "config_hash": config_hash(self.config),
                "timestamp": timestamp
                or datetime.now(timezone.utc).isoformat(timespec="seconds"),
            },
        }


def write_report(report: ExperimentReport, out_dir: str | Path) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "report.json"
    with open(path, "w") as f:
        json.dump(report.to_dict(), f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def write_sweeps(report: ExperimentReport, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for sweep in report.sweeps:
        path = out / f"{sweep.name}.csv"
        with open(path, "w", newline="") as f:
            f.write(f"# {sweep.description}\n")
            writer = csv.writer(f)
            writer.writerow(sweep.columns)
            for row in sweep.rows:
                writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
        paths.append(path)
    return paths
