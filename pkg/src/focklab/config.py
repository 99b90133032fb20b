"""Experiment configuration: a single human-writable JSON document."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError

SUITES = ("weights", "kernel", "systems", "cauchy", "young", "pw")

__all__ = ["ExperimentConfig", "parse_config", "SUITES"]


@dataclass
class ExperimentConfig:
    dim: int
    weight: dict
    suite: str = "all"
    inflation: int = 2
    points: dict = field(default_factory=lambda: {"kind": "lattice", "scale": 1.0})
    seed: int = 0
    tol_scale: float = 1.0
    out_dir: str = "reports"
    grids: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)

    def suites(self) -> list[str]:
        if self.suite == "all":
            return list(SUITES)
        if isinstance(self.suite, list):
            names = self.suite
        else:
            names = [self.suite]
        for n in names:
            if n not in SUITES:
                raise ConfigError(f"unknown suite {n!r}; valid: {', '.join(SUITES)} or 'all'")
        return names

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "weight": self.weight,
            "suite": self.suite,
            "inflation": self.inflation,
            "points": self.points,
            "seed": self.seed,
            "tol_scale": self.tol_scale,
            "out_dir": self.out_dir,
            "grids": self.grids,
            "tolerances": self.tolerances,
        }


def parse_config(path: str | Path) -> ExperimentConfig:
    """Load and validate a config file; raises ConfigError with the
    offending field (or line for syntax errors)."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(
            f"config {path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from e
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path}: top level must be a JSON object")

    for required in ("dim", "weight"):
        if required not in raw:
            raise ConfigError(f"config {path}: missing required field '{required}'")
    if not isinstance(raw["dim"], int) or raw["dim"] < 1:
        raise ConfigError(f"config {path}: field 'dim' must be a positive integer")
    if not isinstance(raw["weight"], dict) or "kind" not in raw["weight"]:
        raise ConfigError(f"config {path}: field 'weight' must be an object with a 'kind'")

    known = {
        "dim", "weight", "suite", "inflation", "points", "seed",
        "tol_scale", "out_dir", "grids", "tolerances",
    }
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"config {path}: unknown field(s) {sorted(unknown)}")

    cfg = ExperimentConfig(
        dim=raw["dim"],
        weight=raw["weight"],
        suite=raw.get("suite", "all"),
        inflation=int(raw.get("inflation", 2)),
        points=raw.get("points", {"kind": "lattice", "scale": 1.0}),
        seed=int(raw.get("seed", 0)),
        tol_scale=float(raw.get("tol_scale", 1.0)),
        out_dir=str(raw.get("out_dir", "reports")),
        grids=raw.get("grids", {}),
        tolerances=raw.get("tolerances", {}),
    )
    if cfg.inflation < 1:
        raise ConfigError(f"config {path}: field 'inflation' must be >= 1")
    if cfg.tol_scale <= 0:
        raise ConfigError(f"config {path}: field 'tol_scale' must be positive")
    for name, value in cfg.tolerances.items():
        if not isinstance(value, (int, float)) or value <= 0:
            raise ConfigError(f"config {path}: tolerance '{name}' must be positive")
    cfg.suites()  # validates the suite selector
    return cfg
