"""Experiment configurations.  Every script takes these as defaults and
lets the command line override individual fields."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field, fields


@dataclass
class WorkedSystemConfig:
    matrix: str = "data/worked_A.mat"
    vector: str = "data/worked_b.vec"
    policies: tuple = ("prefer-positive", "prefer-negative")
    gauss_seidel: bool = True


@dataclass
class TimingConfig:
    sizes: tuple = (3, 4, 5, 6, 7, 8, 10, 15, 20, 30)
    cases: int = 20
    max_mag: int = 20
    p_bottom: float = 0.0
    brute_limit: int = 7
    seed: int = 2024


@dataclass
class SurveyConfig:
    semirings: tuple = ("signs", "n2", "phase", "torus2", "torus4", "super3",
                        "smax", "t2", "phase-max", "torus4-max", "super3-max")
    budget: int = 20000
    seed: int = 7


@dataclass
class SolverSweepConfig:
    sizes: tuple = (2, 3, 4, 5, 6, 8)
    cases: int = 200
    p_nonthin: float = 0.15
    seed: int = 11
    policies: tuple = field(default_factory=lambda: ("prefer-positive", "prefer-negative", "random"))


def from_cli(cls, argv=None, description=""):
    """Build ``cls`` from defaults overridden by ``--field value`` flags."""
    default = cls()
    ap = argparse.ArgumentParser(description=description)
    for f in fields(cls):
        val = getattr(default, f.name)
        flag = "--" + f.name.replace("_", "-")
        if isinstance(val, bool):
            ap.add_argument(flag, type=lambda s: s.lower() in ("1", "true", "yes"), default=val)
        elif isinstance(val, tuple):
            kind = type(val[0]) if val else str
            ap.add_argument(flag, type=kind, nargs="+", default=val)
        else:
            ap.add_argument(flag, type=type(val), default=val)
    ns = ap.parse_args(argv)
    return cls(**{f.name: tuple(v) if isinstance(v, list) else v for f in fields(cls)
                  for v in [getattr(ns, f.name)]})
