"""Aggregate metrics over trial records."""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Iterable, Sequence

from ..resonator import max_iters_for
from .records import FIELDS, TrialRecord


def estimate_success_rate(records: Sequence[TrialRecord]) -> float:
    if not records:
        raise ValueError("no records")
    return sum(r.success for r in records) / len(records)


def complexity(records: Sequence[TrialRecord]) -> float:
    """Mean iteration count divided by the success rate; inf if nothing succeeded."""
    if not records:
        raise ValueError("no records")
    p = estimate_success_rate(records)
    if p == 0:
        return math.inf
    return (sum(r.iterations for r in records) / len(records)) / p


def cap_hit_rate(records: Sequence[TrialRecord]) -> float:
    """Fraction of trials stopped by the iteration cap rather than a fixed point."""
    if not records:
        raise ValueError("no records")
    return sum((not r.converged) and r.iterations == max_iters_for(r.M) for r in records) / len(records)


METRICS = {
    "accuracy": lambda rs: sum(r.accuracy for r in rs) / len(rs),
    "iterations": lambda rs: sum(r.iterations for r in rs) / len(rs),
    "success": estimate_success_rate,
    "converged": lambda rs: sum(r.converged for r in rs) / len(rs),
    "complexity": complexity,
    "cap_hit": cap_hit_rate,
}


def group(records: Iterable[TrialRecord], by: Sequence[str]) -> dict[tuple, list[TrialRecord]]:
    for f in by:
        if f not in FIELDS:
            raise ValueError(f"unknown record field {f!r}")
    out: dict[tuple, list[TrialRecord]] = defaultdict(list)
    for r in records:
        out[tuple(getattr(r, f) for f in by)].append(r)
    return dict(out)


def aggregate(records: Iterable[TrialRecord], by: Sequence[str], metric: str) -> dict[tuple, float]:
    """``metric`` per distinct value of the ``by`` fields, keys in sorted order."""
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {sorted(METRICS)}")
    groups = group(records, by)
    return {key: METRICS[metric](groups[key]) for key in sorted(groups)}
