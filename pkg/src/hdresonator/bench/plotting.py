"""Static SVG line charts of aggregated trial metrics."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .metrics import METRICS, aggregate  # noqa: E402
from .records import FIELDS, TrialRecord  # noqa: E402

_LABELS = {
    "M": r"search space size $M$",
    "beta": r"$\beta$",
    "sigma": r"noise $\sigma$",
    "k": r"bundle size $k$",
    "D": r"dimension $D$",
    "accuracy": "mean accuracy",
    "iterations": "mean iterations",
    "success": r"$P_{success}$",
    "complexity": "complexity",
    "converged": "converged fraction",
    "cap_hit": "cap-hit fraction",
}
_LOG_X = {"M"}


def emit_plot(records: Sequence[TrialRecord], x_axis: str, y_axis: str,
              group_by: Sequence[str], path, title: str | None = None) -> None:
    """Plot the mean of ``y_axis`` against ``x_axis``, one line per group.

    Output is byte-deterministic for a given input (fixed SVG id salt, no
    timestamp metadata).
    """
    if not records:
        raise ValueError("cannot plot an empty record list")
    if x_axis not in FIELDS:
        raise ValueError(f"unknown x-axis field {x_axis!r}")
    if y_axis not in METRICS:
        raise ValueError(f"unknown metric {y_axis!r}; expected one of {sorted(METRICS)}")
    for g in group_by:
        if g not in FIELDS:
            raise ValueError(f"unknown group-by field {g!r}")

    table = aggregate(records, list(group_by) + [x_axis], y_axis)
    series: dict[tuple, list[tuple]] = {}
    for key, value in table.items():
        series.setdefault(key[:-1], []).append((key[-1], value))

    with plt.rc_context({"svg.hashsalt": "hdresonator", "svg.fonttype": "path"}):
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        for i, (gkey, pts) in enumerate(sorted(series.items())):
            xs, ys = zip(*sorted(pts))
            label = ", ".join(f"{g}={v}" for g, v in zip(group_by, gkey)) or y_axis
            style = ":" if "attention" in gkey else "-"
            ax.plot(xs, ys, style, marker="o", markersize=3, color=f"C{i % 10}", label=label)
        if x_axis in _LOG_X and len({r.M for r in records}) > 1:
            ax.set_xscale("log")
        ax.set_xlabel(_LABELS.get(x_axis, x_axis))
        ax.set_ylabel(_LABELS.get(y_axis, y_axis))
        if title:
            ax.set_title(title)
        ax.grid(alpha=0.3)
        ax.legend(fontsize="small", frameon=False)
        fig.tight_layout()
        try:
            fig.savefig(Path(path), format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
