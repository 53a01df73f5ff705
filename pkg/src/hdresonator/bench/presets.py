"""Named sweeps behind the ``experiment`` subcommands."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .experiment import ExperimentSpec
from .metrics import complexity, estimate_success_rate, group
from .records import TrialRecord

METHODS = (("attention", "bipolar"), ("attention", "fhrr"), ("original", "bipolar"), ("original", "fhrr"))


@dataclass(frozen=True)
class Preset:
    """Sweep defaults plus how to plot the result."""

    kinds: tuple[str, ...]
    rules: tuple[str, ...]
    dims: tuple[int, ...]
    factors: tuple[int, ...]
    x_axis: str
    y_axis: str
    group_by: tuple[str, ...]
    search_space_sizes: tuple[int, ...] = ()
    codebook_sizes: tuple[int, ...] = ()
    betas: tuple[float, ...] = (250.0,)
    sigmas: tuple[float, ...] = (0.0,)
    ks: tuple[int, ...] = (1,)


PRESETS = {
    "acc-vs-m": Preset(("bipolar",), ("original", "attention"), (1000, 1500), (2, 3, 4),
                       "M", "accuracy", ("rule", "F", "D"),
                       search_space_sizes=(1000, 2000, 5000, 10000, 20000)),
    "iters-vs-m": Preset(("bipolar",), ("original", "attention"), (1000, 1500), (2, 3, 4),
                         "M", "iterations", ("rule", "F", "D"),
                         search_space_sizes=(1000, 2000, 5000, 10000, 20000)),
    "fhrr-vs-bipolar": Preset(("bipolar", "fhrr"), ("attention",), (500, 1000, 1500), (3,),
                              "M", "accuracy", ("kind", "D"),
                              search_space_sizes=(1000, 2000, 5000, 10000, 20000)),
    "beta-sweep": Preset(("bipolar",), ("attention",), (1000,), (3,),
                         "beta", "accuracy", ("D",),
                         search_space_sizes=(5000,), betas=(10.0, 25.0, 50.0, 100.0, 250.0, 500.0)),
    "noise-sweep": Preset(("bipolar", "fhrr"), ("original", "attention"), (1500,), (4,),
                          "sigma", "accuracy", ("kind", "rule"),
                          codebook_sizes=(8,), sigmas=tuple(x / 4 for x in range(9))),
    "bundle-sweep": Preset(("bipolar", "fhrr"), ("original", "attention"), (1500,), (2, 4, 6),
                           "k", "success", ("kind", "rule", "F"),
                           search_space_sizes=(5000,), ks=tuple(range(1, 10))),
    "tables": Preset(("bipolar", "fhrr"), ("original", "attention"), (1500,), (2, 4, 6),
                     "k", "success", ("kind", "rule", "F"),
                     search_space_sizes=(5000,), ks=(1, 3, 9)),
}


def build_specs(name: str, *, trials: int = 1000, seed: int = 0,
                kinds: Sequence[str] | None = None, rules: Sequence[str] | None = None,
                dims=None, factors=None, search_space_sizes=None, codebook_sizes=None,
                betas=None, sigmas=None, ks=None, success_on: str = "first",
                inverse_mode: str = "conjugate") -> list[ExperimentSpec]:
    """One ExperimentSpec per (kind, rule) pair; unset arguments take preset defaults."""
    p = PRESETS[name]
    if codebook_sizes:
        sizes = dict(codebook_sizes=tuple(codebook_sizes))
    elif search_space_sizes:
        sizes = dict(search_space_sizes=tuple(search_space_sizes))
    elif p.codebook_sizes:
        sizes = dict(codebook_sizes=p.codebook_sizes)
    else:
        sizes = dict(search_space_sizes=p.search_space_sizes)
    specs = []
    for kind, rule in itertools.product(kinds or p.kinds, rules or p.rules):
        specs.append(ExperimentSpec(
            name=name,
            vector_kind=kind,
            update_rule=rule,
            dims=tuple(dims or p.dims),
            factors=tuple(factors or p.factors),
            betas=tuple(betas or p.betas),
            trials=trials,
            sigma_list=tuple(sigmas if sigmas is not None else p.sigmas),
            k_list=tuple(ks or p.ks),
            master_seed=seed,
            success_on=success_on,
            inverse_mode=inverse_mode,
            **sizes,
        ))
    return specs


def method_label(rule: str, kind: str) -> str:
    return f"{rule.capitalize()} {'FHRR' if kind == 'fhrr' else 'Bipolar'}"


def summary_tables(records: Sequence[TrialRecord]) -> str:
    """Success probability and complexity per method and (F, k), as text."""
    groups = group(records, ("rule", "kind", "F", "k"))
    cols = sorted({(F, k) for (_, _, F, k) in groups})
    methods = [(r, kd) for r, kd in METHODS if any(g[:2] == (r, kd) for g in groups)]
    out = []
    for title, fn, fmt in (("P_success", estimate_success_rate, "{:.3f}"),
                           ("Complexity", complexity, "{:.2f}")):
        head = f"{title:<18}" + "".join(f"{f'({F},{k})':>9}" for F, k in cols)
        out.append(head)
        for rule, kind in methods:
            cells = []
            for F, k in cols:
                rs = groups.get((rule, kind, F, k))
                if not rs:
                    cells.append(f"{'-':>9}")
                    continue
                v = fn(rs)
                cells.append(f"{'inf' if math.isinf(v) else fmt.format(v):>9}")
            out.append(f"{method_label(rule, kind):<18}" + "".join(cells))
        out.append("")
    return "\n".join(out)
