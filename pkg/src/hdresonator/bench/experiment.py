"""Monte Carlo sweeps over resonator configurations.

Every trial draws its problem instance (codebooks, ground truth, noise) from
a seed derived from the master seed and the instance parameters only. Rules
and beta values are left out of the derivation on purpose, so competing
update rules are scored on identical problems.
"""

from __future__ import annotations

import itertools
import time
import zlib
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from ..decomposer import BundleSpec, add_noise, decode_bundle, encode_bundle, is_success
from ..hdc import Kind, make_codebook
from ..resonator import FactorizationResult, ResonatorConfig, UpdateRule, factorize, max_iters_for
from .records import StreamingSink, TrialRecord

RULE_FAMILIES = ("original", "attention")


@dataclass(frozen=True)
class ExperimentSpec:
    """One sweep: the Cartesian product of the listed values times ``trials``.

    Give either ``codebook_sizes`` (n) or ``search_space_sizes`` (M, with
    n = round(M ** (1/F)) per factor count).

    ``success_on="first"`` judges a bundle trial by the first resonator run
    on the full bundle; ``"any"`` runs the complete reasoning-out decode and
    accepts a hit from any of the k runs.
    """

    name: str
    vector_kind: Kind
    update_rule: str
    dims: tuple[int, ...]
    factors: tuple[int, ...]
    codebook_sizes: tuple[int, ...] = ()
    search_space_sizes: tuple[int, ...] = ()
    betas: tuple[float, ...] = (250.0,)
    trials: int = 1000
    sigma_list: tuple[float, ...] = (0.0,)
    k_list: tuple[int, ...] = (1,)
    master_seed: int = 0
    success_on: str = "first"
    inverse_mode: str = "conjugate"

    def __post_init__(self):
        object.__setattr__(self, "vector_kind", Kind(self.vector_kind))
        if self.update_rule not in RULE_FAMILIES:
            raise ValueError(f"update_rule must be one of {RULE_FAMILIES}, got {self.update_rule!r}")
        for name in ("dims", "factors", "codebook_sizes", "search_space_sizes",
                     "betas", "sigma_list", "k_list"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if bool(self.codebook_sizes) == bool(self.search_space_sizes):
            raise ValueError("give exactly one of codebook_sizes or search_space_sizes")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        positive = self.dims + self.factors + self.codebook_sizes + self.search_space_sizes + self.betas + self.k_list
        if not positive or any(v <= 0 for v in positive) or not self.dims or not self.factors:
            raise ValueError("swept values must be positive and non-empty")
        if not self.betas or not self.k_list or not self.sigma_list:
            raise ValueError("betas, sigma_list and k_list must be non-empty")
        if any(s < 0 for s in self.sigma_list):
            raise ValueError("sigma values must be non-negative")
        if self.success_on not in ("first", "any"):
            raise ValueError(f"success_on must be 'first' or 'any', got {self.success_on!r}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in 64 bits")

    @property
    def rule(self) -> UpdateRule:
        return UpdateRule.from_parts(self.update_rule, self.vector_kind)


@dataclass(frozen=True)
class SpecPoint:
    kind: Kind
    rule: str
    D: int
    F: int
    n: int
    beta: float
    sigma: float
    k: int

    @property
    def M(self) -> int:
        return self.n ** self.F


def codebook_size_for(M: int, F: int) -> int:
    return max(1, round(M ** (1.0 / F)))


def spec_points(spec: ExperimentSpec) -> list[SpecPoint]:
    out = []
    for D, F in itertools.product(spec.dims, spec.factors):
        if spec.codebook_sizes:
            sizes = list(spec.codebook_sizes)
        else:
            sizes = [codebook_size_for(M, F) for M in spec.search_space_sizes]
        for n, beta, sigma, k in itertools.product(sizes, spec.betas, spec.sigma_list, spec.k_list):
            out.append(SpecPoint(spec.vector_kind, spec.update_rule, D, F, n, float(beta), float(sigma), k))
    return out


def _instance_seed(master_seed: int, point: SpecPoint, trial: int) -> np.random.SeedSequence:
    key = (
        zlib.crc32(point.kind.value.encode()),
        point.D, point.F, point.n, point.k,
        int(round(point.sigma * 1e6)),
        trial,
    )
    return np.random.SeedSequence(master_seed, spawn_key=key)


def accuracy(result: FactorizationResult | Sequence[int], truth: Sequence[int]) -> float:
    """Fraction of factors whose readout matches ``truth``."""
    indices = result.indices if isinstance(result, FactorizationResult) else tuple(result)
    if len(indices) != len(truth):
        raise ValueError(f"readout has {len(indices)} factors, truth has {len(truth)}")
    return sum(int(a) == int(b) for a, b in zip(indices, truth)) / len(truth)


def run_trial(spec: ExperimentSpec, point: SpecPoint, trial: int) -> TrialRecord:
    t0 = time.perf_counter()
    cb_ss, truth_ss, noise_ss = _instance_seed(spec.master_seed, point, trial).spawn(3)
    cb_rng = np.random.default_rng(cb_ss)
    cbs = [make_codebook(point.n, point.D, point.kind, cb_rng) for _ in range(point.F)]
    truth = BundleSpec.random([point.n] * point.F, point.k, np.random.default_rng(truth_ss))
    s = add_noise(encode_bundle(cbs, truth), point.sigma, np.random.default_rng(noise_ss))

    cfg = ResonatorConfig(
        UpdateRule.from_parts(point.rule, point.kind),
        beta=point.beta,
        max_iters=max_iters_for(point.M),
        inverse_mode=spec.inverse_mode,
    )
    if spec.success_on == "first":
        results = [factorize(s, cbs, cfg)]
    else:
        results = decode_bundle(s, cbs, point.k, cfg)

    decoded = [r.indices for r in results]
    success = is_success(decoded, truth)
    # report the run that hit a bundled term, else the first run
    judged = next((r for r in results if r.indices in truth.tuples), results[0])
    acc = max(accuracy(judged, t) for t in truth.tuples)
    return TrialRecord(
        experiment=spec.name,
        trial=trial,
        kind=point.kind.value,
        rule=point.rule,
        D=point.D,
        F=point.F,
        n=point.n,
        M=point.M,
        beta=point.beta,
        sigma=point.sigma,
        k=point.k,
        accuracy=acc,
        iterations=judged.iterations,
        converged=judged.converged,
        success=success,
        wall_time=time.perf_counter() - t0,
    )


def _run_chunk(spec: ExperimentSpec, order: int, point: SpecPoint, trials: range):
    return order, [run_trial(spec, point, t) for t in trials]


def _chunks(specs: Sequence[ExperimentSpec], chunk: int) -> Iterator[tuple]:
    order = 0
    for spec in specs:
        for point in spec_points(spec):
            for lo in range(0, spec.trials, chunk):
                yield spec, order, point, range(lo, min(lo + chunk, spec.trials))
            order += 1


def run_experiment(spec: ExperimentSpec | Sequence[ExperimentSpec], workers: int = 1,
                   sink: StreamingSink | None = None, chunk: int = 50,
                   progress: Callable[[int, int], None] | None = None) -> list[TrialRecord]:
    """Run every point x trial of one or more specs.

    Records are streamed to ``sink`` as chunks complete; the returned list is
    sorted by (spec point, trial) whatever the execution order was.
    """
    specs = [spec] if isinstance(spec, ExperimentSpec) else list(spec)
    tasks = list(_chunks(specs, chunk))
    total = sum(len(t[3]) for t in tasks)
    done = 0
    collected: list[tuple[int, TrialRecord]] = []

    def accept(order, recs):
        nonlocal done
        collected.extend((order, r) for r in recs)
        if sink is not None:
            sink.write(recs)
        done += len(recs)
        if progress:
            progress(done, total)

    if workers <= 1:
        for task in tasks:
            accept(*_run_chunk(*task))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_chunk, *task) for task in tasks]
            for fut in as_completed(futures):
                accept(*fut.result())

    collected.sort(key=lambda p: (p[0], p[1].trial))
    records = [r for _, r in collected]
    if sink is not None:
        sink.finalize(records)
    return records
