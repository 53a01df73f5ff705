"""Bundles of bound tuples, additive noise, and greedy "reasoning out"."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .hdc import Codebook
from .resonator import FactorizationResult, ResonatorConfig, factorize


@dataclass(frozen=True)
class BundleSpec:
    """Ground-truth index tuples, one per bundled term."""

    tuples: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        tuples = tuple(tuple(int(i) for i in t) for t in self.tuples)
        if not tuples:
            raise ValueError("a bundle needs at least one tuple")
        if len({len(t) for t in tuples}) != 1:
            raise ValueError("all tuples must have the same number of factors")
        if len(set(tuples)) != len(tuples):
            raise ValueError("bundle tuples must be pairwise distinct")
        object.__setattr__(self, "tuples", tuples)

    @property
    def k(self) -> int:
        return len(self.tuples)

    @property
    def F(self) -> int:
        return len(self.tuples[0])

    @classmethod
    def random(cls, sizes: Sequence[int], k: int, rng: np.random.Generator) -> "BundleSpec":
        """Draw ``k`` distinct tuples uniformly from the product of ``sizes``."""
        total = int(np.prod(sizes, dtype=object))
        if not 1 <= k <= total:
            raise ValueError(f"cannot draw {k} distinct tuples from a space of {total}")
        seen: list[tuple[int, ...]] = []
        while len(seen) < k:
            t = tuple(int(rng.integers(0, n)) for n in sizes)
            if t not in seen:
                seen.append(t)
        return cls(tuple(seen))


@dataclass(frozen=True)
class NoiseSpec:
    sigma: float = 0.0

    def __post_init__(self):
        if not self.sigma >= 0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")


def bound_tuple(cbs: Sequence[Codebook], indices: Sequence[int]) -> np.ndarray:
    if len(indices) != len(cbs):
        raise ValueError(f"tuple has {len(indices)} indices for {len(cbs)} codebooks")
    out = None
    for cb, i in zip(cbs, indices):
        if not 0 <= i < cb.n:
            raise ValueError(f"index {i} out of range for codebook of size {cb.n}")
        out = cb[i].copy() if out is None else out * cb[i]
    return out


def encode_bundle(cbs: Sequence[Codebook], spec: BundleSpec) -> np.ndarray:
    """Sum of the bound codebook rows of every tuple, unnormalized."""
    terms = [bound_tuple(cbs, t) for t in spec.tuples]
    return np.sum(terms, axis=0)


def add_noise(s: np.ndarray, noise: NoiseSpec | float, rng: np.random.Generator) -> np.ndarray:
    """Add i.i.d. Gaussian noise with per-component E|eps|^2 = sigma^2.

    Complex vectors get N(0, sigma^2/2) on each of the real and imaginary parts.
    """
    if not isinstance(noise, NoiseSpec):
        noise = NoiseSpec(float(noise))
    sigma = noise.sigma
    if sigma == 0:
        return s
    if np.iscomplexobj(s):
        scale = sigma / np.sqrt(2.0)
        return s + scale * (rng.standard_normal(s.shape) + 1j * rng.standard_normal(s.shape))
    return s + sigma * rng.standard_normal(s.shape)


def decode_bundle(s: np.ndarray, cbs: Sequence[Codebook], k: int,
                  cfg: ResonatorConfig) -> list[FactorizationResult]:
    """Factorize, subtract the clean decoded term, and repeat ``k`` times.

    Subtraction is unconditional: a wrong decode still removes its
    reconstruction from the residual.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    residual = s
    results = []
    for _ in range(k):
        res = factorize(residual, cbs, cfg)
        results.append(res)
        if len(results) < k:
            residual = residual - bound_tuple(cbs, res.indices)
    return results


def is_success(decoded: Sequence[Sequence[int]], truth: BundleSpec) -> bool:
    """At least one decoded tuple matches some ground-truth tuple exactly."""
    truth_set = set(truth.tuples)
    return any(tuple(int(i) for i in t) in truth_set for t in decoded)


def count_matches(decoded: Sequence[Sequence[int]], truth: BundleSpec) -> int:
    """Number of decoded tuples matched to distinct truth tuples."""
    remaining = list(truth.tuples)
    hits = 0
    for t in decoded:
        t = tuple(int(i) for i in t)
        if t in remaining:
            remaining.remove(t)
            hits += 1
    return hits
