"""Resonator networks for factorizing bound hypervectors.

Four update rules are provided. The original rules project the unbound
estimate through ``X X^T`` and squash it (sign for bipolar codebooks, unit
phase for FHRR). The attention rules replace the projection with a softmax
over codebook similarities, i.e. a modern Hopfield retrieval step, so each
estimate is a convex combination of codebook rows.

All factors are updated simultaneously: every unbinding in a sweep reads the
previous sweep's estimates only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .hdc import DEFAULT_INVERSE_EPS, Codebook, Kind, inverse, kind_of

_ZERO_MODULUS = 1e-12


class UpdateRule(str, enum.Enum):
    ORIGINAL_BIPOLAR = "original-bipolar"
    ORIGINAL_FHRR = "original-fhrr"
    ATTENTION_BIPOLAR = "attention-bipolar"
    ATTENTION_FHRR = "attention-fhrr"

    @classmethod
    def from_parts(cls, family: str, kind: Kind | str) -> "UpdateRule":
        return cls(f"{family}-{Kind(kind).value}")

    @property
    def family(self) -> str:
        return self.value.split("-")[0]

    @property
    def kind(self) -> Kind:
        return Kind(self.value.split("-")[1])

    @property
    def is_attention(self) -> bool:
        return self.family == "attention"


class StopReason(str, enum.Enum):
    FIXED_POINT = "fixed-point"
    ITERATION_CAP = "iteration-cap"


@dataclass(frozen=True)
class ResonatorConfig:
    update_rule: UpdateRule
    beta: float = 250.0
    max_iters: int = 100
    conv_tol: float = 1e-4
    inverse_eps: float = DEFAULT_INVERSE_EPS
    # "clamped" reciprocal or phase-only "conjugate" for unbinding estimates
    inverse_mode: str = "conjugate"

    def __post_init__(self):
        object.__setattr__(self, "update_rule", UpdateRule(self.update_rule))
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ValueError(f"max_iters must be a positive integer, got {self.max_iters}")
        if not self.conv_tol > 0:
            raise ValueError(f"conv_tol must be positive, got {self.conv_tol}")
        if not self.inverse_eps > 0:
            raise ValueError(f"inverse_eps must be positive, got {self.inverse_eps}")
        if self.inverse_mode not in ("clamped", "conjugate"):
            raise ValueError(f"unknown inverse_mode {self.inverse_mode!r}")


@dataclass
class FactorizationResult:
    estimates: list[np.ndarray]
    indices: tuple[int, ...]
    iterations: int
    converged: bool
    stop_reason: StopReason


def max_iters_for(M: int) -> int:
    """Iteration cap of 0.001 * M, at least one sweep."""
    if M < 1:
        raise ValueError(f"search space size must be >= 1, got {M}")
    return max(1, math.floor(M / 1000))


def _check_codebooks(cbs: Sequence[Codebook], s: np.ndarray | None = None) -> None:
    if len(cbs) < 1:
        raise ValueError("need at least one codebook")
    kind, dim = cbs[0].kind, cbs[0].dim
    for cb in cbs[1:]:
        if cb.kind is not kind or cb.dim != dim:
            raise ValueError("all codebooks must share kind and dimension")
    if s is not None:
        if s.ndim != 1 or s.shape[0] != dim:
            raise ValueError(f"composite has shape {s.shape}, codebooks have dim {dim}")
        if kind_of(s) is not kind:
            raise ValueError(f"composite kind {kind_of(s).value} does not match codebooks ({kind.value})")


def init_estimates(cbs: Sequence[Codebook]) -> list[np.ndarray]:
    """Start every factor at the mean of its codebook."""
    _check_codebooks(cbs)
    return [cb.vectors.mean(axis=0) for cb in cbs]


def _unbind_all(s, estimates, invert, eps, mode):
    """``s * prod_{i != j} inv(est_i)`` for every j, via prefix/suffix products."""
    F = len(estimates)
    if F == 1:
        return [s]
    factors = [inverse(e, eps, mode) for e in estimates] if invert else estimates
    prefix = [None] * F
    acc = s
    for j in range(F):
        prefix[j] = acc
        acc = acc * factors[j]
    out = [None] * F
    acc = None
    for j in range(F - 1, -1, -1):
        out[j] = prefix[j] if acc is None else prefix[j] * acc
        acc = factors[j] if acc is None else acc * factors[j]
    return out


def unbind_others(s: np.ndarray, estimates: Sequence[np.ndarray], j: int,
                  inverse_eps: float = DEFAULT_INVERSE_EPS, invert: bool = True,
                  inverse_mode: str = "conjugate") -> np.ndarray:
    """Remove every factor except ``j`` from ``s``.

    With ``invert=False`` the estimates are multiplied in directly, which is
    exact for bipolar states (self-inverse) and is what the original bipolar
    rule uses.
    """
    F = len(estimates)
    if not 0 <= j < F:
        raise ValueError(f"factor index {j} out of range for {F} factors")
    out = s
    for i, e in enumerate(estimates):
        if i != j:
            out = out * (inverse(e, inverse_eps, inverse_mode) if invert else e)
    return out


def softmax(scores: np.ndarray, beta: float) -> np.ndarray:
    z = beta * scores
    z = z - z.max()
    w = np.exp(z)
    return w / w.sum()


def _project_original(X, Xh, u):
    if Xh is None:
        v = (X @ u) @ X
        return np.where(v >= 0, 1.0, -1.0)
    v = (Xh @ u).real @ X
    mod = np.abs(v)
    return np.where(mod < _ZERO_MODULUS, 1.0 + 0j, v / np.where(mod < _ZERO_MODULUS, 1.0, mod))


def _project_attention(X, Xh, u, beta):
    D = X.shape[1]
    scores = ((Xh @ u).real if Xh is not None else X @ u) / D
    return softmax(scores, beta) @ X


class _Prepared:
    """Codebook matrices plus cached conjugates for the sweep loop."""

    def __init__(self, cbs: Sequence[Codebook]):
        self.X = [cb.vectors for cb in cbs]
        self.Xh = [cb.vectors.conj() for cb in cbs] if cbs[0].kind is Kind.COMPLEX else [None] * len(cbs)

    def sweep(self, s, estimates, rule: UpdateRule, beta, eps, mode):
        if rule is UpdateRule.ORIGINAL_BIPOLAR:
            unbound = _unbind_all(s, estimates, False, eps, mode)
        else:
            unbound = _unbind_all(s, estimates, True, eps, mode)
        if rule.is_attention:
            return [_project_attention(X, Xh, u, beta) for X, Xh, u in zip(self.X, self.Xh, unbound)]
        return [_project_original(X, Xh, u) for X, Xh, u in zip(self.X, self.Xh, unbound)]


def step_original(cbs: Sequence[Codebook], s: np.ndarray, estimates: Sequence[np.ndarray],
                  inverse_eps: float = DEFAULT_INVERSE_EPS,
                  inverse_mode: str = "conjugate") -> list[np.ndarray]:
    """One simultaneous sweep of the sign / phase-normalized projection rule."""
    _check_codebooks(cbs, s)
    if len(estimates) != len(cbs):
        raise ValueError("need one estimate per codebook")
    rule = UpdateRule.from_parts("original", cbs[0].kind)
    return _Prepared(cbs).sweep(s, list(estimates), rule, 1.0, inverse_eps, inverse_mode)


def step_attention(cbs: Sequence[Codebook], s: np.ndarray, estimates: Sequence[np.ndarray],
                   beta: float, inverse_eps: float = DEFAULT_INVERSE_EPS,
                   inverse_mode: str = "conjugate") -> list[np.ndarray]:
    """One simultaneous sweep of the softmax (attention) rule."""
    _check_codebooks(cbs, s)
    if len(estimates) != len(cbs):
        raise ValueError("need one estimate per codebook")
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    rule = UpdateRule.from_parts("attention", cbs[0].kind)
    return _Prepared(cbs).sweep(s, list(estimates), rule, beta, inverse_eps, inverse_mode)


def has_converged(prev: Sequence[np.ndarray], nxt: Sequence[np.ndarray], tol: float) -> bool:
    """True iff every factor moved by less than ``tol`` in every component."""
    return all(np.max(np.abs(a - b)) < tol for a, b in zip(prev, nxt))


def factorize(s: np.ndarray, cbs: Sequence[Codebook], cfg: ResonatorConfig) -> FactorizationResult:
    _check_codebooks(cbs, s)
    rule = cfg.update_rule
    if rule.kind is not cbs[0].kind:
        raise ValueError(f"rule {rule.value} cannot run on {cbs[0].kind.value} codebooks")
    prep = _Prepared(cbs)
    est = init_estimates(cbs)
    converged = False
    it = 0
    while it < cfg.max_iters:
        it += 1
        nxt = prep.sweep(s, est, rule, cfg.beta, cfg.inverse_eps, cfg.inverse_mode)
        converged = has_converged(est, nxt, cfg.conv_tol)
        est = nxt
        if converged:
            break
    indices = tuple(int(np.argmax(_scores(X, Xh, e))) for X, Xh, e in zip(prep.X, prep.Xh, est))
    return FactorizationResult(
        estimates=est,
        indices=indices,
        iterations=it,
        converged=converged,
        stop_reason=StopReason.FIXED_POINT if converged else StopReason.ITERATION_CAP,
    )


def _scores(X, Xh, v):
    return (Xh @ v).real if Xh is not None else X @ v
