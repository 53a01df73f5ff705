"""Hypervector algebra: sampling, similarity, binding, bundling, permutation.

Hypervectors are plain 1-D numpy arrays. Real arrays belong to the bipolar
family (sampled vectors are exactly +/-1, bundles and means widen to arbitrary
reals); complex arrays are FHRR phasors or sums of them. Codebooks are
immutable ``n x D`` row-major matrices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

DEFAULT_INVERSE_EPS = 1e-6


class Kind(str, enum.Enum):
    BIPOLAR = "bipolar"
    COMPLEX = "fhrr"


def kind_of(v: np.ndarray) -> Kind:
    return Kind.COMPLEX if np.iscomplexobj(v) else Kind.BIPOLAR


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _check_dim(dim: int, name: str = "dim") -> None:
    if int(dim) != dim or dim < 1:
        raise ValueError(f"{name} must be a positive integer, got {dim!r}")


def _check_pair(a: np.ndarray, b: np.ndarray) -> None:
    if a.ndim != 1 or b.ndim != 1:
        raise ValueError("hypervectors must be 1-D arrays")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    if kind_of(a) is not kind_of(b):
        raise ValueError(f"kind mismatch: {kind_of(a).value} vs {kind_of(b).value}")


# -- sampling -----------------------------------------------------------------


def sample_bipolar(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random vector in {-1, +1}^dim."""
    _check_dim(dim)
    return rng.choice(np.array([-1.0, 1.0]), size=dim)


def sample_fhrr(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random phasor vector exp(i*m) with m ~ Unif[0, 2*pi)."""
    _check_dim(dim)
    return np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=dim))


def sample(kind: Kind, dim: int, rng: np.random.Generator) -> np.ndarray:
    return sample_fhrr(dim, rng) if Kind(kind) is Kind.COMPLEX else sample_bipolar(dim, rng)


# -- kernel-trick encoding ------------------------------------------------------


_DISTRIBUTIONS: dict[str, tuple[Callable[[np.random.Generator, tuple], np.ndarray], Callable]] = {
    # name -> (sampler for W entries, kernel K(delta) the similarity approximates)
    "normal": (
        lambda rng, shape: rng.standard_normal(shape),
        lambda delta: float(np.exp(-0.5 * np.dot(delta, delta))),
    ),
    "cauchy": (
        lambda rng, shape: rng.standard_cauchy(shape),
        lambda delta: float(np.exp(-np.sum(np.abs(delta)))),
    ),
}


@dataclass(frozen=True)
class FhrrEncoder:
    """Random Fourier feature encoder ``f -> exp(i W f)``.

    ``distribution`` names the law of the entries of W. The default standard
    normal corresponds to a unit-bandwidth Gaussian kernel; ``"cauchy"``
    (i.i.d. per input coordinate) gives a Laplacian kernel.
    """

    projection: np.ndarray = field(repr=False)
    distribution: str = "normal"

    def __post_init__(self):
        if self.projection.ndim != 2:
            raise ValueError("projection must be a D x d matrix")
        object.__setattr__(self, "projection", _frozen(np.asarray(self.projection, dtype=float)))

    @classmethod
    def random(cls, input_dim: int, dim: int, rng: np.random.Generator,
               distribution: str = "normal") -> "FhrrEncoder":
        _check_dim(input_dim, "input_dim")
        _check_dim(dim)
        if distribution not in _DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {distribution!r}; "
                             f"expected one of {sorted(_DISTRIBUTIONS)}")
        sampler, _ = _DISTRIBUTIONS[distribution]
        return cls(sampler(rng, (dim, input_dim)), distribution)

    @property
    def dim(self) -> int:
        return self.projection.shape[0]

    @property
    def input_dim(self) -> int:
        return self.projection.shape[1]

    def kernel(self, delta) -> float:
        """Closed-form kernel value that encoded similarities approximate."""
        return _DISTRIBUTIONS[self.distribution][1](np.atleast_1d(np.asarray(delta, dtype=float)))

    def encode(self, feature) -> np.ndarray:
        return encode_fhrr(self, feature)


def encode_fhrr(encoder: FhrrEncoder, feature) -> np.ndarray:
    f = np.atleast_1d(np.asarray(feature, dtype=float))
    if f.ndim != 1 or f.shape[0] != encoder.input_dim:
        raise ValueError(f"feature length {f.shape} does not match input_dim {encoder.input_dim}")
    return np.exp(1j * (encoder.projection @ f))


# -- algebra ----------------------------------------------------------------------


def similarity(a: np.ndarray, b: np.ndarray) -> float:
    """Re[a^H b] / D."""
    _check_pair(a, b)
    if np.iscomplexobj(a):
        return float(np.vdot(a, b).real) / a.shape[0]
    return float(np.dot(a, b)) / a.shape[0]


def bind(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    _check_pair(a, b)
    return a * b


def inverse(a: np.ndarray, eps: float = DEFAULT_INVERSE_EPS, mode: str = "clamped") -> np.ndarray:
    """Componentwise multiplicative inverse.

    ``mode="clamped"`` returns conj(z) / max(|z|^2, eps^2), so exact zeros map
    to zero and near-zero components cannot overflow. ``mode="conjugate"`` is
    the phase-only pseudo-inverse conj(z) (identity for real vectors).
    Bipolar inputs are returned unchanged under either mode.
    """
    a = np.asarray(a)
    if mode == "conjugate":
        return np.conj(a) if np.iscomplexobj(a) else a
    if mode != "clamped":
        raise ValueError(f"unknown inverse mode {mode!r}")
    if not np.iscomplexobj(a) and np.all(np.abs(a) == 1.0):
        return a
    sq = (a * np.conj(a)).real if np.iscomplexobj(a) else a * a
    return np.conj(a) / np.maximum(sq, eps * eps)


def bundle(vs: Sequence[np.ndarray]) -> np.ndarray:
    """Unnormalized componentwise sum."""
    vs = list(vs)
    if not vs:
        raise ValueError("cannot bundle an empty sequence")
    for v in vs[1:]:
        _check_pair(vs[0], v)
    return np.sum(vs, axis=0)


def permute(a: np.ndarray, shift: int) -> np.ndarray:
    return np.roll(a, shift)


# -- codebooks ----------------------------------------------------------------------


@dataclass(frozen=True)
class Codebook:
    """``n x D`` matrix whose row j is the hypervector of symbol j."""

    vectors: np.ndarray = field(repr=False)
    seed: int | None = None

    def __post_init__(self):
        v = np.asarray(self.vectors)
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise ValueError(f"codebook must be a non-empty 2-D matrix, got shape {v.shape}")
        if not np.iscomplexobj(v):
            v = v.astype(float, copy=False)
        object.__setattr__(self, "vectors", _frozen(v))

    @property
    def kind(self) -> Kind:
        return kind_of(self.vectors)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i) -> np.ndarray:
        return self.vectors[i]

    def scores(self, v: np.ndarray) -> np.ndarray:
        """Similarity of ``v`` to every row."""
        _check_pair(self.vectors[0], v)
        if np.iscomplexobj(self.vectors):
            return (self.vectors.conj() @ v).real / self.dim
        return self.vectors @ v / self.dim


def make_codebook(n: int, dim: int, kind: Kind | str, rng: np.random.Generator,
                  seed: int | None = None) -> Codebook:
    _check_dim(n, "n")
    _check_dim(dim)
    kind = Kind(kind)
    if kind is Kind.COMPLEX:
        rows = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=(n, dim)))
    else:
        rows = rng.choice(np.array([-1.0, 1.0]), size=(n, dim))
    return Codebook(rows, seed=seed)


def nearest(cb: Codebook, v: np.ndarray) -> tuple[int, float]:
    """Best-matching row; ties go to the lowest index."""
    s = cb.scores(v)
    i = int(np.argmax(s))
    return i, float(s[i])


def mean_vector(cb: Codebook) -> np.ndarray:
    return cb.vectors.mean(axis=0)
