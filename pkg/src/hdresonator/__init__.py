"""Vector symbolic architecture primitives and resonator-network factorization."""

from .hdc import (
    Codebook,
    FhrrEncoder,
    Kind,
    bind,
    bundle,
    encode_fhrr,
    inverse,
    make_codebook,
    mean_vector,
    nearest,
    permute,
    sample_bipolar,
    sample_fhrr,
    similarity,
)
from .resonator import (
    FactorizationResult,
    ResonatorConfig,
    StopReason,
    UpdateRule,
    factorize,
    max_iters_for,
)

__version__ = "0.1.0"
