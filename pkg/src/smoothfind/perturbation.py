"""Additive uniform noise, partial permutations and seeded RNG streams."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import as_sequence
from .errors import ContractViolation

_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    """A reproducible random stream keyed by ``(master_seed, stream_index)``."""

    master_seed: int
    stream_index: int

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence([self.master_seed & _U64, self.stream_index])
        return np.random.Generator(np.random.PCG64(seq))


def derive_stream(master_seed: int, trial_index: int) -> RngStream:
    if trial_index < 0:
        raise ContractViolation("stream index must be nonnegative")
    return RngStream(int(master_seed), int(trial_index))


def trial_stream_index(n: int, trial: int) -> int:
    """Stream index owned by trial ``trial`` at grid point ``n``."""
    return (int(n) << 32) | int(trial)


def _source(rng):
    # anything exposing random(size) and permutation(m) works, which lets
    # tests inject deterministic noise
    return rng.generator() if isinstance(rng, RngStream) else rng


def perturb_additive(seq: Sequence[float], d: float, rng) -> np.ndarray:
    """Add independent uniform [0, d] noise to every entry."""
    values = as_sequence(seq)
    if not d > 0:
        raise ContractViolation(f"noise magnitude must be positive, got {d}")
    if values.size and (values.min() < 0.0 or values.max() > 1.0):
        warnings.warn("additive model expects values in [0, 1]", stacklevel=2)
    noise = np.asarray(_source(rng).random(values.shape[0]), dtype=np.float64)
    return values + d * noise


def perturb_partial(seq: Sequence[float], p: float, rng) -> np.ndarray:
    """Mark each position with probability p and shuffle the marked values."""
    values = as_sequence(seq)
    if not 0.0 <= p <= 1.0:
        raise ContractViolation(f"marking probability must lie in [0, 1], got {p}")
    src = _source(rng)
    marked = np.flatnonzero(np.asarray(src.random(values.shape[0])) < p)
    out = values.copy()
    if marked.size > 1:
        out[marked] = values[marked[np.asarray(src.permutation(marked.size))]]
    return out


@dataclass(frozen=True)
class AdditiveUniform:
    """Uniform [0, d(n)] noise with d(n) = c * n**alpha."""

    c: float
    alpha: float = 0.0
    name = "additive"

    def __post_init__(self):
        if not self.c > 0:
            raise ContractViolation(f"noise scale must be positive, got {self.c}")

    def d(self, n: int) -> float:
        return float(self.c * float(n) ** self.alpha)

    def param(self, n: int) -> float:
        return self.d(n)

    def apply(self, seq, rng, n: int) -> np.ndarray:
        return perturb_additive(seq, self.d(n), rng)


@dataclass(frozen=True)
class PartialPermutation:
    p: float
    name = "partial"

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ContractViolation(f"marking probability must lie in [0, 1], got {self.p}")

    def param(self, n: int) -> float:
        return float(self.p)

    def apply(self, seq, rng, n: int) -> np.ndarray:
        return perturb_partial(seq, self.p, rng)


@dataclass(frozen=True)
class NoPerturbation:
    name = "none"

    def param(self, n: int) -> None:
        return None

    def apply(self, seq, rng, n: int) -> np.ndarray:
        return as_sequence(seq)
