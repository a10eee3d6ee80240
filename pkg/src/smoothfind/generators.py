"""Adversarial input families from the lower-bound constructions, plus baselines.

All families except ``pp-lower`` produce values in [0, 1].  Fractional
lengths are rounded and clamped into a valid range.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ContractViolation
from .perturbation import _source


def _ceil(x: float) -> int:
    # e.g. 25 * sqrt((14/25)**2) == 14.000000000000002; keep ceil from overshooting
    return math.ceil(round(x, 9))


def gen_general_lower(n: int) -> np.ndarray:
    """Ramp ``i/n`` over the first half, then all ones."""
    if n < 2:
        raise ContractViolation("general-lower needs n >= 2")
    half = (n + 1) // 2
    return np.concatenate([np.arange(1, half + 1) / n, np.ones(n - half)])


def gen_median_lower_small_d(n: int, d: float) -> np.ndarray:
    """``a`` ramp values followed by ``b = ceil(n*sqrt(d/2))`` ones.

    The ones are numerous enough that the median lands among them.
    """
    if not 0.5 <= d < 2.0:
        raise ContractViolation(f"median-lower-small-d needs 1/2 <= d < 2, got {d}")
    if n < 1:
        raise ContractViolation("n must be positive")
    b = min(_ceil(n * math.sqrt(d / 2.0)), n)
    a = n - b
    return np.concatenate([np.arange(1, a + 1) / n, np.ones(b)])


def gen_median_lower_d2(n: int) -> np.ndarray:
    if n < 2:
        raise ContractViolation("median-lower-d2 needs n >= 2")
    zeros = min(_ceil(n**0.25), n - 1)
    return np.concatenate([np.zeros(zeros), np.ones(n - zeros)])


def gen_scan_lower(n: int) -> np.ndarray:
    """Palindromic ramp peaking at a doubled 1/2."""
    if n < 4 or n % 2:
        raise ContractViolation(f"scan-lower needs even n >= 4, got {n}")
    up = np.arange(1, n // 2) / n
    return np.concatenate([up, [0.5, 0.5], up[::-1]])


def gen_m3_lower(n: int) -> np.ndarray:
    """Tent on the outer thirds, ones on the middle third.

    Uses 0-based ``i`` in ``min(i/n, (n-1-i)/n)`` so the tent is symmetric
    and nonnegative.
    """
    if n < 3:
        raise ContractViolation("m3-lower needs n >= 3")
    third = max(1, round(n / 3))
    i = np.arange(n)
    values = np.minimum(i / n, (n - 1 - i) / n)
    values[third : n - third] = 1.0
    return values


def gen_pp_lower(n: int, p: float) -> np.ndarray:
    """Permutation of -m..m (n = 2m+1) whose median 0 is placed last."""
    if n < 3 or n % 2 == 0:
        raise ContractViolation(f"pp-lower needs odd n >= 3, got {n}")
    if not 0.0 < p <= 1.0:
        raise ContractViolation(f"pp-lower needs 0 < p <= 1, got {p}")
    m = (n - 1) // 2
    q = min(max(round((m / p) ** 0.25), 1), m)
    return np.concatenate(
        [np.arange(-q, 0), np.arange(-m, -q), np.arange(1, m + 1), [0]]
    ).astype(np.float64)


def gen_sorted(n: int) -> np.ndarray:
    if n < 1:
        raise ContractViolation("n must be positive")
    return np.arange(1, n + 1) / n


def gen_uniform_random(n: int, rng) -> np.ndarray:
    if n < 1:
        raise ContractViolation("n must be positive")
    return np.asarray(_source(rng).random(n), dtype=np.float64)


# CLI name -> builder(n, param, rng); param is d(n) or p where needed
FAMILIES = {
    "general-lower": lambda n, param, rng: gen_general_lower(n),
    "median-lower-small-d": lambda n, param, rng: gen_median_lower_small_d(n, param),
    "median-lower-d2": lambda n, param, rng: gen_median_lower_d2(n),
    "scan-lower": lambda n, param, rng: gen_scan_lower(n),
    "m3-lower": lambda n, param, rng: gen_m3_lower(n),
    "pp-lower": lambda n, param, rng: gen_pp_lower(n, param),
    "sorted": lambda n, param, rng: gen_sorted(n),
    "uniform-random": lambda n, param, rng: gen_uniform_random(n, rng),
}


def generate(family: str, n: int, param=None, rng=None) -> np.ndarray:
    try:
        builder = FAMILIES[family]
    except KeyError:
        raise ContractViolation(f"unknown generator family {family!r}") from None
    return builder(n, param, rng)
