"""Brute-force references for the algorithms and the small-instance lemmas."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .core import PivotRule, as_sequence, hoare_find, hoare_find_trace, order_ranks
from .errors import ContractViolation

EXHAUSTIVE_MAX_N = 8


def kth_smallest_position(seq: Sequence[float], k: int) -> int:
    """1-based position of the k-th smallest element, by full sort."""
    values = as_sequence(seq)
    n = values.shape[0]
    if not 1 <= k <= n:
        raise ContractViolation(f"rank k={k} outside 1..{n}")
    keyed = sorted(zip(values.tolist(), range(1, n + 1)))
    return keyed[k - 1][1]


def kth_smallest_oracle(seq: Sequence[float], k: int) -> float:
    values = as_sequence(seq)
    return float(values[kth_smallest_position(values, k) - 1])


def _search_costs(ranks: np.ndarray, code: int) -> list[int]:
    return [int(_kernels.find(ranks.copy(), k, code)[1]) for k in range(1, ranks.shape[0] + 1)]


def rsearch_max(seq: Sequence[float], rule: PivotRule | str) -> tuple[int, int]:
    """Worst rank for Hoare's find: ``(k_star, comparisons)``.

    Ties go to the largest rank.
    """
    values = as_sequence(seq)
    if values.shape[0] == 0:
        raise ContractViolation("empty sequence")
    ranks, _ = order_ranks(values)
    costs = _search_costs(ranks, PivotRule.parse(rule).code)
    best = max(costs)
    k_star = max(k for k, c in enumerate(costs, 1) if c == best)
    return k_star, best


def exhaustive_average_comparisons(
    n: int, algorithm: str, rule: PivotRule | str, k: int | None = None
) -> Fraction:
    """Exact mean cost over all n! orderings of 1..n.

    ``algorithm`` is ``quicksort``, ``hoare-find`` (needs ``k``) or
    ``scan-maxima`` (cost = number of scan maxima).
    """
    if n > EXHAUSTIVE_MAX_N:
        raise ContractViolation(
            f"refusing to enumerate {n}! permutations (limit n <= {EXHAUSTIVE_MAX_N})"
        )
    if n < 1:
        raise ContractViolation("n must be positive")
    code = PivotRule.parse(rule).code
    algorithm = algorithm.replace("_", "-")
    if algorithm == "quicksort":
        def cost(a):
            return _kernels.quicksort(a, code)[0]
    elif algorithm == "hoare-find":
        if k is None or not 1 <= k <= n:
            raise ContractViolation("hoare-find needs a rank 1 <= k <= n")
        def cost(a):
            return _kernels.find(a, k, code)[1]
    elif algorithm == "scan-maxima":
        def cost(a):
            return _kernels.scan(a, code)[0]
    else:
        raise ContractViolation(f"unknown algorithm {algorithm!r}")
    total = 0
    count = 0
    for perm in itertools.permutations(range(n)):
        total += int(cost(np.array(perm, dtype=np.int64)))
        count += 1
    return Fraction(total, count)


@dataclass(frozen=True)
class CoveringInstance:
    """A sequence, a target rank and a covering of its (1-based) positions."""

    seq: tuple[float, ...]
    k: int
    cover: tuple[frozenset[int], ...]
    rule: PivotRule = PivotRule.CLASSIC

    @classmethod
    def build(cls, seq, k, cover: Iterable[Iterable[int]], rule=PivotRule.CLASSIC):
        return cls(
            tuple(float(v) for v in seq), int(k), tuple(frozenset(u) for u in cover),
            PivotRule.parse(rule),
        )

    def target_position(self) -> int:
        return kth_smallest_position(self.seq, self.k)

    def validate(self) -> None:
        n = len(self.seq)
        if not 1 <= self.k <= n:
            raise ContractViolation(f"rank k={self.k} outside 1..{n}")
        if not self.cover:
            raise ContractViolation("empty covering")
        universe = frozenset(range(1, n + 1))
        if frozenset().union(*self.cover) != universe:
            raise ContractViolation("cover sets do not union to all positions")
        j = self.target_position()
        if any(j not in u for u in self.cover):
            raise ContractViolation(f"target position {j} missing from some cover set")
        if any(not u <= universe for u in self.cover):
            raise ContractViolation("cover set contains an out-of-range position")


def covering_terms(inst: CoveringInstance) -> tuple[int, int, int]:
    """``(r_search(seq, k), sum of per-set searches, cross-set comparisons)``."""
    inst.validate()
    values = np.array(inst.seq)
    j = inst.target_position()
    _, trace = hoare_find_trace(values, inst.k, inst.rule)
    cross = sum(1 for a, b in trace if not any(a in u and b in u for u in inst.cover))
    subtotal = 0
    for u in inst.cover:
        positions = sorted(u)
        sub = values[np.array(positions) - 1]
        # rank of the target inside the subsequence, same tie-break
        k_sub = 1 + sum(
            1 for q in positions if (values[q - 1], q) < (values[j - 1], j)
        )
        subtotal += hoare_find(sub, k_sub, inst.rule).comparisons
    return len(trace), subtotal, cross


def covering_inequality_check(inst: CoveringInstance) -> bool:
    lhs, subtotal, cross = covering_terms(inst)
    return lhs <= subtotal + cross


def fbr_covering(base: Sequence[float], noise: Sequence[float], d: float, k: int) -> CoveringInstance:
    """Covering by small-noise, regular and large-noise elements.

    F holds positions with noise <= 3, B those with noise >= d - 3 and R those
    whose perturbed value lies in [1, d]; the target joins every set.
    """
    base = as_sequence(base)
    noise = as_sequence(noise)
    perturbed = base + noise
    n = perturbed.shape[0]
    j = kth_smallest_position(perturbed, k)
    small = {i + 1 for i in range(n) if noise[i] <= 3.0} | {j}
    regular = {i + 1 for i in range(n) if 1.0 <= perturbed[i] <= d} | {j}
    large = {i + 1 for i in range(n) if noise[i] >= d - 3.0} | {j}
    return CoveringInstance.build(perturbed, k, (small, regular, large))


def insertion_excess(seq: Sequence[float], value: float, position: int, rule=PivotRule.CLASSIC) -> int:
    """``r_search(seq') - r_search(seq) - n`` after inserting ``value``.

    ``position`` is the 1-based slot of the new element in ``seq'``.
    """
    values = as_sequence(seq)
    n = values.shape[0]
    if not 1 <= position <= n + 1:
        raise ContractViolation(f"insertion slot {position} outside 1..{n + 1}")
    grown = np.insert(values, position - 1, value)
    return rsearch_max(grown, rule)[1] - rsearch_max(values, rule)[1] - n
