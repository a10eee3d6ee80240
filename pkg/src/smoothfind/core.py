"""Instrumented quicksort, Hoare's find and scan maxima.

Elements are totally ordered by ``(value, position)`` so that sequences with
repeated values (the unperturbed adversarial inputs are full of them) still
have a unique k-th smallest element and a unique pivot.  On pairwise distinct
values this is just the ordinary order.

Only pivot-versus-element comparisons are counted; the constant work spent
choosing a pivot is not.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from . import _kernels
from .errors import ContractViolation


class PivotRule(enum.Enum):
    CLASSIC = "classic"
    MEDIAN_OF_THREE = "m3"
    MAX_OF_TWO = "max2"
    MIN_OF_TWO = "min2"

    @property
    def code(self) -> int:
        return _RULE_CODES[self]

    @classmethod
    def parse(cls, name: "str | PivotRule") -> "PivotRule":
        if isinstance(name, cls):
            return name
        try:
            return cls(name)
        except ValueError:
            raise ContractViolation(f"unknown pivot rule {name!r}") from None


_RULE_CODES = {
    PivotRule.CLASSIC: _kernels.CLASSIC,
    PivotRule.MEDIAN_OF_THREE: _kernels.MEDIAN_OF_THREE,
    PivotRule.MAX_OF_TWO: _kernels.MAX_OF_TWO,
    PivotRule.MIN_OF_TWO: _kernels.MIN_OF_TWO,
}


@dataclass(frozen=True)
class RunResult:
    """Counts of one algorithm execution.

    ``outcome`` is the element found (Hoare's find) or the output sequence
    (quicksort).  ``position`` is the 1-based input position of the found
    element and is None for quicksort.
    """

    comparisons: int
    pivots: int
    depth: int
    outcome: Any
    position: int | None = None


def as_sequence(seq: Sequence[float]) -> np.ndarray:
    arr = np.asarray(seq, dtype=np.float64)
    if arr.ndim != 1:
        raise ContractViolation("a sequence must be one-dimensional")
    return arr


def order_ranks(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(ranks, order)`` under the (value, position) total order.

    ``ranks[i]`` is the 0-based rank of position ``i`` and ``order[r]`` the
    position holding rank ``r``.
    """
    order = np.argsort(values, kind="stable")
    ranks = np.empty(order.shape[0], dtype=np.int64)
    ranks[order] = np.arange(order.shape[0], dtype=np.int64)
    return ranks, order


def select_pivot(seq: Sequence[float], rule: PivotRule | str) -> int:
    """1-based position of the pivot ``rule`` picks from ``seq``."""
    values = as_sequence(seq)
    rule = PivotRule.parse(rule)
    n = values.shape[0]
    if n == 0:
        raise ContractViolation("cannot select a pivot from an empty sequence")

    def key(pos):
        return (values[pos - 1], pos)

    if rule is PivotRule.CLASSIC:
        return 1
    if rule is PivotRule.MAX_OF_TWO:
        return max((1, n), key=key)
    if rule is PivotRule.MIN_OF_TWO:
        return min((1, n), key=key)
    # the referenced positions coincide for n <= 2; take the multiset median
    return sorted((1, (n + 1) // 2, n), key=key)[1]


def partition_count(
    seq: Sequence[float], pivot_pos: int
) -> tuple[np.ndarray, np.ndarray, int]:
    """Split ``seq`` around the element at 1-based ``pivot_pos``.

    Both sides keep their relative order.  Returns ``(left, right, n - 1)``.
    """
    values = as_sequence(seq)
    n = values.shape[0]
    if not 1 <= pivot_pos <= n:
        raise ContractViolation(f"pivot position {pivot_pos} outside 1..{n}")
    pivot = (values[pivot_pos - 1], pivot_pos)
    left = [v for i, v in enumerate(values, 1) if i != pivot_pos and (v, i) < pivot]
    right = [v for i, v in enumerate(values, 1) if i != pivot_pos and (v, i) > pivot]
    return np.array(left, dtype=np.float64), np.array(right, dtype=np.float64), n - 1


def quicksort_count(seq: Sequence[float], rule: PivotRule | str) -> RunResult:
    values = as_sequence(seq)
    rule = PivotRule.parse(rule)
    ranks, order = order_ranks(values)
    comparisons, pivots, depth = _kernels.quicksort(ranks, rule.code)
    return RunResult(int(comparisons), int(pivots), int(depth), values[order[ranks]])


def hoare_find(seq: Sequence[float], k: int, rule: PivotRule | str) -> RunResult:
    """Find the k-th smallest element (1-based ``k``) of ``seq``.

    After partitioning with ``l`` elements on the left, the search continues
    on the right with rank ``k - l - 1``: the pivot itself is gone.
    """
    values = as_sequence(seq)
    rule = PivotRule.parse(rule)
    n = values.shape[0]
    if not 1 <= k <= n:
        raise ContractViolation(f"rank k={k} outside 1..{n}")
    ranks, order = order_ranks(values)
    rank, comparisons, pivots, depth = _kernels.find(ranks, k, rule.code)
    pos = int(order[rank])
    return RunResult(int(comparisons), int(pivots), int(depth), float(values[pos]), pos + 1)


def scan_maxima(seq: Sequence[float], rule: PivotRule | str) -> int:
    """Pivots taken while repeatedly keeping only elements above the pivot."""
    values = as_sequence(seq)
    rule = PivotRule.parse(rule)
    if values.shape[0] == 0:
        return 0
    ranks, _ = order_ranks(values)
    count, _ = _kernels.scan(ranks, rule.code)
    return int(count)


def hoare_find_trace(
    seq: Sequence[float], k: int, rule: PivotRule | str
) -> tuple[int, list[tuple[int, int]]]:
    """Reference Hoare's find built on select_pivot/partition_count.

    Returns the 1-based position of the k-th smallest element together with
    every comparison made, as ``(pivot_position, other_position)`` pairs in
    input coordinates.  Slow; meant for oracles and cross-checks.
    """
    values = as_sequence(seq)
    rule = PivotRule.parse(rule)
    n = values.shape[0]
    if not 1 <= k <= n:
        raise ContractViolation(f"rank k={k} outside 1..{n}")
    positions = list(range(1, n + 1))
    trace = []
    while True:
        sub = values[np.array(positions) - 1]
        local = select_pivot(sub, rule)
        pivot = positions[local - 1]
        pivot_key = (values[pivot - 1], pivot)
        trace.extend((pivot, q) for q in positions if q != pivot)
        left = [q for q in positions if q != pivot and (values[q - 1], q) < pivot_key]
        if len(left) == k - 1:
            return pivot, trace
        if len(left) >= k:
            positions = left
        else:
            positions = [q for q in positions if (values[q - 1], q) > pivot_key]
            k -= len(left) + 1
