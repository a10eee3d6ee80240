"""Exit criteria, shared by ``smoothfind verify`` and the test suite.

Asymptotic claims carry unknown constants, so the Monte Carlo checks assert
fitted growth exponents and ratio stability rather than absolute counts.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import _kernels
from .core import PivotRule, hoare_find, order_ranks, quicksort_count
from .experiments import ExperimentConfig, fit_exponent, median_location_check, run_trials
from .generators import FAMILIES, generate
from .oracles import (
    CoveringInstance,
    covering_inequality_check,
    exhaustive_average_comparisons,
    fbr_covering,
    insertion_excess,
    kth_smallest_position,
)
from .perturbation import AdditiveUniform, PartialPermutation, derive_stream

DEFAULT_SEED = 20100831
TRIALS = 200
RULES = tuple(PivotRule)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict}  {self.name:<34} {self.seconds:7.1f}s  {self.detail}"


def _timed(name: str, budget: float, body: Callable[[], tuple[bool, str]]) -> Check:
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    if elapsed > budget:
        ok = False
        detail += f"; exceeded {budget:.0f}s budget"
    return Check(name, ok, detail, elapsed)


def _grid(lo: int, hi: int, offset: int = 0) -> tuple[int, ...]:
    return tuple(2**e + offset for e in range(lo, hi + 1))


def _ltr_maxima(x: np.ndarray) -> int:
    # independent of the pivot machinery: strict running-maximum records
    return int(np.count_nonzero(x > np.concatenate([[-np.inf], np.maximum.accumulate(x)[:-1]])))


def _scan(values: np.ndarray, rule: PivotRule) -> int:
    ranks, _ = order_ranks(values)
    return int(_kernels.scan(ranks, rule.code)[0])


def _random_instance(gen: np.random.Generator, max_n: int) -> np.ndarray:
    """Random sequence under one of the two models, sometimes with ties."""
    n = int(gen.integers(1, max_n + 1))
    base = gen.random(n)
    if gen.random() < 0.3:
        base = np.round(base * 4) / 4
    if gen.random() < 0.5:
        return base + float(gen.uniform(0.01, 2.0)) * gen.random(n)
    marked = np.flatnonzero(gen.random(n) < gen.random())
    base = np.sort(base)
    base[marked] = base[marked[gen.permutation(marked.size)]]
    return base


def check_correctness(seed: int = DEFAULT_SEED, instances: int = 10_000) -> Check:
    def body():
        failures = 0
        for i in range(instances):
            gen = derive_stream(seed, i).generator()
            seq = _random_instance(gen, 200)
            rule = RULES[i % 4]
            k = int(gen.integers(1, seq.shape[0] + 1))
            found = hoare_find(seq, k, rule)
            if found.position != kth_smallest_position(seq, k):
                failures += 1
            if not np.array_equal(quicksort_count(seq, rule).outcome, np.sort(seq)):
                failures += 1
        return failures == 0, f"{instances} instances, {failures} failures"

    return _timed("A1 correctness", 30, body)


def check_small_average(seed: int = DEFAULT_SEED) -> Check:
    def body():
        exact = exhaustive_average_comparisons(3, "quicksort", PivotRule.CLASSIC)
        cfg = ExperimentConfig(
            "sorted", PartialPermutation(1.0), "quicksort", PivotRule.CLASSIC,
            (3,), trials=100_000, master_seed=seed,
        )
        mean = run_trials(cfg).points[0].mean
        rel = abs(mean - 8 / 3) / (8 / 3)
        ok = exact == Fraction(8, 3) and rel < 0.01
        return ok, f"exact={exact}, monte carlo={mean:.4f} (rel err {rel:.4f})"

    return _timed("A2 exact small-n average", 10, body)


def _adversarial_inputs(gen: np.random.Generator):
    for n in (10, 100, 1000, 10_000):
        for family in FAMILIES:
            size = n
            if family == "scan-lower":
                size = n + n % 2
            elif family == "pp-lower":
                size = n + 1 - n % 2
            param = 0.5 if family == "pp-lower" else 1.0
            base = generate(family, size, param, gen)
            yield base
            if family == "pp-lower":
                marked = np.flatnonzero(gen.random(size) < 0.5)
                pert = base.copy()
                pert[marked] = base[marked[gen.permutation(marked.size)]]
                yield pert
            else:
                yield base + gen.random(size)


def check_rule_ordering(seed: int = DEFAULT_SEED, sequences: int = 10_000) -> Check:
    def body():
        gen = derive_stream(seed, 3).generator()
        inputs = [_random_instance(gen, 200) for _ in range(sequences)]
        inputs.extend(_adversarial_inputs(gen))
        violations = 0
        for seq in inputs:
            hi = _scan(seq, PivotRule.MAX_OF_TWO)
            mid = _scan(seq, PivotRule.MEDIAN_OF_THREE)
            lo = _scan(seq, PivotRule.MIN_OF_TWO)
            violations += not hi <= mid <= lo
        return violations == 0, f"{len(inputs)} sequences, {violations} violations"

    return _timed("A3 max2 <= m3 <= min2 scan", 60, body)


def _slope_check(name, budget, cfg, lo, hi, extra=None) -> Check:
    def body():
        stats = run_trials(cfg)
        fit = stats.fit()
        ok = lo <= fit.slope <= hi
        detail = f"slope {fit.slope:.3f} (want [{lo:.2f}, {hi:.2f}]), r2 {fit.r_squared:.4f}"
        if extra is not None:
            extra_ok, extra_detail = extra(stats)
            ok = ok and extra_ok
            detail += "; " + extra_detail
        return ok, detail

    return _timed(name, budget, body)


def _nlogn_ratios(stats, top: int = 3) -> list[float]:
    return [m / (n * math.log(n)) for n, m in stats.means()[-top:]]


def check_general_lower(seed: int = DEFAULT_SEED) -> Check:
    cfg = ExperimentConfig(
        "general-lower", AdditiveUniform(1.0), "hoare-find", PivotRule.CLASSIC,
        _grid(10, 16), target="max", trials=TRIALS, master_seed=seed,
    )
    return _slope_check("A4 general lower bound n^1.5", 300, cfg, 1.4, 1.6)


def check_median_d2(seed: int = DEFAULT_SEED) -> Check:
    def ratio_stable(stats):
        r = _nlogn_ratios(stats)
        spread = max(r) / min(r) - 1
        return spread < 0.25, f"mean/(n ln n) top-3 {[round(v, 4) for v in r]} spread {spread:.3f}"

    cfg = ExperimentConfig(
        "median-lower-d2", AdditiveUniform(2.0), "hoare-find", PivotRule.CLASSIC,
        _grid(10, 16), target="median", trials=TRIALS, master_seed=seed,
    )
    return _slope_check("A5 median d=2 n log n", 300, cfg, 1.0, 1.25, ratio_stable)


def check_median_d4(seed: int = DEFAULT_SEED) -> Check:
    cfg = ExperimentConfig(
        "median-lower-d2", AdditiveUniform(4.0), "hoare-find", PivotRule.CLASSIC,
        _grid(10, 16), target="median", trials=TRIALS, master_seed=seed,
    )
    return _slope_check("A6 median d=4 linear", 300, cfg, 0.9, 1.1)


def check_scan_maxima(seed: int = DEFAULT_SEED) -> Check:
    def body():
        details = []
        ok = True
        for rule in (PivotRule.CLASSIC, PivotRule.MEDIAN_OF_THREE):
            cfg = ExperimentConfig(
                "scan-lower", AdditiveUniform(1.0), "scan-maxima", rule,
                _grid(10, 18), trials=TRIALS, master_seed=seed,
            )
            n_slope = run_trials(cfg).fit().slope
            d_points = []
            for d in (1.0, 2.0, 4.0, 8.0, 16.0):
                cfg = ExperimentConfig(
                    "scan-lower", AdditiveUniform(d), "scan-maxima", rule,
                    (2**16,), trials=TRIALS, master_seed=seed,
                )
                d_points.append((d, run_trials(cfg).points[0].mean))
            d_slope = fit_exponent(d_points).slope
            ok = ok and 0.4 <= n_slope <= 0.6 and -0.65 <= d_slope <= -0.35
            details.append(f"{rule.value}: n-slope {n_slope:.3f}, d-slope {d_slope:.3f}")
        return ok, "; ".join(details) + " (want 0.5+-0.1, -0.5+-0.15)"

    return _timed("A7 scan maxima sqrt(n/d)", 180, body)


def check_m3_lower(seed: int = DEFAULT_SEED) -> Check:
    def body():
        details = []
        ok = True
        for algorithm in ("hoare-find", "quicksort"):
            cfg = ExperimentConfig(
                "m3-lower", AdditiveUniform(1.0), algorithm, PivotRule.MEDIAN_OF_THREE,
                _grid(10, 15), target="max", trials=TRIALS, master_seed=seed,
            )
            slope = run_trials(cfg).fit().slope
            ok = ok and 1.38 <= slope <= 1.62
            details.append(f"{algorithm}: slope {slope:.3f}")
        return ok, "; ".join(details) + " (want 1.5+-0.12)"

    return _timed("A8 median-of-three lower bound", 300, body)


def check_partial_permutation(seed: int = DEFAULT_SEED) -> Check:
    def body():
        ratios = {}
        for p in (0.5, 1.0):
            cfg = ExperimentConfig(
                "pp-lower", PartialPermutation(p), "hoare-find", PivotRule.CLASSIC,
                _grid(10, 16, offset=1), target="median", trials=TRIALS, master_seed=seed,
            )
            ratios[p] = _nlogn_ratios(run_trials(cfg))
        top = ratios[0.5]
        centre = sum(top) / len(top)
        stable = all(abs(r / centre - 1) <= 0.2 for r in top)
        above = all(a > b for a, b in zip(top, ratios[1.0]))
        detail = (
            f"p=0.5 mean/(n ln n) {[round(r, 4) for r in top]}, "
            f"p=1 {[round(r, 4) for r in ratios[1.0]]}"
        )
        return stable and above, detail

    return _timed("A9 partial permutation n log n", 300, body)


def check_median_location(seed: int = DEFAULT_SEED) -> Check:
    def body():
        frac = median_location_check(10_000, 4.0, 1000, seed)
        return frac < 0.01, f"outlier fraction {frac:.4f}"

    return _timed("A10 median location", 30, body)


def _random_two_cover(gen, n: int, j: int) -> list[set[int]]:
    side = gen.integers(0, 3, size=n)
    first = {i + 1 for i in range(n) if side[i] != 1} | {j}
    second = {i + 1 for i in range(n) if side[i] != 0} | {j}
    return [first, second]


def check_lemma_suites(seed: int = DEFAULT_SEED) -> Check:
    def body():
        gen = derive_stream(seed, 11).generator()
        cover_bad = 0
        for _ in range(1000):
            n = int(gen.integers(1, 13))
            seq = gen.random(n)
            k = int(gen.integers(1, n + 1))
            cover = _random_two_cover(gen, n, kth_smallest_position(seq, k))
            cover_bad += not covering_inequality_check(CoveringInstance.build(seq, k, cover))
        for _ in range(200):
            n = int(gen.integers(1, 13))
            base = gen.random(n)
            inst = fbr_covering(base, 8.0 * gen.random(n), 8.0, int(gen.integers(1, n + 1)))
            cover_bad += not covering_inequality_check(inst)

        insert_bad = insert_edge = 0
        for _ in range(1000):
            seq = _random_instance(gen, 50)
            excess = insertion_excess(
                seq, float(gen.uniform(-0.5, 3.0)), int(gen.integers(1, seq.shape[0] + 2))
            )
            insert_edge += excess == 2
            insert_bad += excess > 2

        ltr_bad = 0
        for _ in range(10_000):
            seq = _random_instance(gen, 200)
            ranks = order_ranks(seq)[0].astype(np.float64)
            bound = _ltr_maxima(ranks) + _ltr_maxima(ranks[::-1])
            ltr_bad += _scan(seq, PivotRule.MIN_OF_TWO) > bound

        sub_bad = 0
        for i in range(10_000):
            seq = _random_instance(gen, 200)
            rule = RULES[i % 4]
            k = int(gen.integers(1, seq.shape[0] + 1))
            sub_bad += hoare_find(seq, k, rule).comparisons > quicksort_count(seq, rule).comparisons

        ok = cover_bad == insert_bad == ltr_bad == sub_bad == 0
        detail = (
            f"covering {cover_bad}/1200, insertion {insert_bad}/1000 "
            f"(+n+2 reported: {insert_edge}), min2<=ltr+rtl {ltr_bad}/10000, "
            f"find<=quick {sub_bad}/10000 violations"
        )
        return ok, detail

    return _timed("A11 lemma property suites", 60, body)


def check_determinism(seed: int = DEFAULT_SEED) -> Check:
    def body():
        cfg = ExperimentConfig(
            "general-lower", AdditiveUniform(1.0), "hoare-find", PivotRule.CLASSIC,
            _grid(8, 11), target="max", trials=50, master_seed=seed,
        )
        first = run_trials(cfg).to_csv()
        again = run_trials(cfg).to_csv()
        threaded = run_trials(cfg, jobs=3).to_csv()
        ok = first == again == threaded
        return ok, f"{len(first)} bytes, serial/serial/threaded identical={ok}"

    return _timed("A12 determinism", 30, body)


DETERMINISTIC = (
    check_correctness, check_small_average, check_rule_ordering,
    check_lemma_suites, check_determinism,
)
ASYMPTOTIC = (
    check_general_lower, check_median_d2, check_median_d4, check_scan_maxima,
    check_m3_lower, check_partial_permutation, check_median_location,
)
SUITES = {
    "deterministic": DETERMINISTIC,
    "asymptotic": ASYMPTOTIC,
    "all": DETERMINISTIC + ASYMPTOTIC,
}


def run_suite(name: str, seed: int = DEFAULT_SEED, echo: Callable[[str], None] | None = None) -> list[Check]:
    results = []
    for check in SUITES[name]:
        result = check(seed)
        if echo is not None:
            echo(result.line())
        results.append(result)
    return results
