"""Monte Carlo sweeps, summary statistics and log-log exponent fits."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import __version__, _kernels
from .core import PivotRule, order_ranks
from .errors import ConfigError, ContractViolation
from .generators import FAMILIES, generate
from .oracles import _search_costs
from .perturbation import (
    AdditiveUniform,
    NoPerturbation,
    PartialPermutation,
    derive_stream,
    trial_stream_index,
)

log = logging.getLogger(__name__)

ALGORITHMS = ("hoare-find", "quicksort", "scan-maxima")
CSV_FIELDS = (
    "experiment", "algorithm", "rule", "target", "model", "param",
    "n", "trial", "seed", "comparisons", "pivots", "depth",
)
XI_CONSTANT = 4.0

Model = AdditiveUniform | PartialPermutation | NoPerturbation


def parse_target(target: str) -> str:
    if target in ("median", "max", "max-over-k"):
        return target
    if target.startswith("k="):
        try:
            if int(target[2:]) >= 1:
                return target
        except ValueError:
            pass
    raise ConfigError(f"--target: expected k=INT, median, max or max-over-k, got {target!r}")


def target_rank(target: str, n: int) -> int | None:
    """Rank a target policy asks for at size n; None means max over all k."""
    if target == "median":
        return (n + 1) // 2
    if target == "max":
        return n
    if target == "max-over-k":
        return None
    k = int(target[2:])
    if k > n:
        raise ConfigError(f"target {target} exceeds n={n}")
    return k


@dataclass(frozen=True)
class ExperimentConfig:
    generator: str
    model: Model
    algorithm: str
    rule: PivotRule
    n_grid: tuple[int, ...]
    target: str = "max"
    trials: int = 200
    master_seed: int = 0

    def validate(self) -> None:
        if self.generator not in FAMILIES:
            raise ConfigError(f"--experiment: unknown generator family {self.generator!r}")
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"--algorithm: unknown algorithm {self.algorithm!r}")
        parse_target(self.target)
        if not self.n_grid:
            raise ConfigError("--n-grid: empty grid")
        if any(n < 1 for n in self.n_grid):
            raise ConfigError("--n-grid: sizes must be positive")
        if any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise ConfigError("--n-grid: sizes must be strictly increasing")
        if self.trials < 1:
            raise ConfigError("--trials: need at least one trial")
        if self.generator == "pp-lower" and not isinstance(self.model, PartialPermutation):
            raise ConfigError("--model: pp-lower is a permutation family and needs --model partial")
        if self.generator == "median-lower-small-d" and not isinstance(self.model, AdditiveUniform):
            raise ConfigError("--model: median-lower-small-d is tuned to additive noise")
        for n in self.n_grid:
            if self.algorithm == "hoare-find":
                target_rank(self.target, n)
            try:
                self._base(n, None)
            except ContractViolation as exc:
                raise ConfigError(f"--n-grid: n={n}: {exc}") from None

    def _base(self, n: int, rng) -> np.ndarray:
        if self.generator == "uniform-random" and rng is None:
            return np.zeros(n)
        return generate(self.generator, n, self.model.param(n), rng)

    def to_dict(self) -> dict:
        model = {"name": self.model.name}
        if isinstance(self.model, AdditiveUniform):
            model.update(c=self.model.c, alpha=self.model.alpha)
        elif isinstance(self.model, PartialPermutation):
            model.update(p=self.model.p)
        return {
            "experiment": self.generator,
            "model": model,
            "algorithm": self.algorithm,
            "rule": self.rule.value,
            "target": self.target,
            "n_grid": list(self.n_grid),
            "trials": self.trials,
            "seed": self.master_seed,
        }

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass(frozen=True)
class TrialRecord:
    n: int
    trial: int
    param: float | None
    comparisons: int
    pivots: int
    depth: int


class Summary(NamedTuple):
    mean: float
    variance: float
    ci_half_width: float
    low_confidence: bool


def summarize(samples: Sequence[float]) -> Summary:
    """Mean, unbiased variance and normal-approximation 95% half-width."""
    x = np.asarray(samples, dtype=np.float64)
    if x.size == 0:
        raise ContractViolation("cannot summarize an empty sample")
    mean = float(x.mean())
    if x.size == 1:
        return Summary(mean, 0.0, 0.0, True)
    var = float(x.var(ddof=1))
    return Summary(mean, var, 1.96 * math.sqrt(var / x.size), False)


@dataclass(frozen=True)
class PointStats:
    n: int
    trials: int
    mean: float
    variance: float
    ci_half_width: float


@dataclass
class TrialStats:
    config: ExperimentConfig
    records: list[TrialRecord]
    points: list[PointStats] = field(default_factory=list)

    @property
    def metric(self) -> str:
        return "pivots" if self.config.algorithm == "scan-maxima" else "comparisons"

    def means(self) -> list[tuple[int, float]]:
        return [(p.n, p.mean) for p in self.points]

    def inversions(self) -> list[int]:
        """Grid sizes whose mean fell below the previous grid point's."""
        return [b.n for a, b in zip(self.points, self.points[1:]) if b.mean < a.mean]

    def fit(self) -> "FitResult":
        return fit_exponent(self.means())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for row in self.rows():
            writer.writerow(["" if row[f] is None else row[f] for f in CSV_FIELDS])
        return buf.getvalue()

    def to_json(self) -> str:
        meta = {
            "version": __version__,
            "master_seed": self.config.master_seed,
            "config_hash": self.config.digest(),
            "config": self.config.to_dict(),
            "xi_constant": XI_CONSTANT,
        }
        return json.dumps({"meta": meta, "rows": self.rows()}, indent=1) + "\n"

    def rows(self) -> list[dict]:
        c = self.config
        model = c.model.name
        return [
            {
                "experiment": c.generator,
                "algorithm": c.algorithm,
                "rule": c.rule.value,
                "target": c.target,
                "model": model,
                "param": None if r.param is None else repr(float(r.param)),
                "n": r.n,
                "trial": r.trial,
                "seed": c.master_seed,
                "comparisons": r.comparisons,
                "pivots": r.pivots,
                "depth": r.depth,
            }
            for r in self.records
        ]


def _one_trial(config: ExperimentConfig, n: int, trial: int) -> TrialRecord:
    gen = derive_stream(config.master_seed, trial_stream_index(n, trial)).generator()
    base = config._base(n, gen)
    seq = config.model.apply(base, gen, n)
    ranks, _ = order_ranks(seq)
    code = config.rule.code
    if config.algorithm == "quicksort":
        comps, pivots, depth = _kernels.quicksort(ranks, code)
    elif config.algorithm == "scan-maxima":
        pivots, comps = _kernels.scan(ranks, code)
        depth = pivots
    else:
        k = target_rank(config.target, n)
        if k is None:
            costs = _search_costs(ranks, code)
            k = max(i for i, c in enumerate(costs, 1) if c == max(costs))
        _, comps, pivots, depth = _kernels.find(ranks, k, code)
    return TrialRecord(n, trial, config.model.param(n), int(comps), int(pivots), int(depth))


def run_trials(config: ExperimentConfig, jobs: int = 1) -> TrialStats:
    """Run every (n, trial) pair of ``config``.

    Each pair draws from its own stream, so results do not depend on
    ``jobs`` or on scheduling order.
    """
    config.validate()
    tasks = [(n, t) for n in config.n_grid for t in range(config.trials)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(lambda nt: _one_trial(config, *nt), tasks))
    else:
        records = [_one_trial(config, n, t) for n, t in tasks]
    stats = TrialStats(config, records)
    attr = stats.metric
    for n in config.n_grid:
        s = summarize([getattr(r, attr) for r in records if r.n == n])
        stats.points.append(PointStats(n, config.trials, s.mean, s.variance, s.ci_half_width))
    if stats.inversions():
        log.warning("mean %s not monotone in n at %s", attr, stats.inversions())
    return stats


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float


def fit_exponent(points: Iterable[tuple[float, float]]) -> FitResult:
    """Least-squares line through ``(ln n, ln mean)``."""
    pts = [(float(n), float(m)) for n, m in points]
    if len(pts) < 2:
        raise ContractViolation("need at least two points to fit an exponent")
    if any(n <= 0 or m <= 0 for n, m in pts):
        raise ContractViolation("exponent fit needs strictly positive n and mean")
    x = np.log([n for n, _ in pts])
    y = np.log([m for _, m in pts])
    if np.ptp(x) == 0:
        raise ContractViolation("need at least two distinct n values")
    xc = x - x.mean()
    slope = float(np.dot(xc, y - y.mean()) / np.dot(xc, xc))
    intercept = float(y.mean() - slope * x.mean())
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(np.sum((y - (intercept + slope * x)) ** 2))
    r2 = 1.0 if ss_tot <= 1e-24 else min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return FitResult(slope, intercept, r2)


def median_location_check(
    n: int, d: float, trials: int, master_seed: int, c: float = XI_CONSTANT
) -> float:
    """Fraction of trials whose perturbed median leaves [d/2 - xi, 1 + d/2 + xi].

    ``xi = c * sqrt(ln n / n)``.  Trials cycle through all zeros, all ones,
    the sorted ramp and a uniform random sequence.
    """
    if trials < 1:
        raise ContractViolation("median_location_check needs trials >= 1")
    if not d > 0:
        raise ContractViolation("noise magnitude must be positive")
    xi = c * math.sqrt(math.log(n) / n)
    lo, hi = d / 2 - xi, 1 + d / 2 + xi
    mid = (n + 1) // 2 - 1
    outside = 0
    for t in range(trials):
        gen = derive_stream(master_seed, trial_stream_index(n, t)).generator()
        kind = t % 4
        if kind == 0:
            base = np.zeros(n)
        elif kind == 1:
            base = np.ones(n)
        elif kind == 2:
            base = np.arange(1, n + 1) / n
        else:
            base = gen.random(n)
        perturbed = base + d * gen.random(n)
        median = np.partition(perturbed, mid)[mid]
        outside += not lo <= median <= hi
    return outside / trials
