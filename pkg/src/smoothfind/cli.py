"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from collections import defaultdict
from pathlib import Path

from .acceptance import DEFAULT_SEED, SUITES, run_suite
from .core import PivotRule
from .errors import ConfigError, ContractViolation
from .experiments import ALGORITHMS, ExperimentConfig, fit_exponent, parse_target, run_trials
from .generators import FAMILIES
from .perturbation import AdditiveUniform, NoPerturbation, PartialPermutation

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}")


def _add_experiment_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--experiment", required=True, choices=sorted(FAMILIES))
    p.add_argument("--algorithm", required=True, choices=ALGORITHMS)
    p.add_argument("--rule", default="classic", choices=[r.value for r in PivotRule])
    p.add_argument("--target", default="max", help="k=INT, median, max or max-over-k")
    p.add_argument("--model", default="additive", choices=("additive", "partial", "none"))
    p.add_argument("--d", type=float, help="constant noise magnitude")
    p.add_argument("--d-law", help="C,ALPHA for d(n) = C * n**ALPHA")
    p.add_argument("--p", type=float, help="marking probability")
    grid = p.add_mutually_exclusive_group(required=True)
    grid.add_argument("--n", type=int)
    grid.add_argument("--n-grid", type=_int_list)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", type=Path, help="output file (stdout if omitted)")
    p.add_argument("--format", choices=("csv", "json"), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="smoothfind", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _add_experiment_flags(sub.add_parser("run", help="run one experiment"))

    sweep = sub.add_parser("sweep", help="run every experiment in a JSON config file")
    sweep.add_argument("--config", type=Path, required=True)
    sweep.add_argument("--jobs", type=int, default=1)

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("--suite", choices=sorted(SUITES), default="deterministic")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)

    fit = sub.add_parser("fit", help="fit growth exponents to a results file")
    fit.add_argument("results", type=Path)
    return parser


def _model(args) -> AdditiveUniform | PartialPermutation | NoPerturbation:
    if args.model == "additive":
        if (args.d is None) == (args.d_law is None):
            raise ConfigError("--d/--d-law: additive model needs exactly one of them")
        if args.d_law is not None:
            try:
                c, alpha = (float(v) for v in args.d_law.split(","))
            except ValueError:
                raise ConfigError(f"--d-law: expected C,ALPHA, got {args.d_law!r}") from None
            return AdditiveUniform(c, alpha)
        return AdditiveUniform(args.d)
    if args.d is not None or args.d_law is not None:
        raise ConfigError(f"--d: not used by --model {args.model}")
    if args.model == "partial":
        if args.p is None:
            raise ConfigError("--p: partial model needs a marking probability")
        return PartialPermutation(args.p)
    if args.p is not None:
        raise ConfigError("--p: not used by --model none")
    return NoPerturbation()


def config_from_args(args) -> ExperimentConfig:
    try:
        model = _model(args)
    except ContractViolation as exc:
        raise ConfigError(f"--{args.model}: {exc}") from None
    cfg = ExperimentConfig(
        generator=args.experiment,
        model=model,
        algorithm=args.algorithm,
        rule=PivotRule(args.rule),
        n_grid=(args.n,) if args.n is not None else args.n_grid,
        target=parse_target(args.target),
        trials=args.trials,
        master_seed=args.seed,
    )
    cfg.validate()
    return cfg


def _emit(stats, out: Path | None, fmt: str | None) -> None:
    if fmt is None:
        fmt = "json" if out is not None and out.suffix == ".json" else "csv"
    text = stats.to_json() if fmt == "json" else stats.to_csv()
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_bytes(text.encode())


def _cmd_run(args) -> int:
    cfg = config_from_args(args)
    _emit(run_trials(cfg, jobs=args.jobs), args.out, args.format)
    return EXIT_OK


def _entry_argv(entry: dict) -> list[str]:
    argv = ["run"]
    for key, value in entry.items():
        flag = "--" + key.replace("_", "-")
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        argv += [flag, str(value)]
    return argv


def _cmd_sweep(args) -> int:
    try:
        spec = json.loads(args.config.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"--config: cannot read {args.config}: {exc}") from None
    entries = spec.get("experiments") if isinstance(spec, dict) else spec
    if not isinstance(entries, list) or not entries:
        raise ConfigError("--config: expected a list of experiments")
    parser = build_parser()
    parsed = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or "out" not in entry:
            raise ConfigError(f"--config: entry {i} must be an object with an 'out' key")
        sub = parser.parse_args(_entry_argv(entry))
        if sub.out is not None and not sub.out.is_absolute():
            sub.out = args.config.parent / sub.out
        parsed.append((sub, config_from_args(sub)))
    for sub, cfg in parsed:
        _emit(run_trials(cfg, jobs=args.jobs), sub.out, sub.format)
        print(f"wrote {sub.out}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = run_suite(args.suite, seed=args.seed, echo=print)
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_FAILED if failed else EXIT_OK


def _read_rows(path: Path) -> list[dict]:
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"results: cannot read {path}: {exc}") from None
    if path.suffix == ".json":
        return json.loads(text)["rows"]
    return list(csv.DictReader(text.splitlines()))


def _cmd_fit(args) -> int:
    groups = defaultdict(lambda: defaultdict(list))
    for row in _read_rows(args.results):
        key = (row["experiment"], row["algorithm"], row["rule"], row["target"], row["model"])
        metric = "pivots" if row["algorithm"] == "scan-maxima" else "comparisons"
        groups[key][int(row["n"])].append(float(row[metric]))
    if not groups:
        raise ConfigError("results: no data rows")
    print("experiment,algorithm,rule,target,model,points,slope,intercept,r_squared")
    for key, by_n in groups.items():
        points = [(n, sum(v) / len(v)) for n, v in sorted(by_n.items())]
        if len(points) < 2:
            print(",".join(key) + f",{len(points)},,,")
            continue
        try:
            fit = fit_exponent(points)
        except ContractViolation as exc:
            raise ConfigError(f"results: {exc}") from None
        print(",".join(key) + f",{len(points)},{fit.slope:.6f},{fit.intercept:.6f},{fit.r_squared:.6f}")
    return EXIT_OK


COMMANDS = {"run": _cmd_run, "sweep": _cmd_sweep, "verify": _cmd_verify, "fit": _cmd_fit}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"smoothfind: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
