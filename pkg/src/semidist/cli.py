"""Batch command-line interface.

Three subcommands: ``test`` runs a catalog hypothesis test on a data
file, ``ci`` prints the matching confidence interval, and
``experiment`` drives the Monte Carlo coverage/size/power harness.
Decisions always live in the payload; the exit code only distinguishes
"ran" (0) from "could not run" (2).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Sequence

from . import framework, montecarlo
from .framework import Hypothesis, TestProblem
from .measurement import Sample, State, TwoSampleState

__all__ = ["main"]

SEED_ENV_VAR = "SEMIDIST_SEED"

TEST_NAMES = (
    "mean-z",
    "mean-z-upper",
    "var",
    "var-upper",
    "diff-means",
    "diff-means-upper",
    "var-ratio",
    "var-ratio-upper",
    "mean-t",
    "mean-t-upper",
)
_TWO_SAMPLE = ("diff-means", "diff-means-upper", "var-ratio", "var-ratio-upper")
_UPPER = tuple(name for name in TEST_NAMES if name.endswith("-upper"))


class CliError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _json_number(x: float):
    if not math.isfinite(x):
        return None
    return float(f"{x:.12g}")


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload))


def read_columns(path: str) -> tuple[list[float], list[float]]:
    """Parse a one- or two-column data file (comma- or whitespace-separated,
    optional header line)."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise CliError(f"cannot read data file {path!r}: {exc}") from exc
    col1: list[float] = []
    col2: list[float] = []
    allow_header = True
    for raw in lines:
        line = raw.strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        try:
            values = [float(p) for p in parts]
        except ValueError:
            if allow_header:
                allow_header = False
                continue
            raise CliError(f"unparseable line in {path!r}: {raw!r}") from None
        allow_header = False
        if len(values) > 2:
            raise CliError(f"expected one or two columns in {path!r}, got {len(values)}")
        col1.append(values[0])
        if len(values) == 2:
            col2.append(values[1])
    if not col1:
        raise CliError(f"no data rows in {path!r}")
    return col1, col2


def _build_problem(name: str, n: int, m: int | None, args: argparse.Namespace) -> TestProblem:
    if name in ("mean-z", "mean-z-upper"):
        if args.sigma is None:
            raise CliError(
                f"--sigma is required for {name} (the known population sd); "
                "with sigma unknown, use mean-t"
                + ("-upper" if name.endswith("-upper") else "")
            )
        maker = framework.mean_z_upper if name.endswith("-upper") else framework.mean_z
        return maker(n, args.sigma)
    if name in ("diff-means", "diff-means-upper"):
        if args.sigma1 is None or args.sigma2 is None:
            raise CliError(
                f"--sigma1 and --sigma2 are required for {name} "
                "(the known population sds)"
            )
        if m is None:
            raise CliError(f"{name} needs two data columns")
        maker = (
            framework.mean_diff_z_upper
            if name.endswith("-upper")
            else framework.mean_diff_z
        )
        return maker(n, m, args.sigma1, args.sigma2)
    if name in ("var", "var-upper"):
        if n < 2:
            raise CliError(f"{name} needs at least 2 observations, got {n}")
        return framework.variance_upper(n) if name.endswith("-upper") else framework.variance(n)
    if name in ("var-ratio", "var-ratio-upper"):
        if m is None:
            raise CliError(f"{name} needs two data columns")
        if n < 2 or m < 2:
            raise CliError(f"{name} needs at least 2 observations per column")
        maker = (
            framework.variance_ratio_upper
            if name.endswith("-upper")
            else framework.variance_ratio
        )
        return maker(n, m)
    if n < 2:
        raise CliError(f"{name} needs at least 2 observations, got {n}")
    return framework.mean_t_upper(n) if name.endswith("-upper") else framework.mean_t(n)


def _build_hypothesis(name: str, null_value: float) -> Hypothesis:
    if name in ("var", "var-upper", "var-ratio", "var-ratio-upper") and null_value <= 0.0:
        raise CliError(f"--null must be positive for {name}, got {null_value}")
    if name in _UPPER:
        return Hypothesis.lower_half_line(null_value)
    return Hypothesis.point(null_value)


def _load_sample(name: str, path: str) -> Sample:
    col1, col2 = read_columns(path)
    if name in _TWO_SAMPLE:
        if not col2:
            raise CliError(f"{name} needs two data columns in {path!r}")
        return Sample(tuple(col1), tuple(col2))
    if col2:
        raise CliError(f"{name} takes a single data column, {path!r} has two")
    return Sample(tuple(col1))


def _cmd_test(args: argparse.Namespace) -> int:
    x = _load_sample(args.name, args.data)
    problem = _build_problem(args.name, x.n, x.m, args)
    hypothesis = _build_hypothesis(args.name, args.null)
    result = framework.run_test(problem, hypothesis, args.alpha, x)
    if args.json:
        _emit_json(
            {
                "test": args.name,
                "statistic": _json_number(result.statistic),
                "eta": _json_number(result.eta),
                "alpha": _json_number(result.alpha),
                "reject": result.reject,
            }
        )
    else:
        print(f"test: {args.name}")
        print(f"n: {x.n}" + (f"  m: {x.m}" if x.m is not None else ""))
        print(f"null: {_fmt(args.null)}")
        print(f"estimate: {_fmt(framework.estimate(problem, x))}")
        print(f"statistic: {_fmt(result.statistic)}")
        print(f"eta: {_fmt(result.eta)}")
        print(f"alpha: {_fmt(result.alpha)}")
        print(f"reject: {'yes' if result.reject else 'no'}")
    return 0


def _cmd_ci(args: argparse.Namespace) -> int:
    x = _load_sample(args.name, args.data)
    problem = _build_problem(args.name, x.n, x.m, args)
    region = framework.confidence_region(problem, x, args.gamma)
    if args.json:
        _emit_json(
            {
                "lo": _json_number(region.lo),
                "hi": _json_number(region.hi),
                "gamma": _json_number(region.gamma),
                "estimator": _json_number(region.estimate),
            }
        )
    else:
        hi = _fmt(region.hi) if math.isfinite(region.hi) else "inf"
        print(f"test: {args.name}")
        print(f"n: {x.n}" + (f"  m: {x.m}" if x.m is not None else ""))
        print(f"estimate: {_fmt(region.estimate)}")
        print(f"gamma: {_fmt(region.gamma)}")
        print(f"interval: ({_fmt(region.lo)}, {hi})")
    return 0


def _report_payload(report: montecarlo.ExperimentReport) -> dict:
    return {
        "rate": _json_number(report.rate),
        "hits": report.hits,
        "J": report.replications,
        "band": [_json_number(report.band[0]), _json_number(report.band[1])],
        "pass": report.passed,
        "seed": report.seed,
    }


def _print_report(report: montecarlo.ExperimentReport, prefix: str = "") -> None:
    print(
        f"{prefix}rate: {_fmt(report.rate)}  hits: {report.hits}/{report.replications}"
        f"  band: ({_fmt(report.band[0])}, {_fmt(report.band[1])})"
        f"  pass: {'yes' if report.passed else 'no'}  seed: {report.seed}"
    )


def _experiment_truth(name: str, args: argparse.Namespace) -> State | TwoSampleState:
    first = State(args.mu, args.sd)
    if name in _TWO_SAMPLE:
        return TwoSampleState(first, State(args.mu2, args.sd2))
    return first


def _experiment_problem(name: str, args: argparse.Namespace) -> TestProblem:
    # In an experiment the truth's sigma is available, so the known-sigma
    # tests default their nuisance values to it.
    if name in ("mean-z", "mean-z-upper") and args.sigma is None:
        args.sigma = args.sd
    if name in ("diff-means", "diff-means-upper"):
        if args.sigma1 is None:
            args.sigma1 = args.sd
        if args.sigma2 is None:
            args.sigma2 = args.sd2
    m = args.m if name in _TWO_SAMPLE else None
    return _build_problem(name, args.n, m, args)


def _grid_truth(name: str, theta: float, args: argparse.Namespace) -> State | TwoSampleState:
    # Place the quantity value at theta by moving the first component.
    if name in ("mean-z", "mean-z-upper", "mean-t", "mean-t-upper"):
        return State(theta, args.sd)
    if name in ("var", "var-upper"):
        if theta <= 0.0:
            raise CliError(f"--grid values must be positive for {name}")
        return State(args.mu, theta)
    if name in ("diff-means", "diff-means-upper"):
        return TwoSampleState(State(args.mu2 + theta, args.sd), State(args.mu2, args.sd2))
    if theta <= 0.0:
        raise CliError(f"--grid values must be positive for {name}")
    return TwoSampleState(State(args.mu, theta * args.sd2), State(args.mu2, args.sd2))


def _cmd_experiment(args: argparse.Namespace) -> int:
    name = args.test
    if name in _TWO_SAMPLE and args.m is None:
        args.m = args.n
    problem = _experiment_problem(name, args)
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get(SEED_ENV_VAR, "0"))
    if args.kind == "coverage":
        plan = montecarlo.ExperimentPlan(
            problem, _experiment_truth(name, args), args.gamma, args.reps, seed
        )
        report = montecarlo.coverage_experiment(plan, workers=args.workers)
        if args.json:
            _emit_json(_report_payload(report))
        else:
            print(f"coverage experiment: {name}  gamma: {_fmt(args.gamma)}")
            _print_report(report)
        return 0
    if args.null is None:
        raise CliError(f"--null is required for {args.kind} experiments")
    hypothesis = _build_hypothesis(name, args.null)
    if args.kind == "size":
        plan = montecarlo.ExperimentPlan(
            problem,
            _experiment_truth(name, args),
            args.alpha,
            args.reps,
            seed,
            hypothesis,
        )
        report = montecarlo.size_experiment(plan, workers=args.workers)
        if args.json:
            _emit_json(_report_payload(report))
        else:
            print(f"size experiment: {name}  alpha: {_fmt(args.alpha)}")
            _print_report(report)
        return 0
    if not args.grid:
        raise CliError("--grid is required for power experiments")
    try:
        thetas = [float(v) for v in args.grid.split(",") if v.strip()]
    except ValueError:
        raise CliError(f"--grid must be a comma-separated list of reals, got {args.grid!r}")
    if not thetas:
        raise CliError("--grid is empty")
    truths = [_grid_truth(name, theta, args) for theta in thetas]
    plan = montecarlo.ExperimentPlan(
        problem, truths[0], args.alpha, args.reps, seed, hypothesis
    )
    reports = montecarlo.power_curve(plan, truths, workers=args.workers)
    if args.json:
        print(json.dumps([_report_payload(r) for r in reports]))
    else:
        print(f"power experiment: {name}  alpha: {_fmt(args.alpha)}")
        for theta, report in zip(thetas, reports):
            _print_report(report, prefix=f"theta: {_fmt(theta)}  ")
    return 0


def _add_nuisance_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sigma", type=float, help="known population sd (mean-z tests)")
    parser.add_argument("--sigma1", type=float, help="known sd of the first sample")
    parser.add_argument("--sigma2", type=float, help="known sd of the second sample")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semidist",
        description="Catalog hypothesis tests, confidence intervals, and "
        "Monte Carlo coverage/size experiments for the normal model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_test = sub.add_parser("test", help="run a hypothesis test on a data file")
    p_test.add_argument("name", choices=TEST_NAMES, help="catalog test name")
    p_test.add_argument("data", help="data file (1 or 2 columns, CSV or whitespace)")
    p_test.add_argument("--null", type=float, required=True, help="null value")
    p_test.add_argument("--alpha", type=float, default=0.05, help="significance level")
    _add_nuisance_flags(p_test)
    p_test.add_argument("--json", action="store_true", help="emit JSON")
    p_test.set_defaults(func=_cmd_test)

    p_ci = sub.add_parser("ci", help="confidence interval from a data file")
    p_ci.add_argument("name", choices=TEST_NAMES, help="catalog test name")
    p_ci.add_argument("data", help="data file (1 or 2 columns, CSV or whitespace)")
    p_ci.add_argument("--gamma", type=float, default=0.95, help="confidence level")
    _add_nuisance_flags(p_ci)
    p_ci.add_argument("--json", action="store_true", help="emit JSON")
    p_ci.set_defaults(func=_cmd_ci)

    p_exp = sub.add_parser("experiment", help="Monte Carlo coverage/size/power")
    p_exp.add_argument("kind", choices=("coverage", "size", "power"))
    p_exp.add_argument("--test", required=True, choices=TEST_NAMES, help="catalog test")
    p_exp.add_argument("--n", type=int, default=10, help="first sample size")
    p_exp.add_argument("--m", type=int, help="second sample size (two-sample tests)")
    p_exp.add_argument("--mu", type=float, default=0.0, help="true mean")
    p_exp.add_argument("--sd", type=float, default=1.0, help="true sd")
    p_exp.add_argument("--mu2", type=float, default=0.0, help="true mean, second sample")
    p_exp.add_argument("--sd2", type=float, default=1.0, help="true sd, second sample")
    p_exp.add_argument("--gamma", type=float, default=0.95, help="confidence level (coverage)")
    p_exp.add_argument("--alpha", type=float, default=0.05, help="significance level (size/power)")
    p_exp.add_argument("--null", type=float, help="null value (size/power)")
    p_exp.add_argument("--grid", help="comma-separated quantity values (power)")
    p_exp.add_argument("--reps", type=int, default=10000, help="replications")
    p_exp.add_argument(
        "--seed", type=int, help=f"RNG seed (default: ${SEED_ENV_VAR} or 0)"
    )
    p_exp.add_argument("--workers", type=int, default=1, help="parallel workers")
    _add_nuisance_flags(p_exp)
    p_exp.add_argument("--json", action="store_true", help="emit JSON")
    p_exp.set_defaults(func=_cmd_experiment)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
