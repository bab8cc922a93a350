"""Command-line flags and the validated run configuration they produce."""

from __future__ import annotations

import argparse
import os
from dataclasses import dataclass, field

from joblib import cpu_count

from ..stats.experiment_factory import ExperimentFactory
from .command_types import Command, OutputFormat

SEED_VARIABLE = "HERMITE_LAB_SEED"
COMMON_KEYS = ("command", "seed", "reps", "out", "format", "threads", "verbose")


@dataclass(frozen=True)
class RunConfig:
    """
    Everything one invocation needs.

    Attributes:
        command (Command): Sub-command to run.
        seed (int): Master seed; always written to the output metadata.
        reps (int, optional): Replicate count; None lets the command choose.
        output_path (str, optional): Destination file, stdout when None.
        format (OutputFormat): CSV or JSON.
        threads (int): joblib workers for replicated commands.
        verbose (bool): DEBUG logging.
        params (dict): Command-specific parameters.
    """

    command: Command
    seed: int
    reps: int | None = None
    output_path: str | None = None
    format: OutputFormat = OutputFormat.CSV
    threads: int = 1
    verbose: bool = False
    params: dict = field(default_factory=dict)


def hurst_value(text: str) -> float:
    """H of a Hermite process or field, in (0.5, 1)."""
    value = float(text)
    if not 0.5 < value < 1.0:
        raise argparse.ArgumentTypeError("H must lie in (0.5, 1)")
    return value


def fbm_hurst_value(text: str) -> float:
    """H of fractional Brownian motion, in (0, 1)."""
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("H must lie in (0, 1)")
    return value


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def positive_float(text: str) -> float:
    value = float(text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def seed_value(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"seed must be non-negative, got {text}")
    return value


def default_seed() -> int:
    """The HERMITE_LAB_SEED environment variable, or 0."""
    text = os.environ.get(SEED_VARIABLE)
    if text is None or not text.strip():
        return 0
    try:
        return seed_value(text.strip())
    except (ValueError, argparse.ArgumentTypeError):
        raise argparse.ArgumentTypeError(f"{SEED_VARIABLE} must be a non-negative integer, got {text!r}") from None


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=seed_value, default=None, help=f"master seed (default: ${SEED_VARIABLE} or 0)")
    common.add_argument("--out", type=str, default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value)
    common.add_argument("--threads", type=positive_int, default=None, help="joblib workers (default: all cores)")
    common.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    return common


def _hermite_flags(parser: argparse.ArgumentParser, q: int = 2, h_required: bool = True, hurst=hurst_value):
    parser.add_argument("--q", type=positive_int, default=q, help="Hermite order")
    parser.add_argument("--H", type=hurst, required=h_required, default=None,
                        help="Hurst index")


def build_parser() -> argparse.ArgumentParser:
    """The argparse tree of every sub-command."""
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="hermitelab", description="Hermite process simulation and inference.")
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser(Command.SIMULATE.value, parents=[common], help="sample a path or sheet")
    simulate.add_argument("--process", required=True,
                          choices=["fbm", "hermite", "rosenblatt", "sheet", "moving-average", "vasicek", "ou"])
    _hermite_flags(simulate, hurst=fbm_hurst_value)
    simulate.add_argument("--H2", type=fbm_hurst_value, default=None, help="second-axis H of a sheet")
    simulate.add_argument("--t-end", type=positive_float, default=1.0)
    simulate.add_argument("--n", type=positive_int, default=1024)
    simulate.add_argument("--lattice-n", type=positive_int, default=None, help="inner lattice (default: 4n)")
    simulate.add_argument("--inner-m", type=positive_int, default=None, help="Rosenblatt inner cells (default: n)")
    simulate.add_argument("--a", type=positive_float, default=1.0, help="mean-reversion speed")
    simulate.add_argument("--b", type=float, default=0.0, help="long-run mean")

    estimate = commands.add_parser(Command.ESTIMATE.value, parents=[common], help="estimate from a path file")
    estimate.add_argument("--what", required=True, choices=["hurst", "vasicek"])
    estimate.add_argument("--in", dest="input_path", required=True, help="t,value CSV")
    estimate.add_argument("--q", type=positive_int, default=1, help="order used by the Hurst estimator")
    estimate.add_argument("--H", type=hurst_value, default=None, help="Hurst index (vasicek)")

    qv = commands.add_parser(Command.QV.value, parents=[common], help="renormalized quadratic variation")
    _hermite_flags(qv)
    qv.add_argument("--N", type=positive_int, default=1024)
    qv.add_argument("--d", type=int, choices=[1, 2], default=1)
    qv.add_argument("--lattice-factor", type=positive_int, default=None)

    gt = commands.add_parser(Command.GT.value, parents=[common], help="quadratic functional of a moving average")
    _hermite_flags(gt)
    gt.add_argument("--t-end", type=positive_float, default=400.0)
    gt.add_argument("--n", type=positive_int, default=16384)

    cumulants = commands.add_parser(Command.CUMULANTS.value, parents=[common], help="trace cumulants")
    cumulants.add_argument("--kernel", choices=["random", "rosenblatt-pair"], default="rosenblatt-pair")
    cumulants.add_argument("--H", type=hurst_value, default=0.7)
    cumulants.add_argument("--s", type=positive_float, default=0.5)
    cumulants.add_argument("--t", type=positive_float, default=1.0)
    cumulants.add_argument("--alpha", type=float, default=1.0)
    cumulants.add_argument("--beta", type=float, default=1.0)
    cumulants.add_argument("--m", type=positive_int, default=256)
    cumulants.add_argument("--p-max", type=positive_int, default=4)

    info = commands.add_parser(Command.INFO.value, parents=[common], help="information metrics of a density")
    source = info.add_mutually_exclusive_group(required=True)
    source.add_argument("--density", choices=["gaussian", "uniform", "mixture", "student-t"])
    source.add_argument("--in", dest="input_path", help="CSV whose value column holds samples")
    info.add_argument("--nu", type=positive_float, default=10.0, help="Student-t degrees of freedom")
    info.add_argument("--bandwidth", default="silverman", help="KDE bandwidth or 'silverman'")

    conjecture = commands.add_parser(Command.CONJECTURE.value, parents=[common], help="Rosenblatt CDF probe")
    conjecture.add_argument("--H", type=hurst_value, required=True)
    conjecture.add_argument("--samples", type=positive_int, default=50000)
    conjecture.add_argument("--lattice-n", type=positive_int, default=2048)

    verify = commands.add_parser(Command.VERIFY.value, parents=[common], help="run an acceptance experiment")
    verify.add_argument("--experiment", required=True, choices=ExperimentFactory.names())
    verify.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                        help="override an experiment parameter")

    for sub in (qv, gt, verify):
        sub.add_argument("--reps", type=positive_int, default=None)
    return parser


def _overrides(parser: argparse.ArgumentParser, items) -> dict:
    overrides = {}
    for item in items:
        key, sep, text = item.partition("=")
        if not sep or not key:
            parser.error(f"--set expects KEY=VALUE, got {item!r}")
        for cast in (int, float):
            try:
                overrides[key] = cast(text)
                break
            except ValueError:
                continue
        else:
            overrides[key] = text
    return overrides


def parse_args(argv=None) -> RunConfig:
    """
    Parse and validate the command line.

    Args:
        argv (list[str], optional): Arguments without the program name; sys.argv when None.

    Returns:
        RunConfig: The validated configuration.

    Raises:
        SystemExit: With code 2 on any usage error, as argparse does.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    seed = args.seed
    if seed is None:
        try:
            seed = default_seed()
        except argparse.ArgumentTypeError as exc:
            parser.error(str(exc))
    if args.command == Command.SIMULATE.value and args.process != "fbm":
        for flag, value in (("--H", args.H), ("--H2", args.H2)):
            if value is not None and not 0.5 < value < 1.0:
                parser.error(f"{flag} must lie in (0.5, 1) for --process {args.process}, got {value}")
    if args.command == Command.ESTIMATE.value and args.what == "vasicek" and args.H is None:
        parser.error("--H is required for --what vasicek")
    params = {key: value for key, value in vars(args).items() if key not in COMMON_KEYS}
    if "overrides" in params:
        params["overrides"] = _overrides(parser, params["overrides"])
    return RunConfig(
        command=Command(args.command),
        seed=seed,
        reps=getattr(args, "reps", None),
        output_path=args.out,
        format=OutputFormat(args.format),
        threads=args.threads if args.threads is not None else cpu_count(),
        verbose=args.verbose,
        params=params,
    )
