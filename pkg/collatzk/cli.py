"""Command-line interface: `collatzk seq|table|figdata|check|verify|spot`.

Copyright (c) 2024 collatzk maintainers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import argparse
import re
import sys
from pathlib import Path
from typing import Any, Dict, List, NoReturn, Optional, Sequence, Tuple

import structlog  # type: ignore
from pydantic import ValidationError

from collatzk.analysis import FIGURE_KS, FIGURE_WINDOWS, figure_dataset
from collatzk.check import KIND_PARTNERS, KIND_STOPPING_TIME, KIND_TERMS, run_cross_check
from collatzk.dynamics import trajectory
from collatzk.enum import CheckFlags, ExitCode, OutputFormat, TrajectoryStatus
from collatzk.exceptions import CheckpointIOError, CheckpointMismatch, DomainError
from collatzk.logging import enable_console_logging
from collatzk.models import OutputRecord, Params, SweepConfig
from collatzk.render import (
    figdata_filename,
    load_table_metadata,
    render_check,
    render_figdata,
    render_report,
    render_sequence,
    render_spot,
    render_table,
    write_output,
)
from collatzk.utils import parse_natural
from collatzk.verifier import run_sweep, spot_check_large

logger = structlog.get_logger()

_WINDOW_RE = re.compile(r"^(\d+)-(\d+)$")
_CHECK_FLAGS = {
    KIND_TERMS: CheckFlags.TERMS,
    KIND_STOPPING_TIME: CheckFlags.STOPPING_TIME,
    KIND_PARTNERS: CheckFlags.PARTNERS,
}


class ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with ExitCode.USAGE."""

    def error(self, message: str) -> NoReturn:
        """Print usage and the message to stderr, then exit."""
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE, f"{self.prog}: error: {message}\n")


def _window(text: str) -> Tuple[int, int]:
    match = _WINDOW_RE.match(text.strip())
    if not match:
        raise argparse.ArgumentTypeError(f"expected LO-HI, got {text!r}")
    lo, hi = int(match.group(1)), int(match.group(2))
    if not 1 <= lo <= hi:
        raise argparse.ArgumentTypeError(f"window {text!r} must satisfy 1 <= LO <= HI")
    return lo, hi


def _natural(text: str) -> int:
    try:
        return parse_natural(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from err


def _positive(text: str) -> int:
    value = _natural(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def cmd_seq(n: int, k: int, budget: Optional[int], output: OutputRecord) -> ExitCode:
    """Print the terms of n's trajectory after n, through the first 3^k."""
    params = Params(k=k)
    traj = trajectory(n, params, budget)
    write_output(render_sequence(traj, params, output.format), output)
    if traj.status is TrajectoryStatus.BUDGET_EXHAUSTED:
        return ExitCode.BUDGET_EXHAUSTED
    if traj.status is TrajectoryStatus.CYCLE_WITHOUT_TARGET:
        return ExitCode.VERIFICATION_FAILURE
    return ExitCode.SUCCESS


def cmd_table(ks: Sequence[int], n_max: int, output: OutputRecord, budget: Optional[int] = None) -> ExitCode:
    """Print the published table layout for the given k values and columns 1..n_max."""
    if n_max < 1:
        raise DomainError(f"--n-max must be at least 1 (not {n_max})")
    write_output(render_table(ks, n_max, output.format, budget), output)
    return ExitCode.SUCCESS


def cmd_figdata(  # pylint: disable=too-many-arguments
    ks: Sequence[int],
    windows: Sequence[Tuple[int, int]],
    output: OutputRecord,
    budget: Optional[int] = None,
    jobs: int = 1,
    output_dir: Optional[Path] = None,
) -> ExitCode:
    """Emit n, t, odd_count, tag for every k and window; one file per dataset with `output_dir`."""
    datasets = []
    for k in ks:
        params = Params(k=k)
        for window in windows:
            rows = figure_dataset(range(window[0], window[1] + 1), params, budget, jobs=jobs)
            datasets.append((k, window, rows))

    if output_dir is None:
        write_output(render_figdata(datasets, output.format), output)
        return ExitCode.SUCCESS

    output_dir.mkdir(parents=True, exist_ok=True)
    for dataset in datasets:
        destination = output_dir / figdata_filename(dataset[0], dataset[1])
        record = OutputRecord(format=OutputFormat.CSV, destination=destination)
        write_output(render_figdata([dataset], OutputFormat.CSV), record)
        logger.info("Dataset written", path=str(destination), rows=len(dataset[2]))
    return ExitCode.SUCCESS


def cmd_check(  # pylint: disable=too-many-arguments
    start: int,
    end: int,
    k: int,
    budget: Optional[int],
    output: OutputRecord,
    flags: CheckFlags = CheckFlags.ALL,
) -> ExitCode:
    """Compare the closed forms with iteration for every n in [start, end]; nonzero exit on any FAIL."""
    if not 1 <= start <= end:
        raise DomainError(f"empty or invalid range {start}-{end}")
    result = run_cross_check(range(start, end + 1), Params(k=k), budget=budget, flags=flags)
    write_output(render_check(result, output.format), output)
    return ExitCode.VERIFICATION_FAILURE if result.has_failures() else ExitCode.SUCCESS


def cmd_verify(config: SweepConfig, output: OutputRecord) -> ExitCode:
    """Run a sweep and write its report; failures exit nonzero after their trajectories are dumped to stderr."""
    report = run_sweep(config)
    write_output(render_report(report, output.format), output)
    if not report.failed:
        return ExitCode.SUCCESS

    params = config.params
    for failure in report.failures:
        sys.stderr.write(render_sequence(trajectory(failure.n, params, config.budget), params, OutputFormat.TABLE))
    return ExitCode.VERIFICATION_FAILURE


def cmd_spot(n: int, k: int, budget: Optional[int], output: OutputRecord) -> ExitCode:
    """Run one, possibly huge, start value and report its stopping time and peak bit length."""
    result = spot_check_large(n, Params(k=k), budget)
    write_output(render_spot(result, output.format), output)
    if result.status is TrajectoryStatus.REACHED_TARGET:
        return ExitCode.SUCCESS
    return ExitCode.BUDGET_EXHAUSTED


def _add_output_arguments(parser: argparse.ArgumentParser, default: OutputFormat) -> None:
    parser.add_argument(
        "--format",
        choices=[fmt.value for fmt in OutputFormat],
        default=default.value,
        help=f"output format (default: {default.value})",
    )
    parser.add_argument("--output", type=Path, default=None, help="write to this file instead of standard output")


def build_parser() -> ArgumentParser:
    """Build the argument parser for every subcommand."""
    parser = ArgumentParser(prog="collatzk", description="Engine for the generalized Collatz map 3n+3^k.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging to stderr (-vv for debug)")
    parser.add_argument("--log-json", action="store_true", help="log one JSON object per event")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    seq = subparsers.add_parser("seq", help="terms of one trajectory through the first 3^k")
    seq.add_argument("n", type=_natural, help="start value, e.g. 27 or 2^100-1")
    seq.add_argument("--k", type=int, default=0, help="exponent k of the map 3n+3^k (default: 0)")
    seq.add_argument("--budget", type=_positive, default=None, help="maximum number of steps")
    _add_output_arguments(seq, OutputFormat.TABLE)

    metadata = load_table_metadata()
    table = subparsers.add_parser("table", help="the published table of sequences")
    table.add_argument("--k", type=int, nargs="+", default=list(metadata.ks), help="k values (default: 0 1 2 3 4)")
    table.add_argument("--n-max", type=int, default=metadata.n_max, help="last column (default: 17)")
    table.add_argument("--budget", type=_positive, default=None, help="maximum steps for columns beyond the table")
    _add_output_arguments(table, OutputFormat.TABLE)

    figdata = subparsers.add_parser("figdata", help="n, t, odd_count, tag datasets of the stopping-time figures")
    figdata.add_argument("--k", type=int, nargs="+", default=list(FIGURE_KS), help="k values (default: 0 1 2)")
    figdata.add_argument(
        "--window",
        type=_window,
        nargs="+",
        default=list(FIGURE_WINDOWS),
        help="inclusive windows LO-HI (default: 1-100 500-600 900-1000)",
    )
    figdata.add_argument("--budget", type=_positive, default=None, help="maximum steps per n")
    figdata.add_argument("--jobs", type=_positive, default=1, help="worker processes (default: 1)")
    figdata.add_argument("--output-dir", type=Path, default=None, help="write one CSV file per dataset here")
    _add_output_arguments(figdata, OutputFormat.CSV)

    check = subparsers.add_parser("check", help="cross-check the closed forms against iteration")
    check.add_argument("--k", type=int, default=0, help="exponent k (default: 0)")
    check.add_argument("--start", type=_positive, default=1, help="first n (default: 1)")
    check.add_argument("--end", type=_positive, required=True, help="last n, inclusive")
    check.add_argument("--budget", type=_positive, default=None, help="maximum steps per n")
    check.add_argument(
        "--checks",
        nargs="+",
        choices=list(_CHECK_FLAGS),
        default=list(_CHECK_FLAGS),
        help="which closed forms to compare (default: all)",
    )
    check.add_argument(
        "--all-pairs",
        action="store_true",
        help="compare each n with every earlier n of the same stopping time, not only the first",
    )
    _add_output_arguments(check, OutputFormat.TABLE)

    verify = subparsers.add_parser("verify", help="verify that every n of a range reaches 3^k")
    verify.add_argument("--k", type=int, default=0, help="exponent k (default: 0)")
    verify.add_argument("--start", type=_natural, default=1, help="first n (default: 1)")
    verify.add_argument("--end", type=_natural, required=True, help="last n, inclusive")
    verify.add_argument("--budget", type=_positive, default=None, help="maximum steps per n")
    verify.add_argument("--chunk", type=_positive, default=10_000, help="integers per chunk (default: 10000)")
    verify.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: CPU count)")
    verify.add_argument("--checkpoint", type=Path, default=None, help="checkpoint file; rerun to resume")
    _add_output_arguments(verify, OutputFormat.TABLE)

    spot = subparsers.add_parser("spot", help="stopping time and peak size of one very large n")
    spot.add_argument("n", type=_natural, help="start value, e.g. 2^1000-1")
    spot.add_argument("--k", type=int, default=0, help="exponent k (default: 0)")
    spot.add_argument("--budget", type=_positive, default=None, help="maximum number of steps")
    _add_output_arguments(spot, OutputFormat.TABLE)

    return parser


def _dispatch(args: argparse.Namespace) -> ExitCode:
    output = OutputRecord(format=OutputFormat(args.format), destination=args.output)
    if args.command == "seq":
        return cmd_seq(args.n, args.k, args.budget, output)
    if args.command == "table":
        return cmd_table(args.k, args.n_max, output, args.budget)
    if args.command == "figdata":
        return cmd_figdata(args.k, args.window, output, args.budget, args.jobs, args.output_dir)
    if args.command == "check":
        flags = CheckFlags.NONE
        for name in args.checks:
            flags |= _CHECK_FLAGS[name]
        if args.all_pairs:
            flags |= CheckFlags.ALL_PAIRS
        return cmd_check(args.start, args.end, args.k, args.budget, output, flags)
    if args.command == "verify":
        settings: Dict[str, Any] = {
            "k": args.k,
            "start": args.start,
            "end": args.end,
            "budget": args.budget,
            "chunk_size": args.chunk,
            "checkpoint_path": args.checkpoint,
        }
        if args.jobs is not None:
            settings["parallelism"] = args.jobs
        return cmd_verify(SweepConfig(**settings), output)
    return cmd_spot(args.n, args.k, args.budget, output)


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the `collatzk` command; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    enable_console_logging(verbosity=args.verbose, json_output=args.log_json)

    try:
        return int(_dispatch(args))
    except (ValidationError, DomainError, CheckpointMismatch) as err:
        sys.stderr.write(f"{parser.prog}: error: {err}\n")
        return int(ExitCode.USAGE)
    except (CheckpointIOError, OSError) as err:
        sys.stderr.write(f"{parser.prog}: I/O error: {err}\n")
        return int(ExitCode.IO_ERROR)
