"""
Command Line
lsmap map | verify | compare | stats | timing

Usage:
    lsmap map --arch t --rows 3 --cols 3 -d 3 --sched alap --commute on \\
        --place smart --window 10 --emit logical in.qasm -o out.qasm --report report.json
    lsmap verify
    lsmap compare --mode commutation -d 3 -d 7 a.qasm b.qasm --csv out.csv
    lsmap stats a.qasm b.qasm
    lsmap timing -d 5

Set LSMAP_LOG=DEBUG (or --log-level) for routing and search details.
"""

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from rich.console import Console
from rich.markup import escape

from lsmap.circuit.benchmarks import steane_encoder
from lsmap.circuit.qasm import read_qasm
from lsmap.circuit.stats import characterize
from lsmap.config import (
    DEFAULT_DISTANCE,
    DEFAULT_WINDOW,
    DIRECTIONS,
    EMIT_LEVELS,
    OUTPUT_DIR,
    PLACEMENTS,
    SOLVERS,
    RunConfig,
)
from lsmap.errors import LsmapError, TimingError
from lsmap.pipeline.experiments import EXPERIMENT_MODES, compare_experiment, write_comparison
from lsmap.pipeline.run import run_pipeline
from lsmap.surgery.verify import run_suite
from lsmap.timing import ArchKind
from lsmap.utils.helpers import print_checks, print_frame, print_stats, print_timing
from lsmap.utils.logging import setup_logging

console = Console()


def _on_off(value: str) -> bool:
    v = value.strip().lower()
    if v in ("on", "true", "1", "yes"):
        return True
    if v in ("off", "false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"Expected on/off, got {value!r}")


def _arch(value: str) -> ArchKind:
    try:
        return ArchKind.parse(value)
    except TimingError as exc:
        raise argparse.ArgumentTypeError(exc.message) from None


def _circuits(paths: Sequence[str]) -> dict[str, object]:
    """Benchmarks by name; no paths means the shipped Steane encoder."""
    if not paths:
        return {"steane_encoder": steane_encoder()}
    return {Path(p).stem: read_qasm(p) for p in paths}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lsmap", description="Lattice-surgery circuit mapping")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR (default: $LSMAP_LOG)")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("map", help="Schedule, place, route and optionally expand one circuit")
    m.add_argument("input", help="Input QASM file")
    m.add_argument("--arch", type=_arch, default=ArchKind.TILE, help="c (checkerboard) or t (tile)")
    m.add_argument("--rows", type=int, default=None)
    m.add_argument("--cols", type=int, default=None)
    m.add_argument("-d", "--distance", type=int, default=DEFAULT_DISTANCE)
    m.add_argument("--sched", choices=DIRECTIONS, default="alap")
    m.add_argument("--commute", type=_on_off, default=True, help="on/off")
    m.add_argument("--solver", choices=SOLVERS, default="exact")
    m.add_argument("--place", choices=PLACEMENTS, default="smart")
    m.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    m.add_argument("--emit", choices=EMIT_LEVELS, default="logical")
    m.add_argument("-o", "--output", default=None, help="Routed (or physical) QASM output")
    m.add_argument("--report", default=None, help="JSON metrics report")
    m.add_argument("--html", default=None, help="HTML run report")
    m.add_argument("--plot", default=None, help="Layout snapshot figure")
    m.add_argument("-q", "--quiet", action="store_true")

    sub.add_parser("verify", help="Run the lattice-surgery verification suite")

    c = sub.add_parser("compare", help="Run a comparison experiment over benchmarks")
    c.add_argument("inputs", nargs="*", help="QASM files (default: the Steane encoder)")
    c.add_argument("--mode", choices=EXPERIMENT_MODES, required=True)
    c.add_argument("-d", "--distance", type=int, action="append", dest="distances")
    c.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    c.add_argument("--solver", choices=SOLVERS, default="exact")
    c.add_argument("--csv", default=None)
    c.add_argument("--txt", default=None)
    c.add_argument("--plot", default=None)

    s = sub.add_parser("stats", help="Characterize circuits")
    s.add_argument("inputs", nargs="*", help="QASM files (default: the Steane encoder)")

    t = sub.add_parser("timing", help="Print the duration table")
    t.add_argument("-d", "--distance", type=int, default=DEFAULT_DISTANCE)
    return parser


# ============================================================================
# SUBCOMMANDS
# ============================================================================

def cmd_map(args: argparse.Namespace) -> int:
    cfg = RunConfig(
        arch=args.arch,
        rows=args.rows,
        cols=args.cols,
        d=args.distance,
        direction=args.sched,
        commute=args.commute,
        solver=args.solver,
        placement=args.place,
        window=args.window,
        emit=args.emit,
    )
    result = run_pipeline(cfg, args.input, output=args.output, report_path=args.report,
                          verbose=not args.quiet)
    report = result.report
    if not args.quiet:
        print(f"\n   L_S = {report.latency_scheduled}, L_R = {report.latency_routed}, "
              f"SWAPs = {report.n_swaps}")
        print(f"   latency overhead {report.latency_overhead:.1%}, "
              f"operation overhead {report.operation_overhead:.1%}, E_q = {report.qubit_efficiency:.3f}")
    if args.html or args.plot:
        from lsmap.arch.architecture import Architecture
        from lsmap.utils.visualization import create_mapping_html, plot_layout_trace

        if args.html:
            create_mapping_html(result, args.html)
        if args.plot:
            a = Architecture(result.config.arch, result.config.rows, result.config.cols)
            plot_layout_trace(result.routed.layout_trace, a, args.plot)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    return 0 if print_checks(run_suite(), console) else 1


def cmd_compare(args: argparse.Namespace) -> int:
    distances = tuple(args.distances or (DEFAULT_DISTANCE,))
    df = compare_experiment(args.mode, _circuits(args.inputs), distances,
                            window=args.window, solver=args.solver)
    print_frame(df, title=f"{args.mode} comparison", console=console)
    if args.csv or args.txt:
        csv_path = args.csv or OUTPUT_DIR / f"compare_{args.mode}.csv"
        write_comparison(df, csv_path, args.txt, title=f"{args.mode.upper()} COMPARISON")
    if args.plot:
        from lsmap.utils.visualization import plot_comparison

        metrics = [col for col in df.columns if col.endswith("_pct")]
        plot_comparison(df, metrics, args.plot, hue="arch" if "arch" in df.columns else None)
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    print_stats({name: characterize(c) for name, c in _circuits(args.inputs).items()}, console)
    return 0


def cmd_timing(args: argparse.Namespace) -> int:
    print_timing(args.distance, console)
    return 0


COMMANDS = {
    "map": cmd_map,
    "verify": cmd_verify,
    "compare": cmd_compare,
    "stats": cmd_stats,
    "timing": cmd_timing,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        setup_logging(args.log_level)
        return COMMANDS[args.command](args)
    except (LsmapError, OSError) as exc:
        # stage-labelled text, e.g. "[route] No path from ..."
        console.print(f"[red]error:[/red] {escape(str(exc))}", highlight=False)
        return 1


if __name__ == "__main__":
    sys.exit(main())
