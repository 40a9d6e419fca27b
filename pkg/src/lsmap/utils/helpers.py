"""
Console Helpers
Rich tables for stats, timing, verification results and comparisons
"""

from typing import Iterable, Mapping, Optional

import polars as pl
from rich.console import Console
from rich.table import Table

from lsmap.circuit.stats import CircuitStats
from lsmap.surgery.verify import CheckResult
from lsmap.timing import ArchKind, TimingModel


def _console(console: Optional[Console]) -> Console:
    return console or Console()


def print_frame(df: pl.DataFrame, title: str = "", console: Optional[Console] = None) -> None:
    """Print any polars frame as a rich table; floats are shown to 3 decimals."""
    table = Table(title=f"{title} ({df.height} rows)" if title else None)
    numeric = {col for col, dtype in zip(df.columns, df.dtypes) if dtype.is_numeric()}
    for col in df.columns:
        if col in numeric:
            table.add_column(col, style="green", justify="right")
        else:
            table.add_column(col, style="cyan", no_wrap=True)
    for record in df.iter_rows():
        table.add_row(*(f"{v:.3f}" if isinstance(v, float) else str(v) for v in record))
    _console(console).print(table)


def stats_frame(stats: Mapping[str, CircuitStats]) -> pl.DataFrame:
    return pl.DataFrame([{"benchmark": name, **s.as_dict()} for name, s in stats.items()])


def print_stats(stats: Mapping[str, CircuitStats], console: Optional[Console] = None) -> None:
    """Benchmark characterization with the ratios shown as percentages."""
    table = Table(title="Circuit Characterization")
    table.add_column("Benchmark", style="cyan", no_wrap=True)
    for header in ("Qubits", "#Gates", "#CNOT", "#SWAP", "Depth", "Rcg %", "Rcd %", "Rtsg %"):
        table.add_column(header, style="green", justify="right")
    for name, s in stats.items():
        table.add_row(
            name, str(s.n_qubits), str(s.n_gates), str(s.n_cnots), str(s.n_swaps), str(s.depth),
            f"{100 * s.rcg:.2f}", f"{100 * s.rcd:.2f}", f"{100 * s.rtsg:.2f}",
        )
    _console(console).print(table)


def timing_frame(d: int) -> pl.DataFrame:
    """Duration of every logical operation on both architectures at distance d."""
    c = TimingModel(d, ArchKind.CHECKERBOARD).table()
    t = TimingModel(d, ArchKind.TILE).table()
    return pl.DataFrame({"operation": list(c), "c_arch": list(c.values()), "t_arch": [t[k] for k in c]})


def print_timing(d: int, console: Optional[Console] = None) -> None:
    print_frame(timing_frame(d), title=f"Durations in SC cycles at d={d}", console=console)


def print_checks(results: Iterable[CheckResult], console: Optional[Console] = None) -> bool:
    """Pass/fail table of verification results; returns True when all passed."""
    table = Table(title="Lattice Surgery Verification")
    table.add_column("Check", style="cyan", no_wrap=True)
    table.add_column("Result")
    table.add_column("Detail", style="blue", max_width=70)
    all_ok = True
    for r in results:
        all_ok &= r.ok
        table.add_row(r.name, "[green]PASS[/green]" if r.ok else "[red]FAIL[/red]", r.detail)
    _console(console).print(table)
    return all_ok
