"""
Comparison Experiments
Cross-product runs behind the scheduling, architecture and placement comparisons

Three modes:
    commutation - scheduled latency with CNOT commutation off vs on
    arch        - routed overheads on the checkerboard vs the tile plane
    placement   - routed overheads after naive vs smart placement

Each mode returns one polars row per (benchmark, distance[, arch]) with
the raw numbers and the relative reduction in percent.
"""

import logging
from dataclasses import replace
from pathlib import Path
from typing import Mapping

import polars as pl

from lsmap.circuit.ir import Circuit
from lsmap.circuit.qodg import build_qodg
from lsmap.config import RunConfig
from lsmap.errors import ConfigError
from lsmap.pipeline.run import run_pipeline
from lsmap.scheduling.policy import SchedulePolicy
from lsmap.scheduling.solver import schedule
from lsmap.timing import ArchKind, TimingModel

logger = logging.getLogger(__name__)

EXPERIMENT_MODES = ("commutation", "arch", "placement")
ARCHS = (ArchKind.CHECKERBOARD, ArchKind.TILE)


def reduction_pct(before: float, after: float) -> float:
    """Relative reduction from ``before`` to ``after`` in percent; 0 when before is 0."""
    return 100.0 * (before - after) / before if before else 0.0


def _config(circuit: Circuit, **overrides) -> RunConfig:
    return RunConfig.for_circuit(circuit.n_qubits, **overrides).validate(circuit.n_qubits)


# ============================================================================
# MODES
# ============================================================================

def _commutation(name: str, circuit: Circuit, d: int, overrides: dict) -> list[dict]:
    rows = []
    g = build_qodg(circuit)
    for arch in ARCHS:
        cfg = _config(circuit, **{**overrides, "arch": arch, "d": d})
        t = TimingModel(d, arch)
        latency = {}
        for commute in (False, True):
            sched = schedule(g, t, SchedulePolicy(cfg.direction, commute, cfg.solver))
            latency[commute] = sched.makespan
        rows.append({
            "benchmark": name,
            "d": d,
            "arch": arch.value,
            "latency_no_commute": latency[False],
            "latency_commute": latency[True],
            "reduction_pct": reduction_pct(latency[False], latency[True]),
        })
    return rows


def _arch(name: str, circuit: Circuit, d: int, overrides: dict) -> list[dict]:
    reports = {}
    for arch in ARCHS:
        cfg = _config(circuit, **{**overrides, "arch": arch, "d": d})
        reports[arch] = run_pipeline(cfg, circuit, name=name).report
    c, t = reports[ArchKind.CHECKERBOARD], reports[ArchKind.TILE]
    return [{
        "benchmark": name,
        "d": d,
        "latency_overhead_c": c.latency_overhead,
        "latency_overhead_t": t.latency_overhead,
        "operation_overhead_c": c.operation_overhead,
        "operation_overhead_t": t.operation_overhead,
        "n_swaps_c": c.n_swaps,
        "n_swaps_t": t.n_swaps,
        "qubit_efficiency_c": c.qubit_efficiency,
        "qubit_efficiency_t": t.qubit_efficiency,
        "latency_reduction_pct": reduction_pct(c.latency_overhead, t.latency_overhead),
        "operation_reduction_pct": reduction_pct(c.operation_overhead, t.operation_overhead),
    }]


def _placement(name: str, circuit: Circuit, d: int, overrides: dict) -> list[dict]:
    rows = []
    for arch in ARCHS:
        base = _config(circuit, **{**overrides, "arch": arch, "d": d})
        naive = run_pipeline(replace(base, placement="naive"), circuit, name=name).report
        smart = run_pipeline(replace(base, placement="smart"), circuit, name=name).report
        rows.append({
            "benchmark": name,
            "d": d,
            "arch": arch.value,
            "n_swaps_naive": naive.n_swaps,
            "n_swaps_smart": smart.n_swaps,
            "latency_overhead_naive": naive.latency_overhead,
            "latency_overhead_smart": smart.latency_overhead,
            "swap_reduction_pct": reduction_pct(naive.n_swaps, smart.n_swaps),
            "latency_reduction_pct": reduction_pct(naive.latency_overhead, smart.latency_overhead),
        })
    return rows


_MODES = {"commutation": _commutation, "arch": _arch, "placement": _placement}


def compare_experiment(mode: str, circuits: Mapping[str, Circuit], distances: tuple[int, ...] = (3,),
                       **overrides) -> pl.DataFrame:
    """Run one comparison over every benchmark and distance.

    Args:
        mode: One of EXPERIMENT_MODES.
        circuits: Benchmark name to circuit.
        distances: Code distances to repeat the comparison at.
        **overrides: RunConfig fields shared by every run (window, solver, ...).

    Returns:
        DataFrame with one row per benchmark, distance and (where it varies) arch.
    """
    if mode not in _MODES:
        raise ConfigError(f"Unknown experiment mode: {mode}. Use one of {EXPERIMENT_MODES}")
    overrides = {k: v for k, v in overrides.items() if k not in ("arch", "d")}
    rows = []
    for name, circuit in circuits.items():
        for d in distances:
            logger.info("compare %s: %s at d=%d", mode, name, d)
            rows.extend(_MODES[mode](name, circuit, d, overrides))
    return pl.DataFrame(rows)


# ============================================================================
# OUTPUT
# ============================================================================

def format_comparison(df: pl.DataFrame, title: str = "COMPARISON RESULTS") -> str:
    """Aligned text table: text columns left-aligned, numbers right-aligned."""
    widths = {
        col: max(len(col), *(len(_cell(v)) for v in df[col].to_list())) if df.height else len(col)
        for col in df.columns
    }
    numeric = {col for col, dtype in zip(df.columns, df.dtypes) if dtype.is_numeric()}
    width = max(80, sum(widths.values()) + 2 * len(widths))

    def row(values: list[str]) -> str:
        cells = [
            f"{v:>{widths[col]}}" if col in numeric else f"{v:<{widths[col]}}"
            for col, v in zip(df.columns, values)
        ]
        return "  ".join(cells).rstrip()

    lines = ["=" * width, title, "=" * width, "", row(df.columns), "-" * width]
    for record in df.iter_rows():
        lines.append(row([_cell(v) for v in record]))
    lines.append("=" * width)
    return "\n".join(lines) + "\n"


def _cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def write_comparison(df: pl.DataFrame, csv_path: "str | Path", txt_path: "str | Path | None" = None,
                     title: str = "COMPARISON RESULTS") -> None:
    csv_path = Path(csv_path)
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    df.write_csv(csv_path)
    print(f"   [OK] Saved table: {csv_path}")
    if txt_path is not None:
        txt_path = Path(txt_path)
        txt_path.parent.mkdir(parents=True, exist_ok=True)
        txt_path.write_text(format_comparison(df, title), encoding="utf-8")
        print(f"   [OK] Saved summary: {txt_path}")
