"""
Mapping Pipeline
Parse, schedule, place, route and expand one circuit

Pass order:
    [1/5] parse and validate the configuration
    [2/5] schedule the logical circuit (ALAP by default)
    [3/5] place the qubits on the plane
    [4/5] route with SWAP insertion and ASAP window rescheduling
    [5/5] expand to physical SC cycles (only with emit=physical)

Any LsmapError raised inside a pass is re-raised with that pass's stage
label, so the command line shows "[route] ...".
"""

import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

from lsmap.arch.architecture import Architecture
from lsmap.circuit.ir import Circuit
from lsmap.circuit.qasm import read_qasm, write_qasm
from lsmap.circuit.qodg import build_qodg
from lsmap.circuit.stats import characterize
from lsmap.config import RunConfig
from lsmap.errors import LsmapError, RoutingError
from lsmap.ft.expand import PhysicalCircuit, expand, write_physical_qasm
from lsmap.ft.symbols import build_symbol_table
from lsmap.pipeline.metrics import MetricsReport, write_report
from lsmap.placement.qap import Placement, place_naive, place_smart
from lsmap.routing.router import RoutedCircuit, route, routed_latency, validate_routed
from lsmap.scheduling.emit import to_parallel_circuit
from lsmap.scheduling.policy import Schedule, SchedulePolicy
from lsmap.scheduling.solver import schedule
from lsmap.timing import TimingModel

logger = logging.getLogger(__name__)

N_STAGES = 5


@dataclass(frozen=True)
class PipelineResult:
    config: RunConfig
    source: Circuit
    schedule: Schedule
    scheduled: Circuit
    placement: Placement
    routed: RoutedCircuit
    report: MetricsReport
    physical: Optional[PhysicalCircuit] = None


@contextmanager
def stage(name: str, step: int, title: str, verbose: bool = False) -> Iterator[None]:
    """Label errors raised inside a pass and print its progress banner."""
    if verbose:
        print(f"\n[{step}/{N_STAGES}] {title}...")
    try:
        yield
    except LsmapError as exc:
        raise exc.with_stage(name)


def _say(verbose: bool, text: str) -> None:
    if verbose:
        print(f"   {text}")


def run_pipeline(
    cfg: RunConfig,
    circuit: "Circuit | str | Path",
    output: "str | Path | None" = None,
    report_path: "str | Path | None" = None,
    name: Optional[str] = None,
    verbose: bool = False,
) -> PipelineResult:
    """Map one circuit end to end.

    Args:
        cfg: Run settings; rows/cols may be None and are then sized to fit.
        circuit: Circuit or path to a QASM file.
        output: Where to write the routed (or physical) QASM.
        report_path: Where to write the JSON metrics report.
        name: Benchmark name for the report; defaults to the file stem.
        verbose: Print numbered progress banners.

    Returns:
        PipelineResult with every intermediate artefact and the report.
    """
    started = time.perf_counter()

    with stage("parse", 1, "Parsing circuit and checking configuration", verbose):
        if isinstance(circuit, Circuit):
            source = circuit
            name = name or "circuit"
        else:
            source = read_qasm(circuit)
            name = name or Path(circuit).stem
        cfg = RunConfig.for_circuit(source.n_qubits, **_overrides(cfg)).validate(source.n_qubits)
        t = TimingModel(cfg.d, cfg.arch)
        _say(verbose, f"{name}: {source.n_qubits} qubits, {source.n_gates} gates")
        _say(verbose, f"[OK] arch {cfg.arch.value}, {cfg.rows}x{cfg.cols} grid, d={cfg.d}")

    with stage("schedule", 2, f"Scheduling ({cfg.direction}, commutation {'on' if cfg.commute else 'off'})", verbose):
        policy = SchedulePolicy(cfg.direction, cfg.commute, cfg.solver)
        sched = schedule(build_qodg(source), t, policy)
        scheduled = to_parallel_circuit(source, sched)
        _say(verbose, f"[OK] L_S = {sched.makespan} cycles" + ("" if sched.optimal else " (search capped)"))

    with stage("place", 3, f"Placing qubits ({cfg.placement})", verbose):
        arch = Architecture(cfg.arch, cfg.rows, cfg.cols)
        placement = place_smart(source, arch) if cfg.placement == "smart" else place_naive(source, arch)
        _say(verbose, f"[OK] {len(placement.assign)} qubits placed")

    with stage("route", 4, f"Routing (window {cfg.window})", verbose):
        routed = route(scheduled, arch, placement, t, cfg.window, policy)
        violations = validate_routed(routed, arch, placement)
        if violations:
            raise RoutingError(f"Routed circuit fails {len(violations)} check(s), first: {violations[0]}")
        _say(verbose, f"[OK] {routed.n_swaps} SWAP(s), L_R = {routed_latency(routed)} cycles")

    physical = None
    if cfg.emit == "physical":
        with stage("expand", 5, "Expanding to physical SC cycles", verbose):
            physical = expand(routed, build_symbol_table(arch, placement, cfg.d), t, emit_physical=True)
            _say(verbose, f"[OK] {physical.n_cycles} cycles, {physical.circuit.depth} physical timesteps")
    elif verbose:
        print(f"\n[5/{N_STAGES}] Expansion skipped (emit=logical)")

    report = MetricsReport(
        benchmark=name,
        arch=cfg.arch.value,
        d=cfg.d,
        rows=cfg.rows,
        cols=cfg.cols,
        latency_scheduled=sched.makespan,
        latency_routed=routed_latency(routed),
        n_swaps=routed.n_swaps,
        n_gates=source.n_gates,
        qubit_efficiency=arch.qubit_efficiency(),
        stats=characterize(source),
        config=_config_dict(cfg),
        schedule_optimal=sched.optimal and routed.schedule.optimal,
        runtime_s=time.perf_counter() - started,
    )

    with stage("report", N_STAGES, "Writing outputs", False):
        if output is not None:
            if physical is not None:
                write_physical_qasm(physical, output)
            else:
                write_qasm(routed.circuit, output)
            _say(verbose, f"[OK] Saved circuit: {output}")
        if report_path is not None:
            write_report(report, report_path)
            _say(verbose, f"[OK] Saved report: {report_path}")

    logger.info("%s on %s: L_S=%d L_R=%d swaps=%d", name, cfg.arch.value,
                report.latency_scheduled, report.latency_routed, report.n_swaps)
    return PipelineResult(cfg, source, sched, scheduled, placement, routed, report, physical)


def _overrides(cfg: RunConfig) -> dict:
    return {f: getattr(cfg, f) for f in cfg.__dataclass_fields__}


def _config_dict(cfg: RunConfig) -> dict:
    out = _overrides(cfg)
    out["arch"] = cfg.arch.value
    return out
