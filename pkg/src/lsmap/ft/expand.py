"""
FT Expansion
Translate a routed logical circuit into physical surface-code cycles

Every logical instruction occupies [S, S + T) in SC cycles. For each
global cycle the expander emits the transversal slot (the physical gates
every active template asks for, plus the patch preparations, magic-state
injections and patch measurements that open a surgery block) followed
by one ESM round. The round covers the home patch of every location no
surgery is running on, every patch a surgery block keeps live (ancilla
and magic patches included) and the seam checks of every open merge; it
runs past the 8 steps of the patch round when the seam CNOTs need more.
A ``qwait`` therefore turns into idle ESM rounds.

Spans (which cycles each logical instruction covers, and which phase
its surgery is in) are computed for any distance; the physical listing
needs the pre-scheduled d=3 ESM round.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from lsmap.arch.architecture import Location
from lsmap.circuit.ir import Circuit, GateKind, Instruction, canonical_names
from lsmap.errors import ExpansionError
from lsmap.ft.esm import DATA_QUBITS_D3, DATA_SETS_D3, esm_round
from lsmap.ft.lattice import MEASURE_KIND, PREP_KIND, SurgeryBlock, seam_checks, seam_data, surgery_blocks
from lsmap.ft.library import template
from lsmap.ft.symbols import PatchBlock, QSymbolTable
from lsmap.routing.router import RoutedCircuit
from lsmap.scheduling.emit import circuit_latency, replay_start_times
from lsmap.timing import TimingModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CycleSpan:
    """Cycles [start, end) of one logical instruction and the phase of each."""

    instruction: Instruction
    locations: tuple[Location, ...]
    start: int
    end: int
    phases: tuple[str, ...]


@dataclass(frozen=True)
class PhysicalCircuit:
    """Physical expansion of a routed circuit.

    ``circuit`` is None when only spans were requested. ``cycle_of_step``
    gives the SC cycle every physical timestep belongs to.
    """

    d: int
    n_cycles: int
    spans: tuple[CycleSpan, ...]
    circuit: Optional[Circuit] = None
    cycle_of_step: tuple[int, ...] = ()

    def cycles_of(self, instruction_id: int) -> int:
        for span in self.spans:
            if span.instruction.id == instruction_id:
                return span.end - span.start
        raise ExpansionError(f"No logical instruction {instruction_id} in this expansion")


def _spans(rc: RoutedCircuit, t: TimingModel) -> list[CycleSpan]:
    start = replay_start_times(rc.circuit, t)
    spans = []
    for ins in rc.circuit.gates():
        if ins.id not in rc.locations:
            raise ExpansionError(f"No location recorded for instruction {ins.id} ({ins.qasm()})")
        cycles = template(ins.kind, t.arch, t.d)
        if len(cycles) != t.of(ins):
            raise ExpansionError(
                f"Template for {ins.kind.value} has {len(cycles)} cycles, timing model says {t.of(ins)}"
            )
        spans.append(CycleSpan(
            instruction=ins,
            locations=rc.locations[ins.id],
            start=start[ins.id],
            end=start[ins.id] + len(cycles),
            phases=tuple(c.phase for c in cycles),
        ))
    return spans


# ============================================================================
# PHYSICAL CYCLES
# ============================================================================

PhysicalOp = tuple[GateKind, tuple[str, ...]]


class _Steps:
    """Timesteps of one SC cycle with the physical qubits each one uses."""

    def __init__(self):
        self.ops: list[list[PhysicalOp]] = []
        self.busy: list[set[str]] = []

    def free_from(self, step: int, qubits: tuple[str, ...]) -> int:
        while step < len(self.busy) and not self.busy[step].isdisjoint(qubits):
            step += 1
        return step

    def put(self, step: int, kind: GateKind, operands: tuple[str, ...]) -> int:
        while len(self.ops) <= step:
            self.ops.append([])
            self.busy.append(set())
        self.ops[step].append((kind, operands))
        self.busy[step].update(operands)
        return step

    def add(self, after: int, kind: GateKind, *operands: str) -> int:
        """Place an op in the first step past ``after`` where its qubits are free."""
        return self.put(self.free_from(after + 1, operands), kind, operands)


def _pack(ops) -> list[list[PhysicalOp]]:
    # per-qubit order is kept; each op lands right after the last op on its qubit
    steps = _Steps()
    last: dict[str, int] = {}
    for kind, q in ops:
        last[q] = steps.put(last.get(q, -1) + 1, kind, (q,))
    return steps.ops


def _block_slot(qs: QSymbolTable, block: SurgeryBlock) -> list[tuple[GateKind, str]]:
    slot = []
    for patch, basis in block.measures:
        slot.extend((MEASURE_KIND[basis], qs.patch_qubit(patch, local)) for local in DATA_QUBITS_D3)
    for patch, basis in block.preps:
        slot.extend((PREP_KIND[basis], qs.patch_qubit(patch, local)) for local in DATA_QUBITS_D3)
    if block.inject is not None:
        patch, kind = block.inject
        slot.append((kind, qs.patch_qubit(patch, DATA_QUBITS_D3[0])))
    return slot


def _check_phase(span: CycleSpan, block: SurgeryBlock, offset: int) -> None:
    phase = span.phases[offset]
    if "merge" in phase and not block.merges:
        raise ExpansionError(
            f"{span.instruction.qasm()}: cycle {span.start + offset} is tagged '{phase}' but merges nothing"
        )


def _esm_patches(qs: QSymbolTable, active, cycle: int) -> list[str]:
    owned = {loc for span, _ in active for loc in span.locations}
    idle = [qs.home(loc) for loc in qs.by_location if loc not in owned]
    claimed: dict[str, Optional[int]] = dict.fromkeys(idle)
    live: set[str] = set(idle)
    for span, block in active:
        v = span.instruction.id
        for patch in block.patches:
            if patch in claimed and claimed[patch] != v:
                other = "an idle location" if claimed[patch] is None else f"instruction {claimed[patch]}"
                raise ExpansionError(f"Patch {patch} is used by {other} and instruction {v} in cycle {cycle}")
            claimed[patch] = v
        live.update(block.live)
    return sorted(live, key=lambda name: qs.block(name).base)


def _esm_steps(qs: QSymbolTable, round_: Circuit, active, cycle: int) -> list[list[PhysicalOp]]:
    """One ESM round on every live patch plus the seam checks of every open merge."""
    steps = _Steps()
    for name in _esm_patches(qs, active, cycle):
        rename = {local: qs.patch_qubit(name, local) for local in round_.qubits}
        for k, step in enumerate(round_.body):
            for ins in step:
                steps.put(k, ins.kind, tuple(rename[q] for q in ins.operands))
    for _, block in active:
        for p, q, basis in block.merges:
            _seam_round(qs, steps, qs.seam(p, q), basis)
    return steps.ops


def _seam_round(qs: QSymbolTable, steps: _Steps, seam: PatchBlock, basis: str) -> None:
    first, second = seam.between
    near, far = seam_data(seam.orientation)
    for check in seam_checks(qs.d, basis):
        ancilla = f"q{seam.physical(check.ancilla)}"
        data = [qs.patch_qubit(patch, side[i]) for i in check.pairs
                for patch, side in ((first, near), (second, far))]
        s = steps.add(-1, GateKind.PREPZ, ancilla)
        if check.basis == "X":
            s = steps.add(s, GateKind.H, ancilla)
        for dq in data:
            pair = (ancilla, dq) if check.basis == "X" else (dq, ancilla)
            s = steps.add(s, GateKind.CNOT, *pair)
        if check.basis == "X":
            s = steps.add(s, GateKind.H, ancilla)
        steps.add(s, GateKind.MEASZ, ancilla)


def expand(rc: RoutedCircuit, qs: QSymbolTable, t: TimingModel,
           emit_physical: Optional[bool] = None) -> PhysicalCircuit:
    """Expand a routed circuit into SC cycles.

    Args:
        rc: Routed circuit; its recorded locations address the patches.
        qs: Physical blocks per location.
        t: Timing model (fixes d and the architecture).
        emit_physical: Build the physical listing; defaults to ``t.d == 3``.

    Returns:
        PhysicalCircuit whose cycle count equals the routed latency.
    """
    if qs.d != t.d:
        raise ExpansionError(f"Symbol table is for d={qs.d}, timing model for d={t.d}")
    emit_physical = (t.d == 3) if emit_physical is None else emit_physical
    spans = _spans(rc, t)
    n_cycles = circuit_latency(rc.circuit, t)
    if not emit_physical:
        return PhysicalCircuit(t.d, n_cycles, tuple(spans))

    round_ = esm_round(t.d)
    transversal: dict[int, list[tuple[GateKind, str]]] = defaultdict(list)
    active: dict[int, list[tuple[CycleSpan, SurgeryBlock]]] = defaultdict(list)
    for span in spans:
        cycles = template(span.instruction.kind, t.arch, t.d)
        for k, cycle in enumerate(cycles):
            for gate, data_set in cycle.transversal:
                for loc in span.locations:
                    transversal[span.start + k].extend(
                        (gate, qs.physical_name(loc, local)) for local in DATA_SETS_D3[data_set]
                    )
        blocks = surgery_blocks(qs, span.instruction, span.locations, len(cycles) // t.d)
        for b, block in enumerate(blocks):
            _check_phase(span, block, b * t.d)
            first = span.start + b * t.d
            transversal[first].extend(_block_slot(qs, block))
            for k in range(t.d):
                active[first + k].append((span, block))

    body: list[tuple[Instruction, ...]] = []
    cycle_of_step: list[int] = []
    next_id = 0
    for cycle in range(n_cycles):
        steps = _pack(transversal.get(cycle, ()))
        steps += _esm_steps(qs, round_, active.get(cycle, ()), cycle)
        for step in steps:
            bundle = []
            for kind, operands in step:
                bundle.append(Instruction(next_id, kind, operands))
                next_id += 1
            body.append(tuple(bundle))
            cycle_of_step.append(cycle)

    circuit = Circuit(canonical_names(qs.n_physical), tuple(body))
    logger.debug("Expanded %d logical instructions into %d cycles, %d physical timesteps",
                 len(spans), n_cycles, len(body))
    return PhysicalCircuit(t.d, n_cycles, tuple(spans), circuit, tuple(cycle_of_step))


def emit_physical_qasm(pc: PhysicalCircuit) -> str:
    """Physical listing with a ``# cycle k`` line before each SC cycle."""
    if pc.circuit is None:
        raise ExpansionError(f"No physical listing at d={pc.d}; only cycle spans were built")
    lines = [f"qubits {pc.circuit.n_qubits}"]
    previous = None
    for cycle, step in zip(pc.cycle_of_step, pc.circuit.body):
        if cycle != previous:
            lines.append(f"# cycle {cycle}")
            previous = cycle
        if len(step) == 1:
            lines.append(step[0].qasm())
        else:
            lines.append("{ " + " | ".join(ins.qasm() for ins in step) + " }")
    return "\n".join(lines) + "\n"


def write_physical_qasm(pc: PhysicalCircuit, path: "str | Path") -> None:
    Path(path).write_text(emit_physical_qasm(pc), encoding="utf-8")
