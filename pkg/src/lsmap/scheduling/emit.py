"""
Parallel Circuit Emission
Turn a schedule into timestep bundles with qwait gaps, and back

Timing of a bundled circuit is replayed as follows. Each bundle starts at
the later of the previous bundle's start and the moment its operands are
free, plus any ``qwait`` cycles accumulated since the previous bundle.
``to_parallel_circuit`` inserts exactly the waits that make this replay
reproduce the schedule's start times.
"""

from collections import defaultdict

from lsmap.circuit.ir import Circuit, GateKind, Instruction
from lsmap.scheduling.policy import Schedule
from lsmap.timing import TimingModel


def to_parallel_circuit(c: Circuit, s: Schedule) -> Circuit:
    """Bundle instructions by start time and insert qwait for idle gaps.

    Args:
        c: Circuit whose non-Wait instructions are all scheduled in ``s``.
        s: Schedule over those instructions.

    Returns:
        Circuit over the same qubits; Waits of ``c`` are replaced by the
        ones the schedule needs.
    """
    position = {ins.id: i for i, ins in enumerate(c.gates())}
    by_start: dict[int, list[Instruction]] = defaultdict(list)
    for ins in c.gates():
        by_start[s.start[ins.id]].append(ins)

    next_id = c.max_id() + 1
    body: list[tuple[Instruction, ...]] = []
    previous = 0
    ready: dict[str, int] = {}
    for t in sorted(by_start):
        bundle = sorted(by_start[t], key=lambda ins: position[ins.id])
        natural = max([previous] + [ready.get(q, 0) for ins in bundle for q in ins.operands])
        if t > natural:
            body.append((Instruction(next_id, GateKind.WAIT, (), cycles=t - natural),))
            next_id += 1
        body.append(tuple(bundle))
        previous = t
        for ins in bundle:
            for q in ins.operands:
                ready[q] = t + s.latency[ins.id]
    return Circuit(c.qubits, tuple(body))


def replay_start_times(c: Circuit, t: TimingModel) -> dict[int, int]:
    """Start time of every non-Wait instruction of a bundled circuit."""
    start: dict[int, int] = {}
    previous = 0
    pending = 0
    ready: dict[str, int] = {}
    for step in c.body:
        if step[0].kind is GateKind.WAIT:
            pending += step[0].cycles
            continue
        at = max([previous] + [ready.get(q, 0) for ins in step for q in ins.operands]) + pending
        for ins in step:
            start[ins.id] = at
            for q in ins.operands:
                ready[q] = at + t.of(ins)
        previous = at
        pending = 0
    return start


def circuit_latency(c: Circuit, t: TimingModel) -> int:
    """Total cycles of a bundled circuit, trailing waits included."""
    start = replay_start_times(c, t)
    by_id = c.by_id()
    end = max((start[v] + t.of(by_id[v]) for v in start), default=0)
    trailing = 0
    for step in reversed(c.body):
        if step[0].kind is not GateKind.WAIT:
            break
        trailing += step[0].cycles
    return end + trailing
