"""
Sliding-Window Router
Insert SWAPs so every two-qubit gate runs between neighbouring locations

The scheduled circuit is streamed through a buffer of ``window``
instructions. Each iteration scans the first half of the buffer for a
two-qubit gate whose operands are not neighbours under the layout that
holds at that point of the buffer. For the first such gate, every
shortest path that carries the control next to the target is scored:

    score = sum over the path's SWAPs of (SWAP duration - look-back credit)
          + SWAP duration x hops every later buffered gate would still need

The look-back credit of a SWAP is the number of its cycles that overlap
the instructions ahead of the gate, rescheduled ASAP from the emitted
ready times.

The cheapest path (ties broken by the smaller hop sequence) becomes a
chain of flagged SWAP instructions inserted right before the gate. When
the scan region is clean, the buffer head is emitted and the layout is
advanced. Locations no logical qubit occupies are filled with free
qubits so a path may cross them.

The emitted instructions are finally rescheduled ASAP, with patches
shared by two primitives turned into non-overlap constraints, and
bundled back into timesteps.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import islice
from typing import Mapping, Optional

import networkx as nx

from lsmap.arch.architecture import Architecture, Location, conflicting_pairs
from lsmap.circuit.ir import Circuit, GateKind, Instruction
from lsmap.circuit.qodg import build_qodg
from lsmap.config import DEFAULT_WINDOW, ROUTING_PATH_LIMIT
from lsmap.errors import RoutingError
from lsmap.placement.qap import Placement
from lsmap.scheduling.emit import circuit_latency, replay_start_times, to_parallel_circuit
from lsmap.scheduling.policy import Direction, Schedule, SchedulePolicy, Violation
from lsmap.scheduling.solver import schedule
from lsmap.timing import TimingModel

logger = logging.getLogger(__name__)


# ============================================================================
# RESULT TYPES
# ============================================================================

@dataclass(frozen=True)
class LayoutSnapshot:
    """Occupancy after the first ``timestep`` bundles of the routed circuit."""

    timestep: int
    occupancy: dict[Location, Optional[str]]


@dataclass(frozen=True)
class PathRecord:
    """The path chosen for one routed gate.

    ``hops`` runs from the control's location to the location it ends on,
    next to ``target``.
    """

    gate_id: int
    kind: GateKind
    target: Location
    hops: tuple[Location, ...]
    score: int

    @property
    def source(self) -> Location:
        return self.hops[0]

    @property
    def n_swaps(self) -> int:
        return len(self.hops) - 1


@dataclass(frozen=True)
class RoutedCircuit:
    """Routed circuit plus everything needed to replay and check it."""

    circuit: Circuit
    schedule: Schedule
    n_swaps: int
    layout_trace: tuple[LayoutSnapshot, ...]
    source: Circuit
    timing: TimingModel
    initial_occupancy: dict[Location, Optional[str]]
    final_occupancy: dict[Location, Optional[str]]
    paths: tuple[PathRecord, ...] = ()
    locations: dict[int, tuple[Location, ...]] = field(default_factory=dict)
    extra_disjunctive: tuple[tuple[int, int], ...] = ()


# ============================================================================
# LAYOUT BOOKKEEPING
# ============================================================================

class _Layout:
    """Mutable qubit <-> location map used while routing."""

    def __init__(self, where: Mapping[str, Location]):
        self.where = dict(where)
        self.at = {loc: q for q, loc in self.where.items()}

    def copy(self) -> "_Layout":
        return _Layout(self.where)

    def swap(self, q1: str, q2: str) -> None:
        l1, l2 = self.where[q1], self.where[q2]
        self.where[q1], self.where[q2] = l2, l1
        self.at[l1], self.at[l2] = q2, q1

    def apply(self, ins: Instruction) -> None:
        if ins.inserted:
            self.swap(*ins.operands)


def _free_qubit_names(used: set[str], count: int) -> list[str]:
    names, k = [], 0
    while len(names) < count:
        name = f"q{k}"
        if name not in used:
            names.append(name)
        k += 1
    return names


def _initial_layout(c: Circuit, a: Architecture, p: Placement) -> dict[str, Location]:
    missing = [q for q in c.qubits if q not in p.assign]
    if missing:
        raise RoutingError(f"Placement does not cover qubits: {missing}")
    where = {q: p[q] for q in c.qubits}
    for loc in where.values():
        if not a.contains(loc):
            raise RoutingError(f"Placement puts a qubit outside the {a.rows}x{a.cols} grid: {loc}")
    empty = [loc for loc in a.locations() if loc not in set(where.values())]
    for name, loc in zip(_free_qubit_names(set(c.qubits), len(empty)), empty):
        where[name] = loc
    return where


def _is_adjacent(a: Architecture, kind: GateKind, l1: Location, l2: Location) -> bool:
    return a.can_swap(l1, l2) if kind is GateKind.SWAP else a.are_neighbors(l1, l2)


def _goal_set(a: Architecture, kind: GateKind, target: Location) -> set[Location]:
    return a.swap_neighbors(target) if kind is GateKind.SWAP else a.neighbors(target)


# ============================================================================
# ROUTER
# ============================================================================

class Router:
    """One routing pass over a circuit; use :func:`route`."""

    def __init__(self, c: Circuit, a: Architecture, p: Placement, t: TimingModel,
                 window: int = DEFAULT_WINDOW, policy: Optional[SchedulePolicy] = None,
                 path_limit: int = ROUTING_PATH_LIMIT):
        if window < 2:
            raise RoutingError(f"Routing window must be >= 2, got {window}")
        if t.arch is not a.kind:
            raise RoutingError(f"Timing model is for arch {t.arch.value}, plane is {a.kind.value}")
        if c.n_qubits > a.n_locations:
            raise RoutingError(f"{c.n_qubits} qubits do not fit on {a.n_locations} locations")
        self.c = c
        self.a = a
        self.t = t
        self.window = window
        self.scan = max(1, window // 2)
        self.policy = policy or SchedulePolicy()
        self.path_limit = path_limit
        self.swap_cycles = t.duration(GateKind.SWAP)
        self.graph = a.swap_graph()
        self.hops = dict(nx.all_pairs_shortest_path_length(self.graph))

        self.initial = _initial_layout(c, a, p)
        self.layout = _Layout(self.initial)
        self.ready: dict[str, int] = {}
        self.next_id = c.max_id() + 1
        self.emitted: list[Instruction] = []
        self.locations: dict[int, tuple[Location, ...]] = {}
        self.paths: list[PathRecord] = []

    # ------------------------------------------------------------------
    # buffer views
    # ------------------------------------------------------------------

    def _layout_at(self, buffer: list[Instruction], i: int) -> _Layout:
        layout = self.layout.copy()
        for ins in buffer[:i]:
            layout.apply(ins)
        return layout

    def _ready_at(self, buffer: list[Instruction], i: int) -> dict[str, int]:
        """Per-qubit ready times once ``buffer[:i]`` is rescheduled ASAP.

        Emitted work fixes a release time for every prefix instruction; the
        prefix itself is scheduled with the router's commutation and solver.
        """
        ready = dict(self.ready)
        prefix = buffer[:i]
        if not prefix:
            return ready
        release = {ins.id: max(ready.get(q, 0) for q in ins.operands) for ins in prefix}
        qubits = tuple(self.layout.where)
        sched = schedule(build_qodg(Circuit.from_instructions(qubits, prefix)), self.t,
                         self.policy.asap(), release=release)
        for ins in prefix:
            for q in ins.operands:
                ready[q] = max(ready.get(q, 0), sched.end(ins.id))
        return ready

    def _advance(self, ready: dict[str, int], ins: Instruction) -> int:
        start = max((ready.get(q, 0) for q in ins.operands), default=0)
        for q in ins.operands:
            ready[q] = start + self.t.of(ins)
        return start

    def _first_blocked(self, buffer: list[Instruction]) -> Optional[int]:
        layout = self.layout.copy()
        for i, ins in enumerate(buffer[: self.scan]):
            if ins.kind.is_two_qubit:
                l1, l2 = (layout.where[q] for q in ins.operands)
                if not _is_adjacent(self.a, ins.kind, l1, l2):
                    return i
            layout.apply(ins)
        return None

    # ------------------------------------------------------------------
    # path search and scoring
    # ------------------------------------------------------------------

    def candidate_paths(self, kind: GateKind, source: Location, target: Location) -> list[tuple[Location, ...]]:
        """All shortest paths from ``source`` to a location adjacent to ``target``.

        The target's own location is never crossed.
        """
        graph = self.graph.subgraph(n for n in self.graph if n != target)
        dist = nx.single_source_shortest_path_length(graph, source)
        goals = [g for g in _goal_set(self.a, kind, target) if g in dist]
        if not goals:
            raise RoutingError(f"No path from {source} to a neighbour of {target}")
        best = min(dist[g] for g in goals)
        paths: list[tuple[Location, ...]] = []
        for goal in sorted(g for g in goals if dist[g] == best):
            room = self.path_limit - len(paths)
            if room <= 0:
                break
            paths.extend(tuple(path) for path in islice(nx.all_shortest_paths(graph, source, goal), room))
        return sorted(paths)

    def _distance_to_goal(self, kind: GateKind, l1: Location, l2: Location) -> int:
        if _is_adjacent(self.a, kind, l1, l2):
            return 0
        return min(self.hops[l1][g] for g in _goal_set(self.a, kind, l2))

    def score(self, path: tuple[Location, ...], buffer: list[Instruction], i: int,
              ready: Optional[Mapping[str, int]] = None) -> int:
        """Cycles the path costs after look-back credit, plus the look-ahead penalty.

        Each SWAP costs its duration minus the cycles it overlaps with the
        ASAP-rescheduled ``buffer[:i]``, i.e. the part that runs before the
        prefix horizon.
        """
        layout = self._layout_at(buffer, i)
        ready = dict(ready if ready is not None else self._ready_at(buffer, i))
        horizon = max(ready.values(), default=0)
        cost = 0
        for l1, l2 in zip(path, path[1:]):
            q1, q2 = layout.at[l1], layout.at[l2]
            start = max(ready.get(q1, 0), ready.get(q2, 0))
            ready[q1] = ready[q2] = start + self.swap_cycles
            credit = min(self.swap_cycles, max(0, horizon - start))
            cost += self.swap_cycles - credit
            layout.swap(q1, q2)
        penalty = 0
        for ins in buffer[i + 1:]:
            if ins.kind.is_two_qubit and not ins.inserted:
                l1, l2 = (layout.where[q] for q in ins.operands)
                penalty += self.swap_cycles * self._distance_to_goal(ins.kind, l1, l2)
            layout.apply(ins)
        return cost + penalty

    def _route_one(self, buffer: list[Instruction], i: int) -> None:
        ins = buffer[i]
        layout = self._layout_at(buffer, i)
        source, target = (layout.where[q] for q in ins.operands)
        ready = self._ready_at(buffer, i)
        scored = [(self.score(path, buffer, i, ready), path)
                  for path in self.candidate_paths(ins.kind, source, target)]
        best_score, best = min(scored)

        swaps = []
        for l1, l2 in zip(best, best[1:]):
            q1, q2 = layout.at[l1], layout.at[l2]
            swaps.append(Instruction(self.next_id, GateKind.SWAP, (q1, q2), inserted=True))
            self.next_id += 1
            layout.swap(q1, q2)
        buffer[i:i] = swaps
        self.paths.append(PathRecord(ins.id, ins.kind, target, best, best_score))
        logger.debug("Gate %d (%s): %d SWAP(s) along %s, score %d of %d candidate(s)",
                     ins.id, ins.qasm(), len(swaps), " -> ".join(map(str, best)), best_score, len(scored))

    def _emit(self, ins: Instruction) -> None:
        locs = tuple(self.layout.where[q] for q in ins.operands)
        if ins.kind.is_two_qubit and not _is_adjacent(self.a, ins.kind, *locs):
            raise RoutingError(f"Instruction {ins.id} ({ins.qasm()}) emitted between {locs[0]} and {locs[1]}")
        self.locations[ins.id] = locs
        self._advance(self.ready, ins)
        self.layout.apply(ins)
        self.emitted.append(ins)

    # ------------------------------------------------------------------
    # main loop
    # ------------------------------------------------------------------

    def run(self) -> RoutedCircuit:
        stream = deque(self.c.gates())
        buffer: list[Instruction] = []
        while stream or buffer:
            while stream and len(buffer) < self.window:
                buffer.append(stream.popleft())
            blocked = self._first_blocked(buffer)
            if blocked is not None:
                self._route_one(buffer, blocked)
                continue
            self._emit(buffer.pop(0))
        return self._finish()

    def _resource_pairs(self) -> list[tuple[int, int]]:
        ops = [
            self.a.primitive(ins.kind, *self.locations[ins.id], self.t, label=ins.id)
            for ins in self.emitted if ins.kind.is_two_qubit
        ]
        pairs = []
        for k, op1 in enumerate(ops):
            for op2 in ops[k + 1:]:
                if op1.reservations & op2.reservations:
                    pairs.append((op1.label, op2.label))
        return pairs

    def _finish(self) -> RoutedCircuit:
        n_swaps = sum(ins.inserted for ins in self.emitted)
        used = {q for ins in self.emitted for q in ins.operands}
        extra_qubits = tuple(q for q in self.initial if q not in self.c.qubits and q in used)
        qubits = self.c.qubits + extra_qubits
        pairs = self._resource_pairs()

        if n_swaps == 0 and not _has_conflicts(self.c, self.a, self.t, self.locations):
            circuit = self.c
            start = replay_start_times(circuit, self.t)
            routed_schedule = Schedule(
                start=start,
                latency={v: self.t.of(ins) for v, ins in circuit.by_id().items() if v in start},
                policy=self.policy,
            )
        else:
            serial = Circuit.from_instructions(qubits, self.emitted)
            asap = SchedulePolicy(Direction.ASAP, self.policy.commutation, self.policy.solver)
            routed_schedule = schedule(build_qodg(serial), self.t, asap, extra_disjunctive=pairs)
            circuit = to_parallel_circuit(serial, routed_schedule)

        trace = _trace(circuit, self.initial)
        logger.debug("Routed %d instructions with %d SWAP(s); latency %d",
                     len(self.emitted), n_swaps, routed_schedule.makespan)
        return RoutedCircuit(
            circuit=circuit,
            schedule=routed_schedule,
            n_swaps=n_swaps,
            layout_trace=trace,
            source=self.c,
            timing=self.t,
            initial_occupancy=_occupancy(self.a, self.initial),
            final_occupancy=_occupancy(self.a, self.layout.where),
            paths=tuple(self.paths),
            locations=self.locations,
            extra_disjunctive=tuple(pairs),
        )


def _occupancy(a: Architecture, where: Mapping[str, Location]) -> dict[Location, Optional[str]]:
    occ: dict[Location, Optional[str]] = {loc: None for loc in a.locations()}
    occ.update({loc: q for q, loc in where.items()})
    return occ


def _has_conflicts(c: Circuit, a: Architecture, t: TimingModel,
                   locations: Mapping[int, tuple[Location, ...]]) -> bool:
    start = replay_start_times(c, t)
    ops = [
        a.primitive(ins.kind, *locations[ins.id], t, start=start[ins.id], label=ins.id)
        for ins in c.gates() if ins.kind.is_two_qubit
    ]
    return bool(conflicting_pairs(ops))


def _trace(c: Circuit, initial: Mapping[str, Location]) -> tuple[LayoutSnapshot, ...]:
    layout = _Layout(initial)
    snapshots = [LayoutSnapshot(0, dict(layout.at))]
    for k, step in enumerate(c.body):
        moved = [ins for ins in step if ins.inserted]
        for ins in moved:
            layout.apply(ins)
        if moved:
            snapshots.append(LayoutSnapshot(k + 1, dict(layout.at)))
    return tuple(snapshots)


def route(c: Circuit, a: Architecture, p: Placement, t: TimingModel,
          window: int = DEFAULT_WINDOW, policy: Optional[SchedulePolicy] = None) -> RoutedCircuit:
    """Route a scheduled circuit onto a plane.

    Args:
        c: Scheduled (bundled) circuit.
        a: Plane geometry; its own occupancy is ignored.
        p: Initial placement of every qubit of ``c``.
        t: Timing model for ``a``.
        window: Buffer length l; the first l // 2 entries are scanned.
        policy: Commutation and solver used for the final ASAP reschedule.

    Returns:
        RoutedCircuit whose two-qubit gates all run between neighbours.
    """
    return Router(c, a, p, t, window, policy).run()


# ============================================================================
# CHECKS AND METRICS
# ============================================================================

def validate_routed(rc: RoutedCircuit, a: Architecture, p0: Placement) -> list[Violation]:
    """Replay a routed circuit and list everything that breaks the routing contract.

    Checks adjacency of every two-qubit op, the final layout, patch
    conflicts between overlapping primitives, per-qubit gate order against
    the source circuit, and that every recorded path is a shortest one.
    """
    violations: list[Violation] = []
    t = rc.timing
    for q, loc in p0.assign.items():
        if rc.initial_occupancy.get(loc) != q:
            violations.append(Violation("placement", (), f"{q} should start at {loc}"))
    plane = Architecture(a.kind, a.rows, a.cols, rc.initial_occupancy)

    start = replay_start_times(rc.circuit, t)
    position = {ins.id: k for k, ins in enumerate(rc.circuit.gates())}
    ops = []
    for ins in sorted(rc.circuit.gates(), key=lambda ins: (start[ins.id], position[ins.id])):
        if not ins.kind.is_two_qubit:
            continue
        l1, l2 = (plane.location_of(q) for q in ins.operands)
        if not _is_adjacent(plane, ins.kind, l1, l2):
            violations.append(Violation("neighbor", (ins.id,), f"{ins.qasm()} between {l1} and {l2}"))
            continue
        ops.append(plane.primitive(ins.kind, l1, l2, t, start=start[ins.id], label=ins.id))
        if ins.inserted:
            plane = plane.apply_swap(l1, l2)
    if plane.occupancy != rc.final_occupancy:
        violations.append(Violation("occupancy", (), "replayed layout differs from the recorded final layout"))

    for op1, op2 in conflicting_pairs(ops):
        violations.append(Violation("conflict", (op1.label, op2.label),
                                    f"patches {sorted(op1.reservations & op2.reservations)} held twice"))

    violations.extend(_order_violations(rc, start, position))

    full = plane.swap_graph()
    for record in rc.paths:
        graph = full.subgraph(n for n in full if n != record.target)
        dist = nx.single_source_shortest_path_length(graph, record.source)
        best = min((dist[g] for g in _goal_set(plane, record.kind, record.target) if g in dist), default=None)
        if best != record.n_swaps:
            violations.append(Violation("path", (record.gate_id,),
                                        f"{record.n_swaps} SWAP(s) where the shortest path needs {best}"))
    return violations


def _order_violations(rc: RoutedCircuit, start: Mapping[int, int],
                      position: Mapping[int, int]) -> list[Violation]:
    source = {ins.id: ins for ins in rc.source.gates()}
    routed = {ins.id: ins for ins in rc.circuit.gates() if not ins.inserted}
    if source != routed:
        missing = sorted(set(source) ^ set(routed))
        changed = sorted(v for v in set(source) & set(routed) if source[v] != routed[v])
        return [Violation("semantics", tuple(missing + changed), "routed gates differ from the source gates")]

    out = []
    g = build_qodg(rc.source)
    for q in rc.source.qubits:
        sequence = sorted((v for v in routed if q in routed[v].operands),
                          key=lambda v: (start[v], position[v]))
        k = 0
        for run in g.runs(q):
            if set(sequence[k:k + len(run)]) != set(run):
                out.append(Violation("order", run, f"gates on {q} left their commuting group"))
                break
            k += len(run)
    return out


def swap_count(rc: RoutedCircuit) -> int:
    return sum(ins.inserted for ins in rc.circuit.gates())


def routed_latency(rc: RoutedCircuit, t: Optional[TimingModel] = None) -> int:
    """L_R in surface-code cycles, trailing waits included."""
    return circuit_latency(rc.circuit, t or rc.timing)
