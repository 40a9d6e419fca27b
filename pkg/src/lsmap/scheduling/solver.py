"""
Scheduler
Latency-minimal start times for a QODG under a timing model

Constraints come in two flavours:
    precedence    S_i + T_i <= S_j
    disjunctive   S_i + T_i <= S_j  or  S_j + T_j <= S_i

Without commutation every QODG edge is a precedence. With commutation,
each qubit's instruction sequence is cut into maximal commuting runs
(consecutive CNOTs sharing that qubit in the same role); members of one
run are pairwise disjunctive, and every member of a run precedes every
member of the next run on that qubit.

The exact solver is a depth-first branch and bound over the orientation
of disjunctive pairs. Each search node evaluates the longest-path (ASAP)
schedule of the precedences plus the orientations fixed so far. Its
bound is the larger of that makespan and, per qubit, the earliest start
plus the summed durations plus the shortest tail of the instructions on
that qubit (they never overlap). The first overlapping pair in program
order is branched on, earlier-first before later-first, and the list
schedule seeds the incumbent. The list solver is a serial schedule
generator with critical-path priority. ALAP schedules are computed by
solving the reversed problem and mirroring the times.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Optional

import networkx as nx

from lsmap.circuit.qodg import QODG
from lsmap.config import SCHEDULE_NODE_LIMIT
from lsmap.errors import ScheduleError
from lsmap.scheduling.policy import Direction, Schedule, SchedulePolicy, Solver
from lsmap.timing import TimingModel

logger = logging.getLogger(__name__)

Pair = tuple[int, int]


@dataclass(frozen=True)
class Problem:
    """Precedence and disjunctive constraints over instruction ids.

    ``chains`` lists node groups that can never overlap (the instructions
    of one qubit); they only strengthen the search bound.
    """

    order: tuple[int, ...]
    durations: dict[int, int]
    precedences: tuple[Pair, ...]
    disjunctive: tuple[Pair, ...]
    chains: tuple[tuple[int, ...], ...] = ()

    @cached_property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def reversed(self) -> "Problem":
        return Problem(
            self.order,
            self.durations,
            tuple((j, i) for i, j in self.precedences),
            self.disjunctive,
            self.chains,
        )

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.order)
        g.add_edges_from(self.precedences)
        return g


def durations_of(g: QODG, t: TimingModel) -> dict[int, int]:
    return {v: t.of(g.instr(v)) for v in g.nodes}


def build_problem(
    g: QODG,
    durations: Mapping[int, int],
    commutation: bool,
    extra_disjunctive: Iterable[Pair] = (),
) -> Problem:
    """Translate a QODG into scheduling constraints.

    Args:
        g: Dependency graph.
        durations: T_v per node.
        commutation: Whether name dependencies may be reordered.
        extra_disjunctive: Additional non-overlap pairs (resource
            conflicts found by the router).
    """
    pos = {v: i for i, v in enumerate(g.nodes)}
    prec: set[Pair] = set()
    disj: set[Pair] = set()
    if not commutation:
        prec = set(g.graph.edges)
    else:
        for q in g.sequences:
            runs = g.runs(q)
            for before, after in zip(runs, runs[1:]):
                prec.update((u, v) for u in before for v in after)
            for run in runs:
                disj.update(combinations(run, 2))
    for u, v in extra_disjunctive:
        if u != v:
            disj.add((u, v) if pos[u] < pos[v] else (v, u))
    disj = {(u, v) for u, v in disj if (u, v) not in prec and (v, u) not in prec}

    def key(pair: Pair) -> tuple[int, int]:
        return pos[pair[0]], pos[pair[1]]

    return Problem(
        order=tuple(g.nodes),
        durations=dict(durations),
        precedences=tuple(sorted(prec, key=key)),
        disjunctive=tuple(sorted(disj, key=key)),
        chains=tuple(seq for seq in g.sequences.values() if len(seq) > 1),
    )


class _Evaluator:
    """Longest-path evaluation of a problem under extra orientation edges."""

    def __init__(self, problem: Problem, release: Mapping[int, int]):
        self.problem = problem
        self.release = release
        self.succ: dict[int, list[int]] = {v: [] for v in problem.order}
        for u, v in problem.precedences:
            self.succ[u].append(v)

    def run(self, orient: Iterable[Pair]) -> Optional[tuple[dict[int, int], dict[int, int]]]:
        """(start, tail) per node, or None when the orientation closes a cycle.

        tail[v] is the longest path from the end of v to the end of the schedule.
        """
        succ = {v: list(ws) for v, ws in self.succ.items()}
        for u, v in orient:
            succ[u].append(v)
        indeg = {v: 0 for v in succ}
        for ws in succ.values():
            for w in ws:
                indeg[w] += 1
        queue = deque(v for v in self.problem.order if indeg[v] == 0)
        topo = []
        while queue:
            v = queue.popleft()
            topo.append(v)
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        if len(topo) != len(succ):
            return None

        T = self.problem.durations
        start = {v: self.release.get(v, 0) for v in topo}
        for v in topo:
            for w in succ[v]:
                start[w] = max(start[w], start[v] + T[v])
        tail = {v: 0 for v in topo}
        for v in reversed(topo):
            for w in succ[v]:
                tail[v] = max(tail[v], T[w] + tail[w])
        return start, tail

    def bound(self, start: Mapping[int, int], tail: Mapping[int, int]) -> int:
        T = self.problem.durations
        best = _makespan(start, T)
        for chain in self.problem.chains:
            head = min(start[v] for v in chain)
            rest = min(tail[v] for v in chain)
            best = max(best, head + sum(T[v] for v in chain) + rest)
        return best


def _makespan(start: Mapping[int, int], T: Mapping[int, int]) -> int:
    return max((start[v] + T[v] for v in start), default=0)


def _overlap(start: Mapping[int, int], T: Mapping[int, int], i: int, j: int) -> bool:
    return start[i] < start[j] + T[j] and start[j] < start[i] + T[i]


def _solve_exact(problem: Problem, release: Mapping[int, int], node_limit: int,
                 incumbent: dict[int, int]) -> tuple[dict[int, int], bool, int]:
    evaluator = _Evaluator(problem, release)
    T = problem.durations
    best = {"makespan": _makespan(incumbent, T), "start": incumbent}
    explored = 0
    exhausted = False

    def dfs(orient: tuple[Pair, ...]) -> None:
        nonlocal explored, exhausted
        if exhausted:
            return
        explored += 1
        if explored > node_limit:
            exhausted = True
            return
        result = evaluator.run(orient)
        if result is None:
            return
        start, tail = result
        if evaluator.bound(start, tail) >= best["makespan"]:
            return
        oriented = set(orient) | {(j, i) for i, j in orient}
        for i, j in problem.disjunctive:
            if (i, j) not in oriented and _overlap(start, T, i, j):
                dfs(orient + ((i, j),))
                dfs(orient + ((j, i),))
                return
        best["makespan"], best["start"] = _makespan(start, T), start

    dfs(())
    return best["start"], not exhausted, explored


def _solve_list(problem: Problem, release: Mapping[int, int]) -> dict[int, int]:
    g = problem.graph()
    T = problem.durations
    pos = problem.position
    result = _Evaluator(problem, release).run(())
    if result is None:
        raise ScheduleError("Cycle detected among true dependencies")
    _, tail = result
    mates: dict[int, list[int]] = {v: [] for v in problem.order}
    for i, j in problem.disjunctive:
        mates[i].append(j)
        mates[j].append(i)

    start: dict[int, int] = {}
    waiting = {v: g.in_degree(v) for v in problem.order}
    ready = [v for v in problem.order if waiting[v] == 0]
    while ready:
        v = min(ready, key=lambda u: (-(T[u] + tail[u]), pos[u]))
        ready.remove(v)
        s = max([release.get(v, 0)] + [start[u] + T[u] for u in g.predecessors(v)])
        placed = sorted((start[m], m) for m in mates[v] if m in start)
        moved = True
        while moved:
            moved = False
            for sm, m in placed:
                if s < sm + T[m] and sm < s + T[v]:
                    s = sm + T[m]
                    moved = True
        start[v] = s
        for w in g.successors(v):
            waiting[w] -= 1
            if waiting[w] == 0:
                ready.append(w)
    return start


def solve(problem: Problem, solver: Solver, release: Optional[Mapping[int, int]] = None,
          node_limit: int = SCHEDULE_NODE_LIMIT) -> tuple[dict[int, int], bool, int]:
    """ASAP start times for a constraint problem.

    Returns:
        (start times, proven optimal, search nodes explored).
    """
    release = release or {}
    if solver is Solver.EXACT and not problem.disjunctive:
        result = _Evaluator(problem, release).run(())
        if result is None:
            raise ScheduleError("Cycle detected among true dependencies")
        return result[0], True, 1
    start = _solve_list(problem, release)
    if solver is Solver.LIST:
        return start, False, 0
    start, optimal, explored = _solve_exact(problem, release, node_limit, start)
    if not optimal:
        logger.warning("Exact scheduling stopped after %d nodes; keeping best schedule found", node_limit)
    return start, optimal, explored


def _orientation(problem: Problem, start: Mapping[int, int]) -> tuple[Pair, ...]:
    return tuple((i, j) if start[i] <= start[j] else (j, i) for i, j in problem.disjunctive)


def schedule(
    g: QODG,
    t: TimingModel,
    p: SchedulePolicy,
    release: Optional[Mapping[int, int]] = None,
    extra_disjunctive: Iterable[Pair] = (),
    durations: Optional[Mapping[int, int]] = None,
    node_limit: int = SCHEDULE_NODE_LIMIT,
) -> Schedule:
    """Schedule every node of ``g``.

    Args:
        g: Dependency graph.
        t: Timing model pricing each instruction.
        p: Direction, commutation and solver.
        release: Earliest start per node (ASAP only).
        extra_disjunctive: Extra non-overlap pairs.
        durations: Override of the per-node durations.
        node_limit: Search-node cap for the exact solver.

    Returns:
        Schedule whose makespan is minimal when ``p.solver`` is exact.
    """
    T = dict(durations) if durations is not None else durations_of(g, t)
    problem = build_problem(g, T, p.commutation, extra_disjunctive)

    if p.direction is Direction.ASAP:
        start, optimal, explored = solve(problem, p.solver, release, node_limit)
    else:
        if release:
            raise ScheduleError("Release times are only supported for ASAP schedules")
        mirrored, optimal, explored = solve(problem.reversed(), p.solver, None, node_limit)
        horizon = _makespan(mirrored, T)
        start = {v: horizon - (mirrored[v] + T[v]) for v in mirrored}

    result = Schedule(
        start=start,
        latency={v: T[v] for v in start},
        policy=p,
        orientation=_orientation(problem, start),
        optimal=optimal,
        nodes_explored=explored,
    )
    logger.debug("Scheduled %d instructions (%s): makespan %d, %d search nodes",
                 len(start), p.direction.value, result.makespan, explored)
    return result


def critical_path(g: QODG, t: TimingModel) -> int:
    """Longest chain of true dependencies, in cycles."""
    T = durations_of(g, t)
    true_graph = nx.DiGraph()
    true_graph.add_nodes_from(g.nodes)
    true_graph.add_edges_from(g.true_edges)
    finish: dict[int, int] = {}
    for v in nx.topological_sort(true_graph):
        finish[v] = T[v] + max((finish[u] for u in true_graph.predecessors(v)), default=0)
    return max(finish.values(), default=0)
