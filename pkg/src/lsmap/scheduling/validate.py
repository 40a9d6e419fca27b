"""
Schedule Validation
Independent check of a schedule against its constraint set
"""

from typing import Iterable

from lsmap.circuit.qodg import QODG
from lsmap.scheduling.policy import Schedule, SchedulePolicy, Violation
from lsmap.scheduling.solver import Pair, build_problem


def validate_schedule(
    g: QODG,
    s: Schedule,
    p: SchedulePolicy,
    extra_disjunctive: Iterable[Pair] = (),
) -> list[Violation]:
    """Every constraint the schedule breaks; an empty list means ok."""
    missing = [v for v in g.nodes if v not in s.start]
    if missing:
        return [Violation("missing", tuple(missing), "instructions without a start time")]

    violations = []
    negative = [v for v in g.nodes if s.start[v] < 0]
    for v in negative:
        violations.append(Violation("negative", (v,), f"S={s.start[v]}"))

    problem = build_problem(g, s.latency, p.commutation, extra_disjunctive)
    for u, v in problem.precedences:
        if s.end(u) > s.start[v]:
            violations.append(Violation(
                "precedence", (u, v),
                f"S_{u} + T_{u} = {s.end(u)} > S_{v} = {s.start[v]}",
            ))
    for u, v in problem.disjunctive:
        if s.start[u] < s.end(v) and s.start[v] < s.end(u):
            violations.append(Violation(
                "overlap", (u, v),
                f"[{s.start[u]}, {s.end(u)}) overlaps [{s.start[v]}, {s.end(v)})",
            ))
    return violations
