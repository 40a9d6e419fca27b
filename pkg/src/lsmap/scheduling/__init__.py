"""
Scheduling
Start-time assignment for logical circuits

- policy: SchedulePolicy (asap/alap, commutation, exact/list), Schedule, Violation
- solver: schedule (branch and bound or list scheduling), critical_path
- validate: validate_schedule
- emit: to_parallel_circuit, replay_start_times, circuit_latency
"""

from lsmap.scheduling.emit import circuit_latency, replay_start_times, to_parallel_circuit
from lsmap.scheduling.policy import Direction, Schedule, SchedulePolicy, Solver, Violation
from lsmap.scheduling.solver import build_problem, critical_path, durations_of, schedule, solve
from lsmap.scheduling.validate import validate_schedule

__all__ = [
    "circuit_latency",
    "replay_start_times",
    "to_parallel_circuit",
    "Direction",
    "Schedule",
    "SchedulePolicy",
    "Solver",
    "Violation",
    "build_problem",
    "critical_path",
    "durations_of",
    "schedule",
    "solve",
    "validate_schedule",
]
