"""
Scheduling Types
Policy flags, schedules and constraint violations
"""

from dataclasses import dataclass, field
from enum import Enum
from lsmap.errors import ScheduleError


class Direction(str, Enum):
    ASAP = "asap"
    ALAP = "alap"


class Solver(str, Enum):
    EXACT = "exact"
    LIST = "list"


@dataclass(frozen=True)
class SchedulePolicy:
    """Which schedule to build: direction, CNOT commutation, solver."""

    direction: Direction = Direction.ASAP
    commutation: bool = True
    solver: Solver = Solver.EXACT

    def __post_init__(self):
        try:
            object.__setattr__(self, "direction", Direction(self.direction))
            object.__setattr__(self, "solver", Solver(self.solver))
        except ValueError as exc:
            raise ScheduleError(f"{exc}. Use asap|alap and exact|list") from None

    def asap(self) -> "SchedulePolicy":
        return SchedulePolicy(Direction.ASAP, self.commutation, self.solver)


@dataclass(frozen=True, eq=False)
class Schedule:
    """Start time S_v and duration T_v per instruction id.

    ``orientation`` lists the chosen order of every commuting pair as
    (first, second). ``optimal`` is False only when the exact search hit
    its node limit and returned its best incumbent.
    """

    start: dict[int, int]
    latency: dict[int, int]
    policy: SchedulePolicy
    orientation: tuple[tuple[int, int], ...] = ()
    optimal: bool = True
    nodes_explored: int = 0

    @property
    def makespan(self) -> int:
        return max((self.start[v] + self.latency[v] for v in self.start), default=0)

    def end(self, v: int) -> int:
        return self.start[v] + self.latency[v]

    def order(self) -> list[int]:
        """Ids sorted by start time, then by id."""
        return sorted(self.start, key=lambda v: (self.start[v], v))


@dataclass(frozen=True)
class Violation:
    """One broken constraint: ``kind`` is precedence, overlap or missing."""

    kind: str
    edge: tuple[int, ...]
    detail: str = field(default="")

    def __str__(self) -> str:
        return f"{self.kind} {self.edge}: {self.detail}"

