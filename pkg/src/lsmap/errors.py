"""
Error Types
Exception hierarchy shared by every lsmap stage

All errors derive from ValueError, so a plain ``except ValueError`` still
catches them. The pipeline attaches a
stage label ("parse", "schedule", "place", "route", "expand", "report")
so a failure reads as ``[route] No path from ...`` on the command line.
"""

from typing import Optional


class LsmapError(ValueError):
    """Base class for all lsmap errors.

    Args:
        message: Human-readable description.
        stage: Pipeline stage the error surfaced in, if known.
    """

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.stage = stage

    def with_stage(self, stage: str) -> "LsmapError":
        if self.stage is None:
            self.stage = stage
        return self

    def __str__(self) -> str:
        if self.stage:
            return f"[{self.stage}] {self.message}"
        return self.message


class QasmSyntaxError(LsmapError):
    """Malformed QASM input; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, col: int = 1, stage: Optional[str] = None):
        super().__init__(f"line {line}, col {col}: {message}", stage)
        self.line = line
        self.col = col


class CircuitError(LsmapError):
    pass


class TimingError(LsmapError):
    pass


class ScheduleError(LsmapError):
    pass


class ArchitectureError(LsmapError):
    pass


class PlacementError(LsmapError):
    pass


class RoutingError(LsmapError):
    pass


class SurgeryError(LsmapError):
    pass


class ExpansionError(LsmapError):
    pass


class ConfigError(LsmapError):
    pass
