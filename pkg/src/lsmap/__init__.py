"""
lsmap
Mapping lattice-surgery circuits onto surface-code architectures

Takes a logical Clifford+T circuit, schedules it with CNOT commutation,
places and routes it on a checkerboard or tile-based plane, verifies the
lattice-surgery constructions it relies on, and expands the result into
surface-code cycles.
"""

from lsmap.config import RunConfig
from lsmap.errors import LsmapError
from lsmap.pipeline import MetricsReport, compare_experiment, run_pipeline
from lsmap.timing import ArchKind, TimingModel

__version__ = "0.1.0"

__all__ = [
    "ArchKind",
    "LsmapError",
    "MetricsReport",
    "RunConfig",
    "TimingModel",
    "compare_experiment",
    "run_pipeline",
]
