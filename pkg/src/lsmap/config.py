"""
Run Configuration
Defaults and the validated settings bundle for one mapping run

Module-level constants hold the defaults used by the CLI, the benchmark
script and the tests. RunConfig bundles every knob of one pipeline run
(architecture, grid size, code distance, scheduling policy, placement
mode, routing window, emission level) and checks it against the circuit
it is about to map.
"""

import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from lsmap.errors import ConfigError
from lsmap.timing import ArchKind

# ============================================================================
# CONFIGURATION
# ============================================================================

DEFAULT_DISTANCE = 3
DEFAULT_WINDOW = 10
RANDOM_STATE = 42

OUTPUT_DIR = Path("./outputs")
LOG_ENV_VAR = "LSMAP_LOG"

# Grid sizes (rows, cols) per shipped benchmark
BENCHMARK_SIZES = {
    "steane_encoder": (3, 3),
}

# Branch-and-bound safety valves
SCHEDULE_NODE_LIMIT = 20_000
PLACEMENT_NODE_LIMIT = 2_000_000

# Candidate shortest paths scored per routed gate
ROUTING_PATH_LIMIT = 64

DIRECTIONS = ("asap", "alap")
SOLVERS = ("exact", "list")
PLACEMENTS = ("smart", "naive")
EMIT_LEVELS = ("logical", "physical")


@dataclass(frozen=True)
class RunConfig:
    """Settings for one run of the mapping pipeline.

    rows/cols left as None are filled by ``for_circuit`` with the smallest
    near-square grid that holds the circuit.
    """

    arch: ArchKind = ArchKind.TILE
    rows: Optional[int] = None
    cols: Optional[int] = None
    d: int = DEFAULT_DISTANCE
    direction: str = "alap"
    commute: bool = True
    solver: str = "exact"
    placement: str = "smart"
    window: int = DEFAULT_WINDOW
    emit: str = "logical"
    seed: int = RANDOM_STATE

    @classmethod
    def for_circuit(cls, n_qubits: int, **overrides) -> "RunConfig":
        cfg = cls(**overrides)
        if cfg.rows is None or cfg.cols is None:
            rows, cols = grid_for(n_qubits, cfg.rows, cfg.cols)
            cfg = replace(cfg, rows=rows, cols=cols)
        return cfg

    def validate(self, n_qubits: int) -> "RunConfig":
        """Raise ConfigError if this configuration cannot map ``n_qubits`` qubits."""
        if not isinstance(self.arch, ArchKind):
            raise ConfigError(f"Unknown architecture: {self.arch}. Use 'c' or 't'")
        if self.d < 3 or self.d % 2 == 0:
            raise ConfigError(f"Code distance must be odd and >= 3, got {self.d}")
        if self.direction not in DIRECTIONS:
            raise ConfigError(f"Unknown direction: {self.direction}. Use one of {DIRECTIONS}")
        if self.solver not in SOLVERS:
            raise ConfigError(f"Unknown solver: {self.solver}. Use one of {SOLVERS}")
        if self.placement not in PLACEMENTS:
            raise ConfigError(f"Unknown placement: {self.placement}. Use one of {PLACEMENTS}")
        if self.emit not in EMIT_LEVELS:
            raise ConfigError(f"Unknown emit level: {self.emit}. Use one of {EMIT_LEVELS}")
        if self.window < 2:
            raise ConfigError(f"Routing window must be >= 2, got {self.window}")
        if self.rows is None or self.cols is None:
            raise ConfigError("Grid size not set. Use RunConfig.for_circuit or pass rows and cols")
        if self.rows < 1 or self.cols < 1:
            raise ConfigError(f"Grid size must be positive, got {self.rows}x{self.cols}")
        if self.arch is ArchKind.CHECKERBOARD and self.rows < 2 and n_qubits > 1:
            raise ConfigError("A checkerboard grid needs at least 2 rows to connect its data patches")
        if self.rows * self.cols < n_qubits:
            raise ConfigError(
                f"Grid {self.rows}x{self.cols} has {self.rows * self.cols} locations "
                f"but the circuit uses {n_qubits} qubits"
            )
        return self


def grid_for(n_qubits: int, rows: Optional[int] = None, cols: Optional[int] = None) -> tuple[int, int]:
    """Smallest near-square grid with at least ``n_qubits`` locations.

    A fixed side is respected; the other one grows to fit.
    """
    n = max(n_qubits, 1)
    if rows is not None:
        return rows, max(1, math.ceil(n / rows))
    if cols is not None:
        return max(1, math.ceil(n / cols)), cols
    side = math.isqrt(n - 1) + 1
    # a single row leaves a checkerboard without neighbours
    rows = side - 1 if side - 1 >= 2 and (side - 1) * side >= n else side
    return rows, side
