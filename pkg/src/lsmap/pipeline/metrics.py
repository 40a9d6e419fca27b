"""
Metrics Report
Latency and operation overheads of one mapping run

latency_overhead   = (L_R - L_S) / L_S
operation_overhead = n_swaps / n_gates

Both are derived from the stored raw fields, never stored themselves, so
a report read back from JSON always agrees with its own numbers.
"""

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional

from lsmap.circuit.stats import CircuitStats


@dataclass(frozen=True)
class MetricsReport:
    benchmark: str
    arch: str
    d: int
    rows: int
    cols: int
    latency_scheduled: int
    latency_routed: int
    n_swaps: int
    n_gates: int
    qubit_efficiency: float
    stats: CircuitStats
    config: dict[str, Any] = field(default_factory=dict)
    schedule_optimal: bool = True
    runtime_s: Optional[float] = None

    @property
    def latency_overhead(self) -> float:
        if self.latency_scheduled == 0:
            return 0.0
        return (self.latency_routed - self.latency_scheduled) / self.latency_scheduled

    @property
    def operation_overhead(self) -> float:
        return self.n_swaps / self.n_gates if self.n_gates else 0.0

    def as_dict(self, include_runtime: bool = False) -> dict[str, Any]:
        """Flat view for JSON and tables; runtime is left out unless asked for."""
        out = asdict(self)
        out["stats"] = self.stats.as_dict()
        out["latency_overhead"] = self.latency_overhead
        out["operation_overhead"] = self.operation_overhead
        if not include_runtime:
            out.pop("runtime_s")
        return out

    def to_json(self, include_runtime: bool = False) -> str:
        return json.dumps(self.as_dict(include_runtime), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "MetricsReport":
        data = dict(data)
        data.pop("latency_overhead", None)
        data.pop("operation_overhead", None)
        data["stats"] = CircuitStats(**data["stats"])
        return cls(**data)


def write_report(report: MetricsReport, path: "str | Path", include_runtime: bool = False) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.to_json(include_runtime) + "\n", encoding="utf-8")
    return path


def read_report(path: "str | Path") -> MetricsReport:
    return MetricsReport.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
