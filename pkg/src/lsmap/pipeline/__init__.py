"""
Pipeline
End-to-end mapping runs, metrics reports and comparison experiments

- run: run_pipeline, PipelineResult, stage
- metrics: MetricsReport, write_report, read_report
- experiments: compare_experiment, write_comparison, EXPERIMENT_MODES
"""

from lsmap.pipeline.metrics import MetricsReport, read_report, write_report
from lsmap.pipeline.run import PipelineResult, run_pipeline, stage
from lsmap.pipeline.experiments import (
    EXPERIMENT_MODES,
    compare_experiment,
    format_comparison,
    reduction_pct,
    write_comparison,
)

__all__ = [
    "MetricsReport",
    "read_report",
    "write_report",
    "PipelineResult",
    "run_pipeline",
    "stage",
    "EXPERIMENT_MODES",
    "compare_experiment",
    "format_comparison",
    "reduction_pct",
    "write_comparison",
]
