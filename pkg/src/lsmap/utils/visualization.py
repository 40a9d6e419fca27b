"""
Mapping Visualization
Layout snapshots, comparison charts and a standalone HTML run report
"""

from html import escape
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import polars as pl  # noqa: E402
import seaborn as sns  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from lsmap.arch.architecture import Architecture, Location  # noqa: E402
from lsmap.errors import ConfigError  # noqa: E402
from lsmap.routing.router import LayoutSnapshot  # noqa: E402

# ============================================================================
# LAYOUT SNAPSHOTS
# ============================================================================

DATA_COLOR = "#4CAF50"
FREE_COLOR = "#c8e6c9"
ANCILLA_COLOR = "#eeeeee"


def _draw_layout(ax, a: Architecture, occupancy: dict[Location, Optional[str]], title: str) -> None:
    height, width = a.footprint_shape()
    owner = {}
    for loc in a.locations():
        patch = a.data_patch(loc)
        owner[patch] = occupancy.get(loc)
    for (pr, pc), name in a.footprint().items():
        if (pr, pc) in owner:
            qubit = owner[(pr, pc)]
            color = DATA_COLOR if qubit is not None else FREE_COLOR
            label = qubit or ""
        else:
            color, label = ANCILLA_COLOR, ""
        ax.add_patch(Rectangle((pc, height - 1 - pr), 1, 1, facecolor=color, edgecolor="#999999"))
        if label:
            ax.text(pc + 0.5, height - 0.5 - pr, label, ha="center", va="center", fontsize=7)
    ax.set_xlim(0, width)
    ax.set_ylim(0, height)
    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])
    ax.set_title(title, fontsize=9)


def plot_layout_trace(trace: Sequence[LayoutSnapshot], a: Architecture, out_path: "str | Path",
                      max_panels: int = 6) -> Path:
    """Grid of occupancy snapshots, evenly sampled from ``trace``."""
    if not trace:
        raise ConfigError("Empty layout trace. Route a circuit first")
    picks = np.unique(np.linspace(0, len(trace) - 1, min(max_panels, len(trace))).round().astype(int))
    cols = min(3, len(picks))
    rows = int(np.ceil(len(picks) / cols))
    fig, axes = plt.subplots(rows, cols, figsize=(4.0 * cols, 3.2 * rows), squeeze=False)
    for ax in axes.flat[len(picks):]:
        ax.axis("off")
    for ax, k in zip(axes.flat, picks):
        snap = trace[k]
        _draw_layout(ax, a, snap.occupancy, f"after timestep {snap.timestep}")
    fig.tight_layout()
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path)
    plt.close(fig)
    return out_path


# ============================================================================
# COMPARISON CHARTS
# ============================================================================

def plot_comparison(df: pl.DataFrame, metrics: Sequence[str], out_path: "str | Path",
                    hue: Optional[str] = None, title: str = "") -> Path:
    """Grouped bars of ``metrics`` per benchmark, one panel per metric."""
    missing = [m for m in metrics if m not in df.columns]
    if missing:
        raise ConfigError(f"Unknown metric column(s): {missing}. Available: {df.columns}")
    frame = df.to_pandas()
    fig, axes = plt.subplots(1, len(metrics), figsize=(5.5 * len(metrics), 3.8), squeeze=False)
    for ax, metric in zip(axes[0], metrics):
        sns.barplot(data=frame, x="benchmark", y=metric, hue=hue, ax=ax, errorbar=None)
        ax.set_title(metric.replace("_", " "), fontsize=10)
        ax.tick_params(axis="x", rotation=30)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path)
    plt.close(fig)
    return out_path


# ============================================================================
# HTML REPORT
# ============================================================================

def _layout_table(a: Architecture, occupancy: dict[Location, Optional[str]]) -> str:
    rows = []
    for r in range(a.rows):
        cells = "".join(
            f'<td class="{"busy" if occupancy.get(Location(r, c)) else "free"}">'
            f'{escape(occupancy.get(Location(r, c)) or "")}</td>'
            for c in range(a.cols)
        )
        rows.append(f"<tr>{cells}</tr>")
    return f'<table class="grid">{"".join(rows)}</table>'


def create_mapping_html(result, out_path: "str | Path") -> Path:
    """Write a self-contained HTML page for one pipeline run.

    ``result`` is a PipelineResult: the report fields, the initial and
    final layouts and the path chosen for every routed gate.
    """
    report = result.report
    routed = result.routed
    a = Architecture(result.config.arch, result.config.rows, result.config.cols)

    metrics = "".join(
        f"<tr><td>{escape(k)}</td><td>{escape(f'{v:.3f}' if isinstance(v, float) else str(v))}</td></tr>"
        for k, v in report.as_dict().items() if k not in ("stats", "config")
    )
    paths = "".join(
        f"<tr><td>{p.gate_id}</td><td>{p.kind.value}</td><td>{p.target}</td>"
        f"<td>{escape(' -> '.join(str(h) for h in p.hops))}</td><td>{p.n_swaps}</td>"
        f"<td>{p.score}</td></tr>"
        for p in routed.paths
    )

    html = f"""<!DOCTYPE html>
<html>
<head>
    <meta charset="utf-8">
    <title>lsmap: {escape(report.benchmark)}</title>
    <style>
        body {{
            font-family: Arial, sans-serif;
            margin: 20px;
            background-color: #f5f5f5;
        }}
        h1, h2 {{
            color: #333;
        }}
        table {{
            border-collapse: collapse;
            background-color: white;
            box-shadow: 0 2px 4px rgba(0,0,0,0.1);
            margin-bottom: 20px;
        }}
        th {{
            background-color: #4CAF50;
            color: white;
            padding: 8px;
            text-align: left;
        }}
        td {{
            padding: 6px 10px;
            border-bottom: 1px solid #ddd;
            font-family: monospace;
        }}
        .grid td {{
            width: 48px;
            height: 36px;
            text-align: center;
            border: 1px solid #999;
        }}
        .busy {{
            background-color: #c8e6c9;
        }}
        .free {{
            background-color: #fafafa;
        }}
    </style>
</head>
<body>
    <h1>{escape(report.benchmark)} on arch {escape(report.arch)} ({report.rows}x{report.cols}, d={report.d})</h1>
    <h2>Metrics</h2>
    <table><tr><th>Field</th><th>Value</th></tr>{metrics}</table>
    <h2>Initial layout</h2>
    {_layout_table(a, routed.initial_occupancy)}
    <h2>Final layout</h2>
    {_layout_table(a, routed.final_occupancy)}
    <h2>Routed gates ({len(routed.paths)})</h2>
    <table><tr><th>Gate</th><th>Kind</th><th>Target</th><th>Path</th><th>SWAPs</th><th>Score</th></tr>{paths}</table>
</body>
</html>
"""
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(html, encoding="utf-8")
    return out_path
