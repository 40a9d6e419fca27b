"""Console tables, logging setup and figures."""

import logging

import polars as pl
import pytest
from rich.console import Console

from lsmap.config import RunConfig
from lsmap.errors import ConfigError
from lsmap.pipeline.run import run_pipeline
from lsmap.surgery.verify import CheckResult
from lsmap.timing import ArchKind
from lsmap.utils.helpers import print_checks, print_frame, stats_frame, timing_frame
from lsmap.utils.logging import setup_logging
from lsmap.utils.visualization import create_mapping_html, plot_comparison, plot_layout_trace


@pytest.fixture
def quiet_console():
    return Console(file=None, record=True, width=120)


@pytest.fixture(scope="module")
def mapped():
    from lsmap.circuit.benchmarks import steane_encoder

    return run_pipeline(RunConfig(arch=ArchKind.CHECKERBOARD, solver="list"), steane_encoder(), name="steane")


# ═══════════════════════════════════════════════════════════════════════════
# TABLES
# ═══════════════════════════════════════════════════════════════════════════

class TestTables:
    def test_timing_frame(self):
        df = timing_frame(3)
        assert df.columns == ["operation", "c_arch", "t_arch"]
        rows = {r["operation"]: r for r in df.iter_rows(named=True)}
        assert rows["cnot"]["c_arch"] == 9 and rows["cnot"]["t_arch"] == 12
        assert rows["swap"]["c_arch"] == 27 and rows["swap"]["t_arch"] == 9
        assert "qwait" not in rows

    def test_stats_frame(self, steane):
        from lsmap.circuit.stats import characterize

        df = stats_frame({"steane": characterize(steane)})
        assert df["n_cnots"].to_list() == [12]

    def test_print_checks(self, quiet_console):
        ok = print_checks([CheckResult("a", True, "2 branches")], quiet_console)
        failed = print_checks([CheckResult("a", True), CheckResult("b", False, "flows to ZI")], quiet_console)
        assert ok and not failed
        text = quiet_console.export_text()
        assert "PASS" in text and "FAIL" in text

    def test_print_frame(self, quiet_console):
        print_frame(pl.DataFrame({"name": ["x"], "value": [0.12345]}), title="demo", console=quiet_console)
        text = quiet_console.export_text()
        assert "0.123" in text
        assert "demo (1 rows)" in text


class TestLogging:
    def test_level_and_single_handler(self, monkeypatch):
        monkeypatch.setenv("LSMAP_LOG", "debug")
        logger = setup_logging()
        assert logger.level == logging.DEBUG
        setup_logging("ERROR")
        assert logger.level == logging.ERROR
        assert len([h for h in logger.handlers if h.name == "lsmap-rich"]) == 1

    def test_unknown_level(self):
        with pytest.raises(ConfigError, match="Unknown log level"):
            setup_logging("LOUD")


# ═══════════════════════════════════════════════════════════════════════════
# FIGURES
# ═══════════════════════════════════════════════════════════════════════════

class TestFigures:
    def test_layout_trace(self, mapped, tmp_path):
        from lsmap.arch.architecture import Architecture

        a = Architecture(ArchKind.CHECKERBOARD, 3, 3)
        path = plot_layout_trace(mapped.routed.layout_trace, a, tmp_path / "fig" / "layout.png")
        assert path.exists() and path.stat().st_size > 0

    def test_empty_trace(self, checker_plane, tmp_path):
        with pytest.raises(ConfigError, match="Empty layout trace"):
            plot_layout_trace((), checker_plane, tmp_path / "x.png")

    def test_comparison_chart(self, tmp_path):
        df = pl.DataFrame({"benchmark": ["a", "a", "b", "b"], "arch": ["c", "t"] * 2,
                           "reduction_pct": [10.0, 20.0, 5.0, 7.5]})
        path = plot_comparison(df, ["reduction_pct"], tmp_path / "cmp.png", hue="arch", title="demo")
        assert path.exists()
        with pytest.raises(ConfigError, match="Unknown metric"):
            plot_comparison(df, ["speedup"], tmp_path / "bad.png")

    def test_html_report(self, mapped, tmp_path):
        path = create_mapping_html(mapped, tmp_path / "run.html")
        html = path.read_text(encoding="utf-8")
        assert html.startswith("<!DOCTYPE html>")
        assert "steane on arch c (3x3, d=3)" in html
        assert html.count('<table class="grid">') == 2
        assert "latency_overhead" in html
        assert "runtime_s" not in html
