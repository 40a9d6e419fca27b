"""Run configuration, grid sizing and error labelling."""

import pytest

from lsmap.config import RunConfig, grid_for
from lsmap.errors import ConfigError, LsmapError, QasmSyntaxError, RoutingError
from lsmap.timing import ArchKind


# ═══════════════════════════════════════════════════════════════════════════
# ERRORS
# ═══════════════════════════════════════════════════════════════════════════

class TestErrors:
    def test_errors_are_value_errors(self):
        assert issubclass(RoutingError, ValueError)
        with pytest.raises(ValueError):
            raise ConfigError("bad")

    def test_stage_label_is_set_once(self):
        exc = RoutingError("No path").with_stage("route")
        exc.with_stage("report")
        assert exc.stage == "route"
        assert str(exc) == "[route] No path"

    def test_message_without_stage(self):
        assert str(LsmapError("plain")) == "plain"

    def test_qasm_error_carries_position(self):
        exc = QasmSyntaxError("Unknown gate: foo", line=4, col=7)
        assert (exc.line, exc.col) == (4, 7)
        assert str(exc).startswith("line 4, col 7:")


# ═══════════════════════════════════════════════════════════════════════════
# GRID SIZING
# ═══════════════════════════════════════════════════════════════════════════

class TestGridFor:
    @pytest.mark.parametrize("n, expected", [(1, (1, 1)), (4, (2, 2)), (5, (2, 3)), (7, (3, 3)), (10, (3, 4))])
    def test_near_square(self, n, expected):
        assert grid_for(n) == expected

    def test_fixed_side_is_kept(self):
        assert grid_for(10, rows=2) == (2, 5)
        assert grid_for(10, cols=4) == (3, 4)

    @pytest.mark.parametrize("n", range(1, 40))
    def test_always_fits(self, n):
        rows, cols = grid_for(n)
        assert rows * cols >= n


# ═══════════════════════════════════════════════════════════════════════════
# VALIDATION
# ═══════════════════════════════════════════════════════════════════════════

class TestRunConfig:
    def test_for_circuit_fills_grid(self):
        cfg = RunConfig.for_circuit(7)
        assert (cfg.rows, cfg.cols) == (3, 3)
        assert cfg.validate(7) is cfg

    def test_explicit_grid_wins(self):
        cfg = RunConfig.for_circuit(7, rows=2, cols=4)
        assert (cfg.rows, cfg.cols) == (2, 4)

    @pytest.mark.parametrize("overrides, fragment", [
        ({"d": 4}, "odd"),
        ({"d": 1}, "odd"),
        ({"window": 1}, "window"),
        ({"direction": "sideways"}, "direction"),
        ({"solver": "magic"}, "solver"),
        ({"placement": "random"}, "placement"),
        ({"emit": "both"}, "emit"),
        ({"rows": 2, "cols": 2}, "locations"),
    ])
    def test_rejects(self, overrides, fragment):
        with pytest.raises(ConfigError, match=fragment):
            RunConfig.for_circuit(7, **overrides).validate(7)

    def test_checkerboard_needs_two_rows(self):
        cfg = RunConfig(arch=ArchKind.CHECKERBOARD, rows=1, cols=4)
        with pytest.raises(ConfigError, match="2 rows"):
            cfg.validate(3)

    def test_single_qubit_single_row_checkerboard_is_fine(self):
        RunConfig(arch=ArchKind.CHECKERBOARD, rows=1, cols=1).validate(1)
