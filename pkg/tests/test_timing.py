"""Duration table in surface-code cycles."""

import pytest

from lsmap.circuit.ir import GateKind, Instruction
from lsmap.errors import TimingError
from lsmap.timing import ArchKind, TimingModel, duration

C, T = ArchKind.CHECKERBOARD, ArchKind.TILE

UNIT_KINDS = [GateKind.I, GateKind.X, GateKind.Y, GateKind.Z,
              GateKind.PREPZ, GateKind.PREPX, GateKind.MEASZ, GateKind.MEASX]


class TestDurationTable:
    @pytest.mark.parametrize("d", [3, 5, 7])
    @pytest.mark.parametrize("arch", [C, T])
    def test_unit_ops(self, d, arch):
        for kind in UNIT_KINDS:
            assert duration(kind, arch, d) == 1

    @pytest.mark.parametrize("d", [3, 5, 7])
    @pytest.mark.parametrize("arch", [C, T])
    def test_single_qubit_cliffords_and_magic(self, d, arch):
        assert duration(GateKind.H, arch, d) == 4 * d
        assert duration(GateKind.S, arch, d) == 14 * d
        assert duration(GateKind.SDAG, arch, d) == 14 * d
        assert duration(GateKind.T, arch, d) == 17 * d
        assert duration(GateKind.TDAG, arch, d) == 17 * d

    @pytest.mark.parametrize("d", [3, 5, 7])
    def test_two_qubit(self, d):
        assert duration(GateKind.CNOT, C, d) == 3 * d
        assert duration(GateKind.SWAP, C, d) == 9 * d
        assert duration(GateKind.CNOT, T, d) == 4 * d
        assert duration(GateKind.SWAP, T, d) == 3 * d

    @pytest.mark.parametrize("d", [3, 5, 7, 9])
    def test_swap_relations(self, d):
        assert duration(GateKind.SWAP, C, d) == 3 * duration(GateKind.CNOT, C, d)
        assert duration(GateKind.SWAP, T, d) == 3 * d

    def test_d3_values(self):
        assert TimingModel(3, C).table()["swap"] == 27
        assert TimingModel(3, T).table()["cnot"] == 12


class TestTimingModel:
    @pytest.mark.parametrize("d", [2, 4, 1, 0])
    def test_bad_distance(self, d):
        with pytest.raises(TimingError):
            TimingModel(d, T)

    def test_wait_has_no_table_duration(self):
        with pytest.raises(TimingError):
            duration(GateKind.WAIT, T, 3)

    def test_wait_instruction_uses_its_cycles(self, t_timing):
        assert t_timing.of(Instruction(0, GateKind.WAIT, (), cycles=7)) == 7
        assert t_timing.of(Instruction(1, GateKind.H, ("q0",))) == 12

    def test_surgery_helpers(self):
        t = TimingModel(5, C)
        assert t.surgery_cnot_serial() == 21
        assert t.corner_move() == 15

    def test_table_skips_wait(self, t_timing):
        table = t_timing.table()
        assert "qwait" not in table
        assert len(table) == len(GateKind) - 1
        assert all(v >= 1 for v in table.values())


class TestArchKind:
    @pytest.mark.parametrize("text, kind", [("c", C), ("T", T), ("checkerboard", C), (" t ", T)])
    def test_parse(self, text, kind):
        assert ArchKind.parse(text) is kind

    def test_parse_unknown(self):
        with pytest.raises(TimingError, match="Unknown architecture"):
            ArchKind.parse("hex")
