"""FT expansion: ESM round, cycle templates, symbol table and physical listing."""

import pytest

from lsmap.arch.architecture import Architecture, Location
from lsmap.circuit.ir import Circuit, GateKind, Instruction
from lsmap.circuit.qodg import build_qodg
from lsmap.errors import ExpansionError, TimingError
from lsmap.ft import (
    PATCH_QUBITS_D3,
    boundary,
    build_symbol_table,
    emit_physical_qasm,
    esm_round,
    expand,
    lookup,
    patch_size,
    seam_checks,
    stabilizer_support,
    surgery_blocks,
    template,
    write_physical_qasm,
)
from lsmap.ft.esm import DATA_QUBITS_D3, X_ANCILLAS_D3, Z_ANCILLAS_D3, are_adjacent
from lsmap.placement.qap import Placement, place_naive
from lsmap.routing.router import route, routed_latency
from lsmap.scheduling import SchedulePolicy, schedule, to_parallel_circuit
from lsmap.timing import ArchKind, TimingModel

L = Location
TIMED_KINDS = [k for k in GateKind if k is not GateKind.WAIT]


def routed(c, a, p, t):
    s = schedule(build_qodg(c), t, SchedulePolicy("alap"))
    return route(to_parallel_circuit(c, s), a, p, t)


def cycle_ops(pc, k):
    return [ins for cycle, step in zip(pc.cycle_of_step, pc.circuit.body) if cycle == k for ins in step]


def touched(ops):
    return {int(q[1:]) for ins in ops for q in ins.operands}


# ═══════════════════════════════════════════════════════════════════════════
# ESM ROUND
# ═══════════════════════════════════════════════════════════════════════════

class TestESM:
    def test_patch_layout(self):
        assert patch_size(3) == len(PATCH_QUBITS_D3) == 17
        assert patch_size(5) == 49
        assert PATCH_QUBITS_D3[:2] == ("A1", "D1")
        assert PATCH_QUBITS_D3.index("D5") == 8

    def test_round_shape(self):
        r = esm_round(3)
        assert r.depth == 8
        assert r.n_gates == 48
        assert any(ins.kind is GateKind.CNOT and ins.operands == ("A2", "D5") for ins in r.body[2])

    def test_every_qubit_acts_once_per_step(self):
        for step in esm_round(3).body:
            used = [q for ins in step for q in ins.operands]
            assert len(used) == len(set(used))

    def test_stabilizers(self):
        support = stabilizer_support(esm_round(3))
        assert set(support) == set(X_ANCILLAS_D3) | set(Z_ANCILLAS_D3)
        assert sorted(len(v) for v in support.values()) == [2, 2, 2, 2, 4, 4, 4, 4]
        assert all(are_adjacent(a, q) for a, ds in support.items() for q in ds)

    def test_ancillas_are_measured_last(self):
        r = esm_round(3)
        measured = {ins.operands[0] for step in r.body[-3:] for ins in step if ins.kind is GateKind.MEASZ}
        assert measured == set(X_ANCILLAS_D3) | set(Z_ANCILLAS_D3)

    def test_other_distances(self):
        with pytest.raises(ExpansionError, match="d=5"):
            esm_round(5)


# ═══════════════════════════════════════════════════════════════════════════
# FT LIBRARY
# ═══════════════════════════════════════════════════════════════════════════

class TestLibrary:
    @pytest.mark.parametrize("arch", list(ArchKind))
    @pytest.mark.parametrize("d", [3, 5])
    def test_templates_match_timing(self, arch, d):
        t = TimingModel(d, arch)
        for kind in TIMED_KINDS:
            assert len(template(kind, arch, d)) == t.duration(kind), kind

    def test_surgery_phases(self):
        c_cnot = [c.phase for c in template(GateKind.CNOT, ArchKind.CHECKERBOARD, 3)]
        assert c_cnot == ["merge zz"] * 3 + ["merge xx"] * 3 + ["split"] * 3
        t_cnot = [c.phase for c in template(GateKind.CNOT, ArchKind.TILE, 3)]
        assert t_cnot == ["move"] * 3 + ["merge"] * 6 + ["split"] * 3
        t_gate = [c.phase for c in template(GateKind.T, ArchKind.TILE, 3)]
        assert t_gate == ["magic merge"] * 3 + ["magic correction"] * 48
        t_swap = [c.phase for c in template(GateKind.SWAP, ArchKind.TILE, 5)]
        assert t_swap == ["merge"] * 10 + ["split"] * 5

    def test_transversal_slots(self):
        (x,) = template(GateKind.X, ArchKind.TILE, 3)
        assert x.transversal == ((GateKind.X, "x_logical"),)
        h = template(GateKind.H, ArchKind.TILE, 3)
        assert h[0].transversal == ((GateKind.H, "all"),)
        assert all(not c.transversal for c in h[1:])

    def test_missing_entries(self):
        with pytest.raises(ExpansionError, match="qwait"):
            lookup(GateKind.WAIT, ArchKind.TILE)
        with pytest.raises(TimingError):
            template(GateKind.X, ArchKind.TILE, 4)


# ═══════════════════════════════════════════════════════════════════════════
# SYMBOL TABLE
# ═══════════════════════════════════════════════════════════════════════════

class TestSymbolTable:
    def test_blocks(self, tile_plane):
        p = Placement({"q0": L(0, 0), "q1": L(1, 2)})
        qs = build_symbol_table(tile_plane, p, 3)
        # 36 patches and 9 magic patches of 17 qubits, 60 + 9 seams of 4
        assert qs.n_physical == 45 * 17 + 69 * 4 == 1041
        assert qs["q0"].physical("D5") == 8
        assert qs["q1"].base == 5 * 17
        assert qs.at(L(2, 2)).qubit is None
        assert qs.physical_name(L(0, 1), "A1") == "q17"

    def test_lookup_errors(self, tile_plane):
        qs = build_symbol_table(tile_plane, Placement({"q0": L(0, 0)}), 3)
        with pytest.raises(ExpansionError, match="no entry"):
            qs["q9"]
        with pytest.raises(ExpansionError, match="no entry"):
            qs.at(L(7, 7))
        with pytest.raises(ExpansionError, match="Unknown patch qubit"):
            qs["q0"].physical("D10")

    def test_local_names_only_at_distance_three(self, tile_plane):
        qs = build_symbol_table(tile_plane, Placement({"q0": L(0, 0)}), 5)
        assert len(qs["q0"].ids) == 49
        with pytest.raises(ExpansionError, match="d=3"):
            qs["q0"].physical("D1")

    def test_checkerboard_patches_and_seams(self):
        a = Architecture("c", 2, 2)
        qs = build_symbol_table(a, Placement({"q0": L(0, 0), "q1": L(1, 0)}), 3)
        assert [qs.home(loc) for loc in a.locations()] == ["D1", "D2", "D3", "D4"]
        assert qs.block("A1").base == 4 * 17
        assert qs.block("A1").role == "ancilla"
        assert qs.magic(L(1, 0)) == "M3"
        assert qs.block("M3").role == "magic"
        below = qs.seam("D3", "A1")
        assert below.between == ("A1", "D3") and below.orientation == "vertical"
        assert qs.seam("D1", "A1").orientation == "horizontal"
        assert below.physical("S4") == below.base + 3
        # 15 footprint patches and 4 magic patches, 22 + 4 seams
        assert qs.n_physical == 19 * 17 + 26 * 4
        with pytest.raises(ExpansionError, match="do not touch"):
            qs.seam("D1", "D3")


# ═══════════════════════════════════════════════════════════════════════════
# SURGERY BLOCKS
# ═══════════════════════════════════════════════════════════════════════════

class TestLattice:
    def test_boundaries(self):
        assert boundary("right") == ("D3", "D6", "D9")
        assert boundary("left") == ("D1", "D4", "D7")
        assert boundary("top") == ("D1", "D2", "D3")
        assert boundary("bottom") == ("D7", "D8", "D9")
        with pytest.raises(ExpansionError, match="side"):
            boundary("front")

    def test_seam_checks(self):
        checks = seam_checks(3, "Z")
        assert [c.ancilla for c in checks] == ["S1", "S2", "S3", "S4"]
        assert [(c.basis, c.pairs) for c in checks] == [("X", (0,)), ("Z", (0, 1)), ("X", (1, 2)), ("Z", (2,))]
        # the merge-basis checks cover every data pair exactly once
        assert sorted(i for c in checks if c.basis == "Z" for i in c.pairs) == [0, 1, 2]
        assert len(seam_checks(5, "X")) == 6
        with pytest.raises(ExpansionError):
            seam_checks(3, "Y")

    def test_checkerboard_cnot_blocks(self):
        a = Architecture("c", 2, 2)
        qs = build_symbol_table(a, Placement({"q0": L(0, 0), "q1": L(1, 0)}), 3)
        ins = Instruction(0, GateKind.CNOT, ("q0", "q1"))
        merge_zz, merge_xx, split = surgery_blocks(qs, ins, (L(0, 0), L(1, 0)), 3)
        assert merge_zz.preps == (("A1", "X"),)
        assert merge_zz.merges == (("D1", "A1", "Z"),)
        assert merge_xx.merges == (("A1", "D3", "X"),)
        assert split.measures == (("A1", "Z"),)
        assert split.live == {"D1", "D3"}
        with pytest.raises(ExpansionError, match="template needs 4"):
            surgery_blocks(qs, ins, (L(0, 0), L(1, 0)), 4)

    def test_checkerboard_swap_is_three_cnots(self):
        a = Architecture("c", 2, 2)
        qs = build_symbol_table(a, Placement({"q0": L(0, 0), "q1": L(1, 0)}), 3)
        blocks = surgery_blocks(qs, Instruction(0, GateKind.SWAP, ("q0", "q1")), (L(0, 0), L(1, 0)), 9)
        assert [b.merges for b in blocks if b.merges] == [
            (("D1", "A1", "Z"),), (("A1", "D3", "X"),),
            (("D3", "A1", "Z"),), (("A1", "D1", "X"),),
            (("D1", "A1", "Z"),), (("A1", "D3", "X"),),
        ]

    def test_tile_blocks_follow_the_sequence(self):
        a = Architecture("t", 2, 2)
        qs = build_symbol_table(a, Placement({"q0": L(0, 0), "q1": L(0, 1)}), 3)
        ins = Instruction(0, GateKind.CNOT, ("q0", "q1"))
        blocks = surgery_blocks(qs, ins, (L(0, 0), L(0, 1)), 4)
        assert [b.merges for b in blocks] == [
            (("A1", "B1", "X"), ("D2", "C2", "X")),
            (("D1", "C2", "X"),),
            (("B1", "D1", "Z"),),
            (),
        ]
        assert blocks[1].measures == (("A1", "Z"), ("D2", "Z"))
        assert blocks[-1].measures == (("D1", "X"),)
        assert blocks[-1].live == {"B1", "C2"}

    def test_magic_blocks(self):
        a = Architecture("t", 1, 2)
        qs = build_symbol_table(a, Placement({"q0": L(0, 1)}), 3)
        blocks = surgery_blocks(qs, Instruction(0, GateKind.T, ("q0",)), (L(0, 1),), 17)
        assert blocks[0].merges == (("A2", "M2", "Z"),)
        assert blocks[0].inject == ("M2", GateKind.T)
        assert blocks[1].measures == (("M2", "X"),)
        assert all(b.live == {"A2"} for b in blocks[1:])

    def test_other_gates_have_no_blocks(self):
        a = Architecture("t", 1, 2)
        qs = build_symbol_table(a, Placement({"q0": L(0, 0)}), 3)
        assert surgery_blocks(qs, Instruction(0, GateKind.H, ("q0",)), (L(0, 0),), 4) == []


# ═══════════════════════════════════════════════════════════════════════════
# EXPANSION
# ═══════════════════════════════════════════════════════════════════════════

class TestExpand:
    def test_single_cnot(self, t_timing):
        a = Architecture("t", 2, 2)
        p = Placement({"q0": L(0, 0), "q1": L(0, 1)})
        rc = route(Circuit.build(("q0", "q1"), [("cnot", "q0", "q1")]), a, p, t_timing)
        pc = expand(rc, build_symbol_table(a, p, 3), t_timing)
        assert pc.n_cycles == 12
        (span,) = pc.spans
        assert span.locations == (L(0, 0), L(0, 1))
        assert (span.start, span.end) == (0, 12)
        assert span.phases[0] == "move" and span.phases[-1] == "split"
        assert pc.circuit.n_qubits == 452
        assert pc.cycle_of_step[0] == 0 and pc.cycle_of_step[-1] == 11
        # the move opens by preparing B1, C2 and D1 in |0>
        prep = pc.circuit.body[0]
        assert {ins.kind for ins in prep} == {GateKind.PREPZ}
        assert len(prep) == 3 * 9

    def test_transversal_gate_lands_on_its_block(self, t_timing):
        a = Architecture("t", 2, 2)
        p = Placement({"q0": L(0, 1)})
        rc = route(Circuit.build(("q0",), [("x", "q0")]), a, p, t_timing)
        pc = expand(rc, build_symbol_table(a, p, 3), t_timing)
        slot = pc.circuit.body[0]
        assert {ins.kind for ins in slot} == {GateKind.X}
        assert [ins.operands[0] for ins in slot] == ["q18", "q19", "q20"]
        assert pc.cycles_of(0) == 1

    def test_steane_cycles_match_latency(self, steane, tile_plane, t_timing):
        p = place_naive(steane, tile_plane)
        rc = routed(steane, tile_plane, p, t_timing)
        pc = expand(rc, build_symbol_table(tile_plane, p, 3), t_timing)
        assert pc.n_cycles == routed_latency(rc)
        assert len(pc.spans) == rc.circuit.n_gates
        for span in pc.spans:
            assert span.end - span.start == t_timing.of(span.instruction)
        assert max(pc.cycle_of_step) == pc.n_cycles - 1

    def test_waits_become_idle_rounds(self, t_timing):
        a = Architecture("t", 1, 2)
        p = Placement({"q0": L(0, 0)})
        c = Circuit.build(("q0",), [("x", "q0"), (GateKind.WAIT, 3), ("z", "q0")])
        pc = expand(route(c, a, p, t_timing), build_symbol_table(a, p, 3), t_timing)
        assert pc.n_cycles == 5
        idle = [k for k in range(5) if k not in {s.start for s in pc.spans}]
        assert idle == [1, 2, 3]

    def test_distance_five_spans_only(self, tile_plane):
        t5 = TimingModel(5, ArchKind.TILE)
        c = Circuit.build(("q0", "q1"), [("h", "q0"), ("cnot", "q0", "q1")])
        p = Placement({"q0": L(0, 0), "q1": L(1, 0)})
        rc = route(c, tile_plane, p, t5)
        qs = build_symbol_table(tile_plane, p, 5)
        pc = expand(rc, qs, t5)
        assert pc.circuit is None
        assert pc.n_cycles == 20 + 20
        with pytest.raises(ExpansionError, match="only cycle spans"):
            emit_physical_qasm(pc)
        with pytest.raises(ExpansionError):
            expand(rc, qs, t5, emit_physical=True)

    def test_distance_mismatch(self, tile_plane, t_timing):
        p = Placement({"q0": L(0, 0)})
        rc = route(Circuit.build(("q0",), [("x", "q0")]), tile_plane, p, t_timing)
        with pytest.raises(ExpansionError, match="Symbol table"):
            expand(rc, build_symbol_table(tile_plane, p, 5), t_timing)

    def test_listing(self, tmp_path, t_timing):
        a = Architecture("t", 1, 2)
        p = Placement({"q0": L(0, 0)})
        rc = route(Circuit.build(("q0",), [("h", "q0")]), a, p, t_timing)
        pc = expand(rc, build_symbol_table(a, p, 3), t_timing)
        text = emit_physical_qasm(pc)
        lines = text.splitlines()
        assert lines[0] == "qubits 218"
        assert lines[1] == "# cycle 0"
        assert sum(line.startswith("# cycle") for line in lines) == 12
        path = tmp_path / "physical.qasm"
        write_physical_qasm(pc, path)
        assert path.read_text(encoding="utf-8") == text


# ═══════════════════════════════════════════════════════════════════════════
# SURGERY EXPANSION
# ═══════════════════════════════════════════════════════════════════════════

def seam_ids(qs, p, q):
    return set(qs.seam(p, q).ids)


class TestSurgeryExpansion:
    @pytest.fixture
    def checker_cnot(self, c_timing):
        a = Architecture("c", 2, 2)
        p = Placement({"q0": L(0, 0), "q1": L(1, 0)})
        qs = build_symbol_table(a, p, 3)
        rc = route(Circuit.build(("q0", "q1"), [("cnot", "q0", "q1")]), a, p, c_timing)
        return qs, expand(rc, qs, c_timing)

    def test_checkerboard_merges_touch_the_ancilla_patch(self, checker_cnot):
        qs, pc = checker_cnot
        assert pc.n_cycles == 9
        ancilla = set(qs.block("A1").ids)
        for k in range(0, 3):
            ids = touched(cycle_ops(pc, k))
            assert ancilla <= ids
            assert seam_ids(qs, "D1", "A1") <= ids
            assert not seam_ids(qs, "A1", "D3") & ids
        for k in range(3, 6):
            ids = touched(cycle_ops(pc, k))
            assert ancilla <= ids
            assert seam_ids(qs, "A1", "D3") <= ids
            assert not seam_ids(qs, "D1", "A1") & ids

    def test_ancilla_is_prepared_and_measured(self, checker_cnot):
        qs, pc = checker_cnot
        data = [qs.patch_qubit("A1", local) for local in DATA_QUBITS_D3]
        opening = pc.circuit.body[0]
        assert {ins.kind for ins in opening} == {GateKind.PREPX}
        assert sorted(ins.operands[0] for ins in opening) == sorted(data)
        split = pc.circuit.body[pc.cycle_of_step.index(6)]
        assert {ins.kind for ins in split} == {GateKind.MEASZ}
        assert sorted(ins.operands[0] for ins in split) == sorted(data)
        for k in (7, 8):
            assert not set(qs.block("A1").ids) & touched(cycle_ops(pc, k))

    def test_seam_round_per_merged_cycle(self, checker_cnot):
        qs, pc = checker_cnot
        seam = {f"q{i}" for i in qs.seam("D1", "A1").ids}
        for k in range(3):
            ops = cycle_ops(pc, k)
            measured = [ins.operands[0] for ins in ops if ins.kind is GateKind.MEASZ and ins.operands[0] in seam]
            assert sorted(measured) == sorted(seam)
            cnots = [ins for ins in ops if ins.kind is GateKind.CNOT and set(ins.operands) & seam]
            assert len(cnots) == 12

    def test_no_qubit_twice_in_a_step(self, checker_cnot):
        _, pc = checker_cnot
        for step in pc.circuit.body:
            operands = [q for ins in step for q in ins.operands]
            assert len(operands) == len(set(operands))

    def test_tile_cnot_differs_from_idle_rounds(self, t_timing):
        a = Architecture("t", 2, 2)
        p = Placement({"q0": L(0, 0), "q1": L(0, 1)})
        qs = build_symbol_table(a, p, 3)
        cnot = expand(route(Circuit.build(("q0", "q1"), [("cnot", "q0", "q1")]), a, p, t_timing), qs, t_timing)
        xs = Circuit.build(("q0", "q1"), [("x", "q0")] * 12)
        idle = expand(route(xs, a, p, t_timing), qs, t_timing)
        assert cnot.n_cycles == idle.n_cycles == 12
        merged, plain = touched(cycle_ops(cnot, 1)), touched(cycle_ops(idle, 1))
        assert merged != plain
        assert set(qs.block("B1").ids) <= merged
        assert not set(qs.block("B1").ids) & plain
        assert seam_ids(qs, "A1", "B1") <= merged

    def test_t_gate_uses_its_magic_patch(self, t_timing):
        a = Architecture("t", 1, 2)
        p = Placement({"q0": L(0, 0)})
        qs = build_symbol_table(a, p, 3)
        pc = expand(route(Circuit.build(("q0",), [("t", "q0")]), a, p, t_timing), qs, t_timing)
        assert pc.n_cycles == 51
        corner = qs.patch_qubit("M1", "D1")
        assert any(ins.kind is GateKind.T and ins.operands == (corner,) for ins in cycle_ops(pc, 0))
        magic, seam = set(qs.block("M1").ids), seam_ids(qs, "A1", "M1")
        for k in range(3):
            ids = touched(cycle_ops(pc, k))
            assert magic <= ids and seam <= ids
        readout = pc.circuit.body[pc.cycle_of_step.index(3)]
        assert {ins.kind for ins in readout} == {GateKind.MEASX}
        assert len(readout) == 9 and {int(ins.operands[0][1:]) for ins in readout} <= magic
        for k in range(4, 51):
            assert not (magic | seam) & touched(cycle_ops(pc, k))

    def test_checkerboard_steane(self, steane, checker_plane, c_timing):
        p = place_naive(steane, checker_plane)
        rc = routed(steane, checker_plane, p, c_timing)
        pc = expand(rc, build_symbol_table(checker_plane, p, 3), c_timing)
        assert pc.n_cycles == routed_latency(rc)
        assert max(pc.cycle_of_step) == pc.n_cycles - 1
