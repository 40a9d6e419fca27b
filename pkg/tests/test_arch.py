"""Plane geometry, primitives and tile patch sequences."""

import pytest

from lsmap.arch.architecture import Architecture, Location, conflicting_pairs
from lsmap.arch.tile_sequences import (
    TCNOT_SEQUENCES,
    TSWAP_SEQUENCES,
    cnot_patch_sequence,
    op,
    resolve_sequence,
    swap_patch_sequence,
    tcnot_sequence,
    tswap_sequence,
)
from lsmap.circuit.ir import GateKind
from lsmap.errors import ArchitectureError
from lsmap.timing import ArchKind, TimingModel

L = Location


# ═══════════════════════════════════════════════════════════════════════════
# GEOMETRY
# ═══════════════════════════════════════════════════════════════════════════

class TestNeighbours:
    def test_tile_keeps_one_diagonal(self, tile_plane):
        assert tile_plane.neighbors(L(1, 1)) == {L(0, 1), L(2, 1), L(1, 0), L(1, 2), L(0, 0), L(2, 2)}
        assert tile_plane.neighbors(L(0, 0)) == {L(1, 0), L(0, 1), L(1, 1)}
        assert not tile_plane.are_neighbors(L(0, 1), L(1, 0))

    def test_tile_swaps_only_von_neumann(self, tile_plane):
        assert tile_plane.swap_neighbors(L(1, 1)) == {L(0, 1), L(2, 1), L(1, 0), L(1, 2)}
        assert not tile_plane.can_swap(L(0, 0), L(1, 1))

    def test_checkerboard_diagonals(self, checker_plane):
        assert checker_plane.neighbors(L(0, 0)) == {L(1, 0)}
        assert checker_plane.neighbors(L(1, 0)) == {L(0, 0), L(0, 1), L(2, 0), L(2, 1)}
        assert checker_plane.swap_neighbors(L(1, 0)) == checker_plane.neighbors(L(1, 0))

    @pytest.mark.parametrize("kind", [ArchKind.TILE, ArchKind.CHECKERBOARD])
    def test_neighbour_relation_is_symmetric(self, kind):
        a = Architecture(kind, 4, 5)
        for loc in a.locations():
            for n in a.neighbors(loc):
                assert a.are_neighbors(n, loc)

    @pytest.mark.parametrize("kind", [ArchKind.TILE, ArchKind.CHECKERBOARD])
    def test_swap_graph_connected(self, kind):
        import networkx as nx

        assert nx.is_connected(Architecture(kind, 4, 4).swap_graph())

    def test_distances(self, tile_plane, checker_plane):
        assert tile_plane.distance(L(0, 0), L(2, 1)) == 3
        assert checker_plane.distance(L(0, 0), L(1, 0)) == 1
        assert checker_plane.distance(L(0, 0), L(2, 0)) == 2
        assert checker_plane.distance(L(0, 0), L(0, 1)) == 2

    def test_location_numbering(self, tile_plane):
        assert tile_plane.location_index(L(0, 0)) == 1
        assert tile_plane.location_index(L(1, 2)) == 6
        assert tile_plane.location_at(6) == L(1, 2)
        with pytest.raises(ArchitectureError):
            tile_plane.location_at(10)

    def test_bad_grid(self):
        with pytest.raises(ArchitectureError):
            Architecture("t", 0, 3)


class TestFootprint:
    def test_tile_names(self):
        a = Architecture("t", 2, 2)
        names = a.footprint()
        assert len(names) == 16
        assert names[(0, 0)] == "A1"
        assert names[(1, 3)] == "D2"
        assert names[(3, 1)] == "D3"
        assert a.patch_at("C4") == (3, 2)

    def test_checkerboard_names(self, checker_plane):
        names = checker_plane.footprint()
        assert checker_plane.footprint_shape() == (4, 7)
        data = [n for n in names.values() if n.startswith("D")]
        assert len(data) == 9
        assert names[checker_plane.data_patch(L(1, 0))] == "D4"
        assert checker_plane.data_patch(L(1, 0)) == (1, 1)
        with pytest.raises(ArchitectureError):
            checker_plane.patch_at("D10")

    @pytest.mark.parametrize("n", [2, 3, 5, 8, 16])
    def test_tile_efficiency_is_a_quarter(self, n):
        assert Architecture("t", n, n).qubit_efficiency() == 0.25

    def test_checkerboard_efficiency(self):
        effs = [Architecture("c", n, n).qubit_efficiency() for n in range(2, 17)]
        assert 0.45 <= effs[-1] <= 0.5
        assert all(a < b for a, b in zip(effs, effs[1:]))
        assert all(e < 0.5 for e in effs)


# ═══════════════════════════════════════════════════════════════════════════
# OCCUPANCY
# ═══════════════════════════════════════════════════════════════════════════

class TestOccupancy:
    def test_place_and_swap(self):
        a = Architecture.with_placement("t", 2, 2, {"q0": L(0, 0), "q1": L(0, 1)})
        b = a.apply_swap(L(0, 0), L(0, 1))
        assert b.location_of("q0") == L(0, 1)
        assert a.location_of("q0") == L(0, 0)
        moved = b.apply_swap(L(0, 1), L(1, 1))
        assert moved.occupant(L(0, 1)) is None
        assert moved.location_of("q0") == L(1, 1)

    def test_collisions(self):
        a = Architecture("t", 2, 2)
        a.place("q0", L(0, 0))
        with pytest.raises(ArchitectureError, match="already holds"):
            a.place("q1", L(0, 0))
        with pytest.raises(ArchitectureError, match="already placed"):
            a.place("q0", L(1, 1))
        with pytest.raises(ArchitectureError, match="outside"):
            a.place("q2", L(5, 5))

    def test_swap_checks(self):
        a = Architecture.with_placement("t", 2, 2, {"q0": L(0, 0)})
        with pytest.raises(ArchitectureError, match="swap neighbours"):
            a.apply_swap(L(0, 0), L(1, 1))
        with pytest.raises(ArchitectureError, match="empty"):
            a.apply_swap(L(0, 1), L(1, 1))
        with pytest.raises(ArchitectureError, match="not placed"):
            a.location_of("q9")


# ═══════════════════════════════════════════════════════════════════════════
# PRIMITIVES
# ═══════════════════════════════════════════════════════════════════════════

class TestPrimitives:
    def test_checkerboard_cnot_ancilla(self, checker_plane):
        assert checker_plane.ancilla_for_cnot(L(0, 0), L(1, 0)) == {(0, 1)}
        assert checker_plane.ancilla_for_cnot(L(1, 1), L(0, 1)) == {(0, 3)}
        with pytest.raises(ArchitectureError, match="not neighbours"):
            checker_plane.ancilla_for_cnot(L(0, 0), L(0, 1))

    def test_tile_diagonal_cnot_reserves_more(self, tile_plane):
        straight = tile_plane.ancilla_for_cnot(L(0, 0), L(0, 1))
        diagonal = tile_plane.ancilla_for_cnot(L(0, 0), L(1, 1))
        assert len(straight) == 4
        assert len(diagonal) == 6

    def test_durations_follow_the_timing_model(self, checker_plane, c_timing):
        cnot = checker_plane.primitive(GateKind.CNOT, L(0, 0), L(1, 0), c_timing)
        swap = checker_plane.primitive(GateKind.SWAP, L(0, 0), L(1, 0), c_timing, start=5)
        assert cnot.duration == 9
        assert (swap.start, swap.end) == (5, 32)

    def test_timing_must_match_plane(self, checker_plane, t_timing):
        with pytest.raises(ArchitectureError, match="Timing model"):
            checker_plane.primitive(GateKind.CNOT, L(0, 0), L(1, 0), t_timing)

    def test_no_primitive_for_one_qubit_gates(self, checker_plane, c_timing):
        with pytest.raises(ArchitectureError):
            checker_plane.primitive(GateKind.H, L(0, 0), L(1, 0), c_timing)

    def test_conflicts(self, checker_plane, c_timing):
        first = checker_plane.primitive(GateKind.CNOT, L(0, 0), L(1, 0), c_timing, label=0)
        shared = checker_plane.primitive(GateKind.CNOT, L(0, 1), L(1, 0), c_timing, start=4, label=1)
        later = shared.at(9)
        apart = checker_plane.primitive(GateKind.CNOT, L(1, 1), L(2, 1), c_timing, label=2)
        assert checker_plane.conflicts(first, shared)
        assert not checker_plane.conflicts(first, later)
        assert not checker_plane.conflicts(first, apart)
        pairs = conflicting_pairs([first, shared, apart])
        assert [(a.label, b.label) for a, b in pairs] == [(0, 1)]


# ═══════════════════════════════════════════════════════════════════════════
# TILE PATCH SEQUENCES
# ═══════════════════════════════════════════════════════════════════════════

class TestPatchSequences:
    def test_op_parsing(self):
        assert str(op("XX A1 B1")) == "XX A1 B1"
        assert op("prep Z B1").action == "prep"
        with pytest.raises(ArchitectureError, match="Malformed"):
            op("XX A1")

    def test_unknown_cases(self):
        with pytest.raises(ArchitectureError, match="t-SWAP"):
            tswap_sequence("B1/C2")
        with pytest.raises(ArchitectureError, match="t-CNOT"):
            tcnot_sequence("A1/A9")

    def test_catalogue(self):
        assert set(TSWAP_SEQUENCES) == {"A1/D2", "D1/A2", "A1/A2"}
        assert set(TCNOT_SEQUENCES) == {"A1/D2", "A1/A2", "A1/A5"}
        assert all(s.gate is GateKind.SWAP for s in TSWAP_SEQUENCES.values())

    def test_horizontal_resolution_keeps_names(self, tile_plane):
        seq = swap_patch_sequence(tile_plane, L(0, 0), L(0, 1))
        assert seq.inputs == ("A1", "D2")
        assert seq.steps == tswap_sequence("A1/D2").steps

    def test_vertical_resolution_transposes(self, tile_plane):
        seq = swap_patch_sequence(tile_plane, L(0, 0), L(1, 0))
        assert seq.inputs == ("A1", "D4")
        assert str(seq.steps[0][4]) == "ZZ A1 C1"

    def test_reversed_pair_rotates(self, tile_plane):
        seq = swap_patch_sequence(tile_plane, L(0, 1), L(0, 0))
        assert seq.inputs == ("D2", "A1")

    def test_resolution_on_a_later_tile(self, tile_plane):
        seq = swap_patch_sequence(tile_plane, L(1, 1), L(1, 2))
        assert seq.inputs == ("A5", "D6")
        assert set(seq.patches()) <= set(tile_plane.footprint().values())

    def test_cnot_case_follows_geometry(self, tile_plane):
        assert cnot_patch_sequence(tile_plane, L(0, 0), L(1, 1)).name.startswith("t-CNOT A1/A5")
        assert cnot_patch_sequence(tile_plane, L(0, 0), L(0, 1)).name.startswith("t-CNOT A1/D2")
        with pytest.raises(ArchitectureError):
            cnot_patch_sequence(tile_plane, L(0, 0), L(2, 2))

    def test_no_sequences_on_checkerboard(self, checker_plane):
        with pytest.raises(ArchitectureError):
            resolve_sequence(checker_plane, tswap_sequence("A1/D2"), L(0, 0), L(1, 0))

    def test_template_must_fit(self, tile_plane):
        with pytest.raises(ArchitectureError, match="does not fit"):
            resolve_sequence(tile_plane, tcnot_sequence("A1/A5"), L(0, 0), L(0, 1))

    def test_swap_needs_swap_neighbours(self, tile_plane):
        with pytest.raises(ArchitectureError, match="swap neighbours"):
            swap_patch_sequence(tile_plane, L(0, 0), L(1, 1))
