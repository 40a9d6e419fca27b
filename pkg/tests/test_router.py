"""Sliding-window routing and the routed-circuit checker."""

from dataclasses import replace

import numpy as np
import pytest

from lsmap.arch.architecture import Architecture, Location
from lsmap.circuit.benchmarks import random_clifford_t_circuit
from lsmap.circuit.ir import Circuit, GateKind
from lsmap.circuit.qodg import build_qodg
from lsmap.config import RANDOM_STATE
from lsmap.errors import RoutingError
from lsmap.placement.qap import Placement, place_naive, place_smart
from lsmap.routing.router import Router, route, routed_latency, swap_count, validate_routed
from lsmap.scheduling import SchedulePolicy, replay_start_times, schedule, to_parallel_circuit
from lsmap.timing import ArchKind, TimingModel

L = Location
LIST_ASAP = SchedulePolicy("asap", True, "list")


def single_cnot():
    return Circuit.build(("q0", "q1"), [("cnot", "q0", "q1")])


# ═══════════════════════════════════════════════════════════════════════════
# SMALL CASES
# ═══════════════════════════════════════════════════════════════════════════

class TestRouteSmall:
    def test_neighbours_need_no_swaps(self, tile_plane, t_timing):
        c = single_cnot()
        rc = route(c, tile_plane, Placement({"q0": L(0, 0), "q1": L(1, 1)}), t_timing)
        assert rc.n_swaps == 0
        assert rc.circuit is c
        assert rc.paths == ()
        assert routed_latency(rc) == 12

    def test_checkerboard_distance_two_takes_one_swap(self, checker_plane, c_timing):
        p = Placement({"q0": L(0, 0), "q1": L(2, 0)})
        assert checker_plane.distance(p["q0"], p["q1"]) == 2
        rc = route(single_cnot(), checker_plane, p, c_timing)
        assert rc.n_swaps == swap_count(rc) == 1
        swap, cnot = rc.circuit.gates()
        assert swap.kind is GateKind.SWAP and swap.inserted
        assert swap.operands == ("q0", "q4")
        assert cnot.operands == ("q0", "q1")
        assert rc.final_occupancy[L(1, 0)] == "q0"
        assert rc.circuit.qubits == ("q0", "q1", "q4")
        assert routed_latency(rc) == 27 + 9
        assert len(rc.layout_trace) == 2
        assert rc.paths[0].hops == (L(0, 0), L(1, 0))
        assert validate_routed(rc, checker_plane, p) == []

    def test_tile_distance_two_takes_one_swap(self, tile_plane, t_timing):
        p = Placement({"q0": L(0, 0), "q1": L(0, 2)})
        rc = route(single_cnot(), tile_plane, p, t_timing)
        assert rc.n_swaps == 1
        assert rc.paths[0].n_swaps == 1
        assert validate_routed(rc, tile_plane, p) == []

    def test_routed_swap_gates(self, tile_plane, t_timing):
        c = Circuit.build(("q0", "q1"), [("swap", "q0", "q1")])
        p = Placement({"q0": L(0, 0), "q1": L(1, 1)})
        rc = route(c, tile_plane, p, t_timing)
        # a diagonal neighbour is fine for a CNOT but not for a SWAP
        assert rc.n_swaps == 1
        assert validate_routed(rc, tile_plane, p) == []

    def test_conflicting_primitives_are_serialised(self, t_timing):
        a = Architecture("t", 2, 3)
        c = Circuit.build(("q0", "q1", "q2", "q3"), [[("cnot", "q0", "q1"), ("cnot", "q2", "q3")]])
        p = Placement({"q0": L(0, 0), "q1": L(1, 1), "q2": L(0, 1), "q3": L(0, 2)})
        rc = route(c, a, p, t_timing)
        assert rc.n_swaps == 0
        assert rc.extra_disjunctive == ((0, 1),)
        start = replay_start_times(rc.circuit, t_timing)
        assert start[0] != start[1]
        assert routed_latency(rc) == 24
        assert validate_routed(rc, a, p) == []

        parallel = replace(rc, circuit=c)
        assert [v.kind for v in validate_routed(parallel, a, p)] == ["conflict"]

    def test_distant_gate_without_swaps_is_flagged(self, tile_plane, t_timing):
        p = Placement({"q0": L(0, 0), "q1": L(0, 2)})
        rc = route(single_cnot(), tile_plane, p, t_timing)
        kinds = {v.kind for v in validate_routed(replace(rc, circuit=rc.source), tile_plane, p)}
        assert "neighbor" in kinds

    def test_wrong_start_is_flagged(self, tile_plane, t_timing):
        p = Placement({"q0": L(0, 0), "q1": L(1, 1)})
        rc = route(single_cnot(), tile_plane, p, t_timing)
        moved = Placement({"q0": L(0, 1), "q1": L(1, 1)})
        assert "placement" in {v.kind for v in validate_routed(rc, tile_plane, moved)}


class TestRouteErrors:
    def test_window_too_small(self, tile_plane, t_timing):
        with pytest.raises(RoutingError, match="window"):
            route(single_cnot(), tile_plane, Placement({"q0": L(0, 0), "q1": L(0, 1)}), t_timing, window=1)

    def test_timing_mismatch(self, tile_plane, c_timing):
        with pytest.raises(RoutingError, match="Timing model"):
            route(single_cnot(), tile_plane, Placement({"q0": L(0, 0), "q1": L(0, 1)}), c_timing)

    def test_placement_must_cover_qubits(self, tile_plane, t_timing):
        with pytest.raises(RoutingError, match="does not cover"):
            route(single_cnot(), tile_plane, Placement({"q0": L(0, 0)}), t_timing)

    def test_placement_outside_grid(self, tile_plane, t_timing):
        with pytest.raises(RoutingError, match="outside"):
            route(single_cnot(), tile_plane, Placement({"q0": L(0, 0), "q1": L(4, 4)}), t_timing)


class TestCandidatePaths:
    def test_paths_are_shortest_and_avoid_the_target(self, t_timing):
        a = Architecture("t", 3, 3)
        router = Router(single_cnot(), a, Placement({"q0": L(0, 0), "q1": L(2, 2)}), t_timing)
        paths = router.candidate_paths(GateKind.CNOT, L(0, 0), L(2, 2))
        assert paths == sorted(paths)
        assert {len(p) for p in paths} == {3}
        assert all(L(2, 2) not in p for p in paths)
        assert all(p[-1] in a.neighbors(L(2, 2)) for p in paths)


class TestPathScoring:
    @staticmethod
    def busy_neighbour():
        # q1 sits on the lexicographically first path and is busy with a T gate
        c = Circuit.build(("q0", "q1", "q2", "q3"), [("t", "q1"), ("cnot", "q0", "q3")])
        p = Placement({"q0": L(0, 0), "q1": L(0, 1), "q2": L(1, 0), "q3": L(2, 2)})
        return c, p

    def test_swaps_overlapping_the_prefix_earn_credit(self, tile_plane, t_timing):
        c, p = self.busy_neighbour()
        router = Router(c, tile_plane, p, t_timing, policy=LIST_ASAP)
        buffer = list(c.gates())
        via_busy, via_idle = router.candidate_paths(GateKind.CNOT, L(0, 0), L(2, 2))
        assert via_busy == (L(0, 0), L(0, 1), L(1, 1))
        assert via_idle == (L(0, 0), L(1, 0), L(1, 1))
        # both t-SWAPs of the idle path fit under the 51-cycle T gate
        assert router.score(via_idle, buffer, 1) == 0
        assert router.score(via_busy, buffer, 1) == 2 * 9

    def test_interleavable_path_is_chosen(self, tile_plane, t_timing):
        c, p = self.busy_neighbour()
        rc = route(c, tile_plane, p, t_timing, policy=LIST_ASAP)
        assert rc.paths[0].hops == (L(0, 0), L(1, 0), L(1, 1))
        assert rc.paths[0].score == 0
        assert routed_latency(rc) == 17 * 3
        assert validate_routed(rc, tile_plane, p) == []

    def test_prefix_is_rescheduled_with_commutation(self, tile_plane, t_timing):
        # cnot q0,q2 commutes past cnot q0,q1 and runs under the H
        c = Circuit.build(("q0", "q1", "q2"), [("h", "q1"), ("cnot", "q0", "q1"), ("cnot", "q0", "q2")])
        p = Placement({"q0": L(1, 1), "q1": L(0, 1), "q2": L(1, 0)})
        router = Router(c, tile_plane, p, t_timing, policy=LIST_ASAP)
        ready = router._ready_at(list(c.gates()), 3)
        assert ready == {"q0": 24, "q1": 24, "q2": 12}


# ═══════════════════════════════════════════════════════════════════════════
# SOUNDNESS ON RANDOM CIRCUITS
# ═══════════════════════════════════════════════════════════════════════════

@pytest.mark.parametrize("kind", [ArchKind.TILE, ArchKind.CHECKERBOARD])
def test_random_circuits_route_cleanly(kind):
    rng = np.random.default_rng(RANDOM_STATE)
    t = TimingModel(3, kind)
    for k in range(100):
        n = int(rng.integers(3, 9))
        c = random_clifford_t_circuit(n, int(rng.integers(5, 31)), rng, cnot_ratio=0.5)
        rows = 2 if n <= 4 else 3
        a = Architecture(kind, rows, (n + rows - 1) // rows + k % 2)
        p = place_smart(c, a) if n <= 5 and k % 2 == 0 else place_naive(c, a)
        s = schedule(build_qodg(c), t, SchedulePolicy("alap", True, "list"))
        scheduled = to_parallel_circuit(c, s)
        rc = route(scheduled, a, p, t, window=4 + k % 7, policy=LIST_ASAP)
        assert validate_routed(rc, a, p) == [], f"instance {k}"
        assert swap_count(rc) == rc.n_swaps == sum(r.n_swaps for r in rc.paths)
        assert rc.circuit.n_gates == c.n_gates + rc.n_swaps
