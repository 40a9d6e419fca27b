"""QAP placement: cost model, naive fill and the exact solver."""

import itertools
from functools import lru_cache

import numpy as np
import pytest

from lsmap.arch.architecture import Architecture, Location
from lsmap.circuit.benchmarks import random_circuit
from lsmap.circuit.ir import Circuit
from lsmap.config import RANDOM_STATE
from lsmap.errors import PlacementError
from lsmap.placement.qap import (
    Placement,
    distance_matrix,
    interaction_matrix,
    place_naive,
    place_smart,
    qap_cost,
)

L = Location


@lru_cache(maxsize=None)
def _assignments(m: int, n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(m), n)), dtype=np.int64).reshape(-1, n)


def exhaustive_min_cost(c: Circuit, a: Architecture) -> int:
    r = interaction_matrix(c).counts
    d = distance_matrix(a).dist
    perms = _assignments(a.n_locations, c.n_qubits)
    cost = np.zeros(len(perms), dtype=np.int64)
    for k, l in itertools.combinations(range(c.n_qubits), 2):
        if r[k, l]:
            cost += r[k, l] * d[perms[:, k], perms[:, l]]
    return int(cost.min())


# ═══════════════════════════════════════════════════════════════════════════
# COST MODEL
# ═══════════════════════════════════════════════════════════════════════════

class TestCostModel:
    def test_interaction_matrix(self, steane):
        R = interaction_matrix(steane)
        assert (R.counts == R.counts.T).all()
        assert (np.diag(R.counts) == 0).all()
        assert int(np.triu(R.counts).sum()) == 12
        assert R["q4", "q0"] == 1

    def test_distance_matrix(self, tile_plane):
        D = distance_matrix(tile_plane)
        assert D.dist.shape == (9, 9)
        assert D.dist[0, 8] == 4
        assert (D.dist == D.dist.T).all()

    def test_cost_counts_each_pair_once(self, tile_plane):
        c = Circuit.build(("q0", "q1"), [("cnot", "q0", "q1"), ("cnot", "q1", "q0")])
        p = Placement({"q0": L(0, 0), "q1": L(0, 2)})
        assert qap_cost(p, interaction_matrix(c), distance_matrix(tile_plane)) == 4

    def test_cost_is_translation_invariant(self):
        a = Architecture("t", 3, 4)
        c = Circuit.build(("q0", "q1", "q2"), [("cnot", "q0", "q1"), ("cnot", "q1", "q2"), ("cnot", "q0", "q2")])
        R, D = interaction_matrix(c), distance_matrix(a)
        p = Placement({"q0": L(0, 0), "q1": L(1, 2), "q2": L(0, 1)})
        shifted = Placement({q: L(loc.row + 1, loc.col + 1) for q, loc in p.assign.items()})
        assert qap_cost(p, R, D) == qap_cost(shifted, R, D)

    def test_placement_is_injective(self):
        with pytest.raises(PlacementError, match="one-to-one"):
            Placement({"q0": L(0, 0), "q1": L(0, 0)})


# ═══════════════════════════════════════════════════════════════════════════
# SOLVERS
# ═══════════════════════════════════════════════════════════════════════════

class TestPlaceNaive:
    def test_row_major(self):
        c = Circuit(("q0", "q1", "q2", "q3"))
        p = place_naive(c, Architecture("t", 2, 2))
        assert p.as_dict() == {"q0": (0, 0), "q1": (0, 1), "q2": (1, 0), "q3": (1, 1)}

    def test_first_cells(self, steane, tile_plane):
        p = place_naive(steane, tile_plane)
        assert set(p.assign.values()) == set(tile_plane.locations()[:7])

    def test_capacity(self, steane):
        with pytest.raises(PlacementError, match="do not fit"):
            place_naive(steane, Architecture("t", 2, 2))


class TestPlaceSmart:
    def test_single_qubit_goes_first(self, tile_plane):
        assert place_smart(Circuit(("q0",)), tile_plane).as_dict() == {"q0": (0, 0)}

    def test_empty_circuit(self, tile_plane):
        assert place_smart(Circuit(()), tile_plane).assign == {}

    def test_heavy_pair_is_adjacent(self):
        a = Architecture("c", 2, 2)
        c = Circuit.build(("q0", "q1", "q2", "q3"), [("cnot", "q0", "q3")] * 5 + [("h", "q1"), ("h", "q2")])
        p = place_smart(c, a)
        assert a.distance(p["q0"], p["q3"]) == 1

    def test_capacity(self, steane):
        with pytest.raises(PlacementError):
            place_smart(steane, Architecture("c", 2, 3))

    def test_deterministic(self, steane, tile_plane):
        assert place_smart(steane, tile_plane) == place_smart(steane, tile_plane)

    def test_matches_exhaustive_enumeration(self):
        rng = np.random.default_rng(RANDOM_STATE)
        grids = [(2, 2), (2, 3), (3, 2), (3, 3)]
        for k in range(100):
            rows, cols = grids[k % len(grids)]
            a = Architecture("t" if k % 2 else "c", rows, cols)
            n = int(rng.integers(2, min(6, rows * cols) + 1))
            c = random_circuit(n, 14, rng, cnot_ratio=0.8)
            R, D = interaction_matrix(c), distance_matrix(a)
            smart = qap_cost(place_smart(c, a), R, D)
            naive = qap_cost(place_naive(c, a), R, D)
            assert smart == exhaustive_min_cost(c, a)
            assert smart <= naive
