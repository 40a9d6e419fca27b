"""
Initial Placement
Quadratic-assignment placement of logical qubits onto plane locations

The cost of a placement is the sum over qubit pairs of the number of
CNOTs between them times the Manhattan distance of their locations.
``place_smart`` finds the minimum exactly by depth-first branch and
bound, assigning qubits in declaration order to locations in row-major
order; ``place_naive`` fills locations row-major.
"""

import logging
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from lsmap.arch.architecture import Architecture, Location
from lsmap.circuit.ir import Circuit, GateKind
from lsmap.config import PLACEMENT_NODE_LIMIT
from lsmap.errors import PlacementError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InteractionMatrix:
    """R_kl: CNOT count between qubits k and l (symmetric, zero diagonal)."""

    qubits: tuple[str, ...]
    counts: np.ndarray

    def __getitem__(self, pair: tuple[str, str]) -> int:
        k, l = (self.qubits.index(q) for q in pair)
        return int(self.counts[k, l])


@dataclass(frozen=True)
class DistanceMatrix:
    """D_ij between locations in row-major order."""

    locations: tuple[Location, ...]
    dist: np.ndarray


@dataclass(frozen=True)
class Placement:
    """Injective assignment of qubits to locations."""

    assign: Mapping[str, Location]

    def __post_init__(self):
        assign = {q: Location(*loc) for q, loc in self.assign.items()}
        if len(set(assign.values())) != len(assign):
            raise PlacementError(f"Placement is not one-to-one: {assign}")
        object.__setattr__(self, "assign", MappingProxyType(assign))

    def __getitem__(self, qubit: str) -> Location:
        return self.assign[qubit]

    @property
    def qubits(self) -> tuple[str, ...]:
        return tuple(self.assign)

    def as_dict(self) -> dict[str, tuple[int, int]]:
        return {q: (loc.row, loc.col) for q, loc in self.assign.items()}


def interaction_matrix(c: Circuit) -> InteractionMatrix:
    index = {q: i for i, q in enumerate(c.qubits)}
    counts = np.zeros((c.n_qubits, c.n_qubits), dtype=np.int64)
    for ins in c.gates():
        if ins.kind is GateKind.CNOT:
            k, l = index[ins.control], index[ins.target]
            counts[k, l] += 1
            counts[l, k] += 1
    return InteractionMatrix(c.qubits, counts)


def distance_matrix(a: Architecture) -> DistanceMatrix:
    locs = tuple(a.locations())
    dist = np.array([[a.distance(x, y) for y in locs] for x in locs], dtype=np.int64)
    return DistanceMatrix(locs, dist)


def qap_cost(p: Placement, R: InteractionMatrix, D: DistanceMatrix) -> int:
    """Sum of R_kl * D[p(k)][p(l)] over unordered qubit pairs."""
    where = {loc: i for i, loc in enumerate(D.locations)}
    total = 0
    n = len(R.qubits)
    for k in range(n):
        for l in range(k + 1, n):
            if R.counts[k, l]:
                total += int(R.counts[k, l]) * int(D.dist[where[p[R.qubits[k]]], where[p[R.qubits[l]]]])
    return total


def _check_capacity(c: Circuit, a: Architecture) -> None:
    if c.n_qubits > a.n_locations:
        raise PlacementError(
            f"{c.n_qubits} qubits do not fit on {a.rows}x{a.cols} = {a.n_locations} locations"
        )


def place_naive(c: Circuit, a: Architecture) -> Placement:
    _check_capacity(c, a)
    locs = a.locations()
    return Placement({q: locs[i] for i, q in enumerate(c.qubits)})


def place_smart(c: Circuit, a: Architecture, node_limit: int = PLACEMENT_NODE_LIMIT) -> Placement:
    """Exact QAP placement.

    Args:
        c: Circuit whose CNOTs define the interactions.
        a: Target plane.
        node_limit: Search-node cap; past it the best placement found so
            far is returned with a warning.

    Returns:
        The lexicographically first placement of minimum cost.
    """
    _check_capacity(c, a)
    R = interaction_matrix(c)
    D = distance_matrix(a)
    n, m = c.n_qubits, a.n_locations
    if n == 0:
        return Placement({})
    r, d = R.counts, D.dist
    d_min = int(d[~np.eye(m, dtype=bool)].min()) if m > 1 else 0

    naive = list(range(n))
    best_cost = sum(int(r[k, l]) * int(d[k, l]) for k in range(n) for l in range(k + 1, n))
    best = naive[:]
    assigned: list[int] = []
    used = np.zeros(m, dtype=bool)
    explored = 0
    exhausted = False

    def lower_bound(cost: int) -> int:
        free = np.flatnonzero(~used)
        k0 = len(assigned)
        bound = cost
        if k0 and free.size:
            nearest = d[np.ix_(free, assigned)].min(axis=0)
            bound += int((r[k0:, :k0] * nearest).sum())
        bound += int(np.triu(r[k0:, k0:], 1).sum()) * d_min
        return bound

    def dfs(cost: int) -> None:
        nonlocal best_cost, best, explored, exhausted
        if exhausted:
            return
        explored += 1
        if explored > node_limit:
            exhausted = True
            return
        k = len(assigned)
        if k == n:
            if cost < best_cost:
                best_cost, best = cost, assigned[:]
            return
        for j in range(m):
            if used[j]:
                continue
            step = int(sum(int(r[k, i]) * int(d[j, assigned[i]]) for i in range(k)))
            assigned.append(j)
            used[j] = True
            if lower_bound(cost + step) < best_cost:
                dfs(cost + step)
            assigned.pop()
            used[j] = False

    dfs(0)
    if exhausted:
        logger.warning("Placement search stopped after %d nodes; keeping best placement found", node_limit)
    logger.debug("Smart placement: cost %d, %d search nodes", best_cost, explored)
    return Placement({q: D.locations[best[i]] for i, q in enumerate(c.qubits)})
